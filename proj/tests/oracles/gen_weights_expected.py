#!/usr/bin/env python3
"""Reference evaluator for the recombination-weight construction.

Computes raw log-weights, effective masses, and finalized weights directly
from their defining formulas, independent of the C++ implementation.  The
printed values are frozen into tests/test_weights.cpp.
"""
import math


def raw_weights(lam):
    return [math.log((lam + 1) / 2.0) - math.log(i) for i in range(1, lam + 1)]


def masses(raw):
    pos = [w for w in raw if w > 0.0]
    neg = [-w for w in raw if w < 0.0]
    mu_eff = sum(pos) ** 2 / sum(w * w for w in pos)
    mu_eff_neg = sum(neg) ** 2 / sum(w * w for w in neg) if neg else 0.0
    return mu_eff, mu_eff_neg


def finalize(raw, ratio):
    mu_eff, mu_eff_neg = masses(raw)
    pos_sum = sum(w for w in raw if w > 0.0)
    neg_sum = sum(-w for w in raw if w < 0.0)
    neg_scale = min(1.0 + ratio, 1.0 + 2.0 * mu_eff_neg / (mu_eff + 2.0))
    out = []
    for w in raw:
        if w > 0.0:
            out.append(w / pos_sum)
        elif w < 0.0:
            out.append(w / neg_sum * neg_scale)
        else:
            out.append(0.0)
    return out, neg_scale


def dump(lam, ratio):
    raw = raw_weights(lam)
    mu_eff, mu_eff_neg = masses(raw)
    fin, scale = finalize(raw, ratio)
    print(f"lambda={lam} ratio={ratio!r}")
    print("  raw      =", ", ".join(f"{w:.17g}" for w in raw))
    print(f"  mu_eff   = {mu_eff:.17g}")
    print(f"  mu_eff_neg = {mu_eff_neg:.17g}")
    print(f"  neg_scale  = {scale:.17g}")
    print("  final    =", ", ".join(f"{w:.17g}" for w in fin))
    print(f"  sum_pos  = {sum(w for w in fin if w > 0):.17g}")
    print(f"  sum_abs_neg = {sum(-w for w in fin if w < 0):.17g}")
    print()


if __name__ == "__main__":
    dump(4, 0.5)
    dump(4, 5.0)   # cap from the mass-balance term
    dump(2, 0.5)
    dump(5, 0.5)   # odd lambda: middle raw weight exactly zero
    dump(10, 1.0 / 3.0)
