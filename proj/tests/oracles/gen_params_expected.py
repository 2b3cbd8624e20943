#!/usr/bin/env python3
"""Reference evaluator for the default strategy-parameter schedule.

Evaluates every derived constant line by line from its defining formula for a
handful of (n, lambda) pairs.  Output is frozen into tests/test_params.cpp.
Also checks the negative-weight pre-cap factor for a large-population case.
"""
import math

from gen_weights_expected import raw_weights, masses


def default_lambda(n):
    return 4 + int(math.floor(3.0 * math.log(n)))


def params(n, lam=None):
    if lam is None:
        lam = default_lambda(n)
    raw = raw_weights(lam)
    mu_eff, mu_eff_neg = masses(raw)
    cm = 1.0
    cs = (mu_eff + 2.0) / (n + mu_eff + 5.0)
    ds = 1.0 + cs + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (n + 1.0)) - 1.0)
    m_full = n * (n + 1) / 2.0
    c1 = 1.0 / (2.0 * (m_full / n + 1.0) * (n + 1.0) ** 0.75 + mu_eff / 2.0)
    c1d = 1.0 / (2.0 * (n / n + 1.0) * (n + 1.0) ** 0.75 + mu_eff / 2.0)
    mu_prime = mu_eff + 1.0 / mu_eff - 2.0 + lam / (2.0 * (lam + 5.0))
    cmu = min(mu_prime * c1, 1.0 - c1)
    cmud = min(mu_prime * c1d, 1.0 - c1d)
    cc = math.sqrt(mu_eff * c1) / 2.0
    ccd = math.sqrt(mu_eff * c1d) / 2.0
    beta_eig = 10.0 * n
    t_eig = max(1, int(math.floor(1.0 / (beta_eig * (c1 + cmu)))))
    chi_n = math.sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n))
    return dict(n=n, lam=lam, mu_eff=mu_eff, mu_eff_neg=mu_eff_neg, cm=cm,
                cs=cs, ds=ds, c1=c1, c1d=c1d, mu_prime=mu_prime, cmu=cmu,
                cmud=cmud, cc=cc, ccd=ccd, beta_eig=beta_eig, t_eig=t_eig,
                chi_n=chi_n)


def dump(n, lam=None):
    p = params(n, lam)
    print(f"n={n} lambda={p['lam']}")
    for k, v in p.items():
        if k in ("n", "lam"):
            continue
        print(f"  {k:10s} = {v:.17g}")
    print()


def precap_factor(n, lam):
    """Scale factor applied to negative weights so the accumulated update
    keeps the covariance positive definite over one decomposition epoch."""
    p = params(n, lam)
    raw = raw_weights(lam)
    fin_neg_mass = min(1.0 + p["c1"] / p["cmu"],
                       1.0 + 2.0 * p["mu_eff_neg"] / (p["mu_eff"] + 2.0))
    alpha = (1.0 / p["t_eig"] - (p["c1"] + p["cmu"])) / (
        n * p["cmu"] * fin_neg_mass)
    return min(alpha, 1.0)


if __name__ == "__main__":
    dump(10, 10)
    dump(10)       # default lambda for n=10 is 10
    dump(20)
    dump(40)
    dump(160)
    n = 320
    lam = int(math.ceil(n ** 1.5))
    a = precap_factor(n, lam)
    print(f"precap n={n} lambda={lam}: alpha = {a:.17g}")
    # ratio agreement between the two learning-rate pairs (bitwise)
    for n in (2, 3, 5, 10, 20, 40, 80, 160, 320, 512):
        for lam in (None, 4 * n, n * n):
            p = params(n, lam)
            r1 = p["c1"] / p["cmu"]
            r2 = p["c1d"] / p["cmud"]
            if r1 != r2:
                print(f"ratio mismatch n={n} lam={p['lam']}: "
                      f"{r1!r} vs {r2!r} (rel {abs(r1-r2)/r1:.2e})")
