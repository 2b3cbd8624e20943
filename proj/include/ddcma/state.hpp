#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ddcma/linalg.hpp"
#include "ddcma/rng.hpp"

namespace ddcma {

// Search distribution N(m, sigma^2 D C D) plus the evolution paths and the
// decomposition caches.  C is applied lazily: between decompositions the
// generation updates accumulate into K, and C/sqrtC/invSqrtC only change at
// decomposition time, so sqrtC*sqrtC == C holds at all times.
struct DistributionState {
    std::size_t n = 0;
    Vector m;
    double sigma = 1.0;
    DiagMatrix D;
    SymMatrix C;
    SymMatrix sqrtC;
    SymMatrix invSqrtC;
    Vector p_sigma;
    Vector p_c;
    Vector p_cd;
    double gamma_sigma = 0.0;
    double gamma_c = 0.0;
    double gamma_cd = 0.0;
    double beta = 1.0;        // decoding damping from the last decomposition
    SymMatrix K;              // accumulated coordinate-space update
    std::uint64_t t = 0;      // completed iterations
    std::uint64_t t_last_decomp = 0;
    double last_cond = 1.0;   // condition number at the last decomposition

    void save(std::ostream& os) const; // versioned flat text, hex floats
    static DistributionState load(std::istream& is);
};

DistributionState init_state(std::size_t n, const Vector& m0, double sigma0);

// One generation of candidates.  Layout is row-major lambda x n so each
// candidate vector is contiguous; z/y/x are in sampling order, zt/yt are the
// (possibly rescaled) steps in RANK order, filled by rescale_steps.
struct Population {
    std::size_t n = 0;
    std::size_t lambda = 0;
    std::vector<double> z, y, x;
    std::vector<double> zt, yt;
    std::vector<double> f;
    std::vector<std::uint32_t> order;                     // rank -> sample index
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ties; // (start, len) per tie group

    void resize(std::size_t n_, std::size_t lambda_);
    double* zrow(std::size_t i) { return z.data() + i * n; }
    double* yrow(std::size_t i) { return y.data() + i * n; }
    double* xrow(std::size_t i) { return x.data() + i * n; }
    const double* zrow(std::size_t i) const { return z.data() + i * n; }
    const double* yrow(std::size_t i) const { return y.data() + i * n; }
    const double* xrow(std::size_t i) const { return x.data() + i * n; }
    const double* ztrow(std::size_t r) const { return zt.data() + r * n; }
    const double* ytrow(std::size_t r) const { return yt.data() + r * n; }
};

// Draw lambda candidates: z ~ N(0,I), y = sqrtC z (skipped via identity for
// variants that never update C), x = m + sigma * D y, computed exactly in
// that form.  `apply_sqrtC` false keeps y == z bit for bit.
void sample(Population& pop, const DistributionState& st, NormalRng& rng,
            std::size_t lambda, bool apply_sqrtC);

// Sort ranks by objective value ascending, stable in the sampling index, and
// record maximal runs of exactly equal f as tie groups.  Requires finite f
// (throws EvaluationError naming the offending candidate).
void rank(Population& pop);

// Per-rank weights after tie redistribution: every member of a tie group
// receives the group's average profile weight.
void redistribute_weights(std::span<const double> profile_w,
                          const Population& pop, std::vector<double>& w_eff);

} // namespace ddcma
