#pragma once

#include <cstddef>
#include <vector>

namespace ddcma {

// Recombination weight profile over the ranked population.  `raw` holds the
// log-linear preferences ln((lambda+1)/2) - ln(i); `w` the finalized weights:
// positives normalized to sum 1, negatives normalized so their absolute sum
// equals min(1 + ratio, 1 + 2*mu_eff_neg/(mu_eff + 2)), zeros kept at zero.
struct WeightProfile {
    std::vector<double> raw;
    std::vector<double> w;
    std::size_t mu = 0;       // count of strictly positive weights
    double mu_eff = 0.0;      // (sum w+)^2 / sum (w+)^2 over raw positives
    double mu_eff_neg = 0.0;  // same over raw negatives (0 if none)

    std::size_t lambda() const { return w.size(); }
};

// Build the profile for a population of size lambda; `ratio` is the
// rank-one/rank-mu learning-rate ratio that bounds the negative mass.
WeightProfile build_weights(std::size_t lambda, double ratio);

// Scale the negative entries of `p.w` in place so the accumulated covariance
// update provably keeps the matrix positive definite over one decomposition
// epoch of t_eig iterations: factor min(1, (1/t_eig - (c1+cmu)) /
// (n*cmu*sum|w-|)).  Requires 1/t_eig > c1 + cmu.  Returns the factor.
double method2_scale(WeightProfile& p, double c1, double cmu,
                     std::size_t t_eig, std::size_t n);

} // namespace ddcma
