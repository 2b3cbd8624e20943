#pragma once

#include <cstddef>
#include <string>

namespace ddcma {

// Strategy constants derived from (n, lambda).  All fields are plain data
// and may be overridden individually after construction; call validate()
// afterwards (the optimizer does so on construction).
struct StrategyParams {
    std::size_t n = 0;
    std::size_t lambda = 0;
    double mu_eff = 0.0;
    double mu_eff_neg = 0.0;
    double c_m = 1.0;
    double c_sigma = 0.0;
    double d_sigma = 0.0;
    double c_1 = 0.0;    // rank-one rate, full covariance
    double c_mu = 0.0;   // rank-mu rate, full covariance
    double c_c = 0.0;    // cumulation rate for the covariance path
    double c_1d = 0.0;   // rank-one rate, diagonal decoding
    double c_mud = 0.0;  // rank-mu rate, diagonal decoding
    double c_cd = 0.0;   // cumulation rate for the decoding path
    double beta_eig = 0.0;   // decomposition-interval scale (10n)
    double beta_thresh = 2.0;
    std::size_t t_eig = 1;   // iterations between decompositions
    double chi_n = 0.0;      // E||N(0,I_n)||
    // Negative-weight normalization ratios (c1/cmu families).  Stored as a
    // single rounding of 1/mu' while the rank-mu cap is inactive, so both
    // update families share one weight profile bit for bit; they diverge only
    // when min(mu'*c1, 1-c1) caps one of them.
    double weight_ratio_c = 0.0;
    double weight_ratio_d = 0.0;

    void validate() const; // throws ConfigError on violated bounds
    std::string to_kv() const; // flat key=value block, full precision
};

// Population size 4 + floor(3 ln n).
std::size_t default_lambda(std::size_t n);

// Derive the full default schedule; lambda == 0 selects default_lambda(n).
StrategyParams default_params(std::size_t n, std::size_t lambda = 0);

} // namespace ddcma
