#include "ddcma/params.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ddcma/errors.hpp"
#include "ddcma/weights.hpp"

namespace ddcma {

std::size_t default_lambda(std::size_t n) {
    return 4 + static_cast<std::size_t>(
                   std::floor(3.0 * std::log(static_cast<double>(n))));
}

StrategyParams default_params(std::size_t n, std::size_t lambda) {
    if (n < 1) throw ConfigError("default_params: n must be >= 1");
    if (lambda == 0) lambda = default_lambda(n);
    if (lambda < 2) throw ConfigError("default_params: lambda must be >= 2");

    StrategyParams p;
    p.n = n;
    p.lambda = lambda;
    const double nd = static_cast<double>(n);
    const double lam = static_cast<double>(lambda);

    // Masses come from the raw weight profile; the normalization ratio the
    // finalized profile needs is derived below, so build with a placeholder.
    const WeightProfile masses = build_weights(lambda, 1.0);
    p.mu_eff = masses.mu_eff;
    p.mu_eff_neg = masses.mu_eff_neg;

    p.c_m = 1.0;
    p.c_sigma = (p.mu_eff + 2.0) / (nd + p.mu_eff + 5.0);
    p.d_sigma = 1.0 + p.c_sigma +
                2.0 * std::max(0.0, std::sqrt((p.mu_eff - 1.0) / (nd + 1.0)) -
                                        1.0);

    // Rank-one rates: degrees of freedom m = n(n+1)/2 for the covariance,
    // m = n for the decoding.
    const double pw = std::pow(nd + 1.0, 0.75);
    const double m_c = nd * (nd + 1.0) / 2.0;
    p.c_1 = 1.0 / (2.0 * (m_c / nd + 1.0) * pw + p.mu_eff / 2.0);
    p.c_1d = 1.0 / (2.0 * 2.0 * pw + p.mu_eff / 2.0);

    const double mu_prime =
        p.mu_eff + 1.0 / p.mu_eff - 2.0 + lam / (2.0 * (lam + 5.0));
    p.c_mu = std::min(mu_prime * p.c_1, 1.0 - p.c_1);
    p.c_mud = std::min(mu_prime * p.c_1d, 1.0 - p.c_1d);
    p.c_c = std::sqrt(p.mu_eff * p.c_1) / 2.0;
    p.c_cd = std::sqrt(p.mu_eff * p.c_1d) / 2.0;

    // c1/cmu equals 1/mu' whenever the cap is inactive; round it once so both
    // families share the exact same value in that regime.
    p.weight_ratio_c = mu_prime * p.c_1 <= 1.0 - p.c_1 ? 1.0 / mu_prime
                                                       : p.c_1 / p.c_mu;
    p.weight_ratio_d = mu_prime * p.c_1d <= 1.0 - p.c_1d ? 1.0 / mu_prime
                                                         : p.c_1d / p.c_mud;

    p.beta_eig = 10.0 * nd;
    p.beta_thresh = 2.0;
    const double interval = 1.0 / (p.beta_eig * (p.c_1 + p.c_mu));
    p.t_eig = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(interval)));
    p.chi_n = std::sqrt(nd) *
              (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
    p.validate();
    return p;
}

void StrategyParams::validate() const {
    if (n < 1 || lambda < 2)
        throw ConfigError("params: need n >= 1 and lambda >= 2");
    if (!(mu_eff >= 1.0))
        throw ConfigError("params: mu_eff must be >= 1");
    if (!(c_sigma > 0.0 && c_sigma < 1.0))
        throw ConfigError("params: c_sigma out of (0,1)");
    if (!(d_sigma >= 1.0))
        throw ConfigError("params: d_sigma must be >= 1");
    if (!(c_1 > 0.0 && c_1 <= 1.0))
        throw ConfigError("params: c_1 out of (0,1]");
    if (!(c_mu >= 0.0 && c_mu <= 1.0 - c_1))
        throw ConfigError("params: c_mu out of [0, 1-c_1]");
    if (!(c_1d > 0.0 && c_1d <= 1.0))
        throw ConfigError("params: c_1d out of (0,1]");
    if (!(c_mud >= 0.0 && c_mud <= 1.0 - c_1d))
        throw ConfigError("params: c_mud out of [0, 1-c_1d]");
    if (!(c_c > 0.0 && c_c <= 1.0))
        throw ConfigError("params: c_c out of (0,1]");
    if (!(c_cd > 0.0 && c_cd <= 1.0))
        throw ConfigError("params: c_cd out of (0,1]");
    if (!(c_m > 0.0))
        throw ConfigError("params: c_m must be > 0");
    if (t_eig < 1)
        throw ConfigError("params: t_eig must be >= 1");
    if (!(beta_eig > 0.0) || !(beta_thresh >= 0.0))
        throw ConfigError("params: beta_eig/beta_thresh out of range");
    if (static_cast<double>(t_eig) > 1.0 / (beta_eig * (c_1 + c_mu)) + 1.0)
        throw ConfigError("params: t_eig exceeds its schedule bound");
    if (!(chi_n > 0.0))
        throw ConfigError("params: chi_n must be > 0");
    if (!(weight_ratio_c > 0.0) || !(weight_ratio_d > 0.0))
        throw ConfigError("params: weight ratios must be > 0");
}

std::string StrategyParams::to_kv() const {
    std::ostringstream os;
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << key << '=' << buf << '\n';
    };
    os << "n=" << n << '\n' << "lambda=" << lambda << '\n';
    put("mu_eff", mu_eff);
    put("mu_eff_neg", mu_eff_neg);
    put("c_m", c_m);
    put("c_sigma", c_sigma);
    put("d_sigma", d_sigma);
    put("c_1", c_1);
    put("c_mu", c_mu);
    put("c_c", c_c);
    put("c_1d", c_1d);
    put("c_mud", c_mud);
    put("c_cd", c_cd);
    put("beta_eig", beta_eig);
    put("beta_thresh", beta_thresh);
    os << "t_eig=" << t_eig << '\n';
    put("chi_n", chi_n);
    put("weight_ratio_c", weight_ratio_c);
    put("weight_ratio_d", weight_ratio_d);
    return os.str();
}

} // namespace ddcma
