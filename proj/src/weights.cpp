#include "ddcma/weights.hpp"

#include <cmath>

#include "ddcma/errors.hpp"

namespace ddcma {

WeightProfile build_weights(std::size_t lambda, double ratio) {
    if (lambda < 2) throw ConfigError("build_weights: lambda must be >= 2");
    if (!(ratio > 0.0)) throw ConfigError("build_weights: ratio must be > 0");

    WeightProfile p;
    p.raw.resize(lambda);
    const double base = std::log((static_cast<double>(lambda) + 1.0) / 2.0);
    for (std::size_t i = 0; i < lambda; ++i)
        p.raw[i] = base - std::log(static_cast<double>(i + 1));
    // For odd lambda the middle raw weight is ln(m)-ln(m) == 0 exactly; it
    // stays zero in the final profile.
    double pos_sum = 0.0, pos_sq = 0.0, neg_sum = 0.0, neg_sq = 0.0;
    for (double w : p.raw) {
        if (w > 0.0) {
            pos_sum += w;
            pos_sq += w * w;
            ++p.mu;
        } else if (w < 0.0) {
            neg_sum += -w;
            neg_sq += w * w;
        }
    }
    p.mu_eff = pos_sum * pos_sum / pos_sq;
    p.mu_eff_neg = neg_sum > 0.0 ? neg_sum * neg_sum / neg_sq : 0.0;

    const double neg_mass =
        std::min(1.0 + ratio, 1.0 + 2.0 * p.mu_eff_neg / (p.mu_eff + 2.0));
    p.w.resize(lambda);
    for (std::size_t i = 0; i < lambda; ++i) {
        const double w = p.raw[i];
        if (w > 0.0)
            p.w[i] = w / pos_sum;
        else if (w < 0.0)
            p.w[i] = w / neg_sum * neg_mass;
        else
            p.w[i] = 0.0;
    }
    return p;
}

double method2_scale(WeightProfile& p, double c1, double cmu,
                     std::size_t t_eig, std::size_t n) {
    if (t_eig < 1 || n < 1)
        throw ConfigError("method2_scale: t_eig and n must be >= 1");
    const double inv_teig = 1.0 / static_cast<double>(t_eig);
    if (!(inv_teig > c1 + cmu))
        throw ConfigError(
            "method2_scale: requires 1/t_eig > c1 + cmu; reduce t_eig or the "
            "learning rates");
    double neg_abs = 0.0;
    for (double w : p.w)
        if (w < 0.0) neg_abs += -w;
    // No negative mass, or no rank-mu update it could enter: nothing to cap.
    if (neg_abs == 0.0 || cmu == 0.0) return 1.0;
    double alpha = (inv_teig - (c1 + cmu)) /
                   (static_cast<double>(n) * cmu * neg_abs);
    alpha = std::min(alpha, 1.0);
    for (double& w : p.w)
        if (w < 0.0) w *= alpha;
    return alpha;
}

} // namespace ddcma
