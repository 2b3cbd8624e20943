#include "ddcma/update.hpp"

#include <algorithm>
#include <cmath>

#include "ddcma/errors.hpp"
#include "ddcma/kernels.hpp"

namespace ddcma {

namespace {

// Weighted sum of candidate rows (rank order), positive weights only.
void weighted_positive_sum(const Population& pop,
                           std::span<const double> w_eff,
                           const double* rows, double* out) {
    std::fill(out, out + pop.n, 0.0);
    for (std::size_t r = 0; r < pop.lambda; ++r) {
        const double w = w_eff[r];
        if (w > 0.0)
            kernels::axpy(w, rows + pop.order[r] * pop.n, out, pop.n);
    }
}

} // namespace

void update_mean(DistributionState& st, const Population& pop,
                 std::span<const double> w_eff, double c_m) {
    const std::size_t n = st.n;
    std::vector<double> wx(n, 0.0);
    double wsum = 0.0;
    for (std::size_t r = 0; r < pop.lambda; ++r) {
        const double w = w_eff[r];
        if (w > 0.0) {
            kernels::axpy(w, pop.xrow(pop.order[r]), wx.data(), n);
            wsum += w;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        st.m[k] += c_m * (wx[k] - wsum * st.m[k]);
}

int update_step_size(DistributionState& st, const Population& pop,
                     std::span<const double> w_eff, const StrategyParams& p) {
    const std::size_t n = st.n;
    std::vector<double> sz(n);
    weighted_positive_sum(pop, w_eff, pop.z.data(), sz.data());

    const double cs = p.c_sigma;
    const double inflow = std::sqrt(cs * (2.0 - cs) * p.mu_eff);
    for (std::size_t k = 0; k < n; ++k)
        st.p_sigma[k] = (1.0 - cs) * st.p_sigma[k] + inflow * sz[k];
    st.gamma_sigma =
        (1.0 - cs) * (1.0 - cs) * st.gamma_sigma + cs * (2.0 - cs);

    const double norm2 =
        kernels::dot(st.p_sigma.data(), st.p_sigma.data(), n);
    const double norm = std::sqrt(norm2);
    st.sigma *= std::exp((cs / p.d_sigma) *
                         (norm / p.chi_n - std::sqrt(st.gamma_sigma)));
    if (!std::isfinite(st.sigma) || st.sigma <= 0.0)
        throw NumericFailure("step size left the representable range");

    const double nd = static_cast<double>(n);
    const double threshold = (2.0 + 4.0 / (nd + 1.0)) * nd;
    return norm2 / st.gamma_sigma < threshold ? 1 : 0;
}

void update_paths(DistributionState& st, const Population& pop,
                  std::span<const double> w_eff, int h_sigma,
                  const StrategyParams& p) {
    const std::size_t n = st.n;
    std::vector<double> sy(n);
    weighted_positive_sum(pop, w_eff, pop.y.data(), sy.data());
    for (std::size_t k = 0; k < n; ++k) sy[k] *= st.D.d[k]; // selection step D*y

    const double h = static_cast<double>(h_sigma);
    const double cc = p.c_c;
    const double in_c = h * std::sqrt(cc * (2.0 - cc) * p.mu_eff);
    for (std::size_t k = 0; k < n; ++k)
        st.p_c[k] = (1.0 - cc) * st.p_c[k] + in_c * sy[k];
    st.gamma_c = (1.0 - cc) * (1.0 - cc) * st.gamma_c + h * cc * (2.0 - cc);

    const double cd = p.c_cd;
    const double in_d = h * std::sqrt(cd * (2.0 - cd) * p.mu_eff);
    for (std::size_t k = 0; k < n; ++k)
        st.p_cd[k] = (1.0 - cd) * st.p_cd[k] + in_d * sy[k];
    st.gamma_cd = (1.0 - cd) * (1.0 - cd) * st.gamma_cd + h * cd * (2.0 - cd);
}

void rescale_steps(Population& pop, std::span<const double> w_eff) {
    const std::size_t n = pop.n;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < pop.lambda; ++r) {
        const std::size_t i = pop.order[r];
        const double* zi = pop.zrow(i);
        const double* yi = pop.yrow(i);
        double* ztr = pop.zt.data() + r * n;
        double* ytr = pop.yt.data() + r * n;
        std::copy_n(zi, n, ztr);
        std::copy_n(yi, n, ytr);
        if (w_eff[r] < 0.0) {
            const double nz = std::sqrt(kernels::dot(zi, zi, n));
            if (nz > 0.0) {
                const double s = sqrt_n / nz;
                for (std::size_t k = 0; k < n; ++k) {
                    ztr[k] *= s;
                    ytr[k] *= s;
                }
            }
        }
    }
}

void accumulate_Z(DistributionState& st, const Population& pop,
                  std::span<const double> w_eff, const StrategyParams& p) {
    const std::size_t n = st.n;
    std::vector<double> tmp(n), u(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = st.p_c[k] / st.D.d[k];
    sym_matvec(st.invSqrtC, tmp.data(), u.data());

    st.K.add_rank1(p.c_1, u.data());
    double wsum = 0.0;
    for (std::size_t r = 0; r < pop.lambda; ++r) {
        const double w = w_eff[r];
        if (w != 0.0) {
            st.K.add_rank1(p.c_mu * w, pop.ztrow(r));
            wsum += w;
        }
    }
    st.K.add_diag(-(p.c_1 * st.gamma_c + p.c_mu * wsum));
}

double apply_cov_update(DistributionState& st, const StrategyParams& p,
                        ActiveMode mode) {
    const std::size_t n = st.n;
    double alpha = 1.0;
    if (mode == ActiveMode::method1) {
        // Gershgorin lower bound on the spectrum of K; conclusive for the
        // common case where the accumulated update is far from -0.75.
        std::vector<double> offsum(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = st.K.row(i);
            for (std::size_t j = 0; j < i; ++j) {
                const double a = std::fabs(row[j]);
                offsum[i] += a;
                offsum[j] += a;
            }
        }
        double bound = st.K(0, 0) - offsum[0];
        for (std::size_t i = 1; i < n; ++i)
            bound = std::min(bound, st.K(i, i) - offsum[i]);
        if (bound < -0.75) {
            const double d_min = sym_eig(st.K).values.front();
            if (d_min < 0.0) alpha = std::min(0.75 / -d_min, 1.0);
        }
    }

    // C += alpha * sqrtC K sqrtC, lower triangle only (the product is
    // symmetric by construction).
    std::vector<double> S(n * n), Kf(n * n), T(n * n);
    st.sqrtC.expand(S.data());
    st.K.expand(Kf.data());
    matmul_full(Kf.data(), S.data(), T.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = st.C.row(i);
        const double* srow = S.data() + i * n;
        for (std::size_t k = 0; k < n; ++k)
            kernels::axpy(alpha * srow[k], T.data() + k * n, crow, i + 1);
    }
    if (!st.C.finite())
        throw NumericFailure("covariance update produced non-finite entries");
    return alpha;
}

void update_diag_decoding(DistributionState& st, const Population& pop,
                          std::span<const double> w_eff,
                          const StrategyParams& p, bool det_preserving) {
    const std::size_t n = st.n;
    std::vector<double> tmp(n), v(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = st.p_cd[k] / st.D.d[k];
    sym_matvec(st.invSqrtC, tmp.data(), v.data());

    std::vector<double> s2(n, 0.0);
    double wsum = 0.0;
    for (std::size_t r = 0; r < pop.lambda; ++r) {
        const double w = w_eff[r];
        if (w != 0.0) {
            const double* zt = pop.ztrow(r);
            for (std::size_t k = 0; k < n; ++k) s2[k] += w * zt[k] * zt[k];
            wsum += w;
        }
    }
    std::vector<double> delta(n);
    for (std::size_t k = 0; k < n; ++k)
        delta[k] = p.c_1d * (v[k] * v[k] - st.gamma_cd) +
                   p.c_mud * (s2[k] - wsum);
    if (det_preserving) {
        double tr = 0.0;
        for (double d : delta) tr += d;
        const double shift = tr / static_cast<double>(n);
        for (double& d : delta) d -= shift;
    }
    const double damp = 1.0 / (2.0 * st.beta);
    for (std::size_t k = 0; k < n; ++k)
        st.D.d[k] *= std::exp(delta[k] * damp);
    if (!st.D.positive_finite())
        throw NumericFailure("diagonal decoding left (0, inf)");
}

void renormalize_decompose(DistributionState& st, const StrategyParams& p,
                           bool absorb_diagonal) {
    const std::size_t n = st.n;
    if (absorb_diagonal) {
        // D <- D sqrt(diag C), C <- corr(C); the product D C D is invariant.
        std::vector<double> inv_s(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double ckk = st.C(k, k);
            if (!(ckk > 0.0) || !std::isfinite(ckk))
                throw DegeneracyError(
                    "renormalize: covariance diagonal not positive");
            const double s = std::sqrt(ckk);
            st.D.d[k] *= s;
            inv_s[k] = 1.0 / s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double* row = st.C.row(i);
            for (std::size_t j = 0; j <= i; ++j)
                row[j] *= inv_s[i] * inv_s[j];
        }
    }
    const EigenDecomp e = sym_eig(st.C);
    if (e.values.front() <= 0.0)
        throw DegeneracyError("covariance lost positive definiteness");
    SqrtPair roots = sqrt_pair(e);
    st.sqrtC = std::move(roots.root);
    st.invSqrtC = std::move(roots.inv_root);
    st.last_cond = e.values.back() / e.values.front();
    st.beta =
        std::max(1.0, std::sqrt(st.last_cond) - p.beta_thresh + 1.0);
    st.K.set_zero();
    st.t_last_decomp = st.t;
}

} // namespace ddcma
