#pragma once

#include <span>
#include <vector>

#include "ddcma/params.hpp"
#include "ddcma/state.hpp"

namespace ddcma {

// How negative recombination weights are kept from destroying positive
// definiteness of C: scale the accumulated update down a posteriori
// (method1, needs the smallest eigenvalue of K), or pre-cap the negative
// weights so a fixed bound holds for any ranking (method2).  `off` means the
// profile's negative weights were zeroed upstream and no scaling is needed.
enum class ActiveMode { off, method1, method2 };

// m += c_m * sum of w_eff[r] * (x_{r:lambda} - m) over positive weights.
void update_mean(DistributionState& st, const Population& pop,
                 std::span<const double> w_eff, double c_m);

// Cumulative step-size adaptation.  Updates p_sigma, gamma_sigma and sigma,
// and returns the stall indicator h_sigma (1 = path length unsuspicious)
// computed from the NEW path and normalizer.  Throws NumericFailure if sigma
// leaves the representable range.
int update_step_size(DistributionState& st, const Population& pop,
                     std::span<const double> w_eff, const StrategyParams& p);

// Covariance and decoding paths p_c / p_cd with their normalizers, gated by
// h_sigma.  Both accumulate the same selection step D*y in x/sigma space.
void update_paths(DistributionState& st, const Population& pop,
                  std::span<const double> w_eff, int h_sigma,
                  const StrategyParams& p);

// Fill pop.zt/yt in rank order.  Steps with negative effective weight are
// projected onto the equi-density ellipsoid y^T (C)^-1 y = n, i.e. scaled by
// sqrt(n)/||z||; zero-norm steps are left unscaled.
void rescale_steps(Population& pop, std::span<const double> w_eff);

// Add this generation's coordinate-space update
//   Z = c_1 [(invSqrtC D^-1 p_c)(...)^T - gamma_c I]
//     + c_mu sum_r w_eff[r] [zt_r zt_r^T - I]
// into the accumulator K.
void accumulate_Z(DistributionState& st, const Population& pop,
                  std::span<const double> w_eff, const StrategyParams& p);

// C <- sqrtC (I + alpha K) sqrtC using the cached root.  method1 picks
// alpha = min(0.75/|d_min(K)|, 1) (alpha = 1 when d_min(K) >= 0, decided by
// a Gershgorin bound when it is conclusive); method2/off use alpha = 1.
// Returns alpha.
double apply_cov_update(DistributionState& st, const StrategyParams& p,
                        ActiveMode mode);

// D[k] *= exp(Delta_k / (2 beta)) with
//   Delta_k = c_1d ([invSqrtC D^-1 p_cd]_k^2 - gamma_cd)
//           + c_mud sum_r w_eff[r] ([zt_r]_k^2 - 1),
// optionally made trace-free first (determinant-preserving form).
// Throws NumericFailure if the decoding leaves (0, inf).
void update_diag_decoding(DistributionState& st, const Population& pop,
                          std::span<const double> w_eff,
                          const StrategyParams& p, bool det_preserving);

// Decomposition-time maintenance: optionally absorb diag(C) into D (leaving
// C a correlation matrix; the product D C D is unchanged), then
// eigendecompose, refresh sqrtC/invSqrtC, derive the decoding damping
// beta = max(1, sqrt(cond) - beta_thresh + 1), record the condition number,
// and clear K.  Throws DegeneracyError if C is no longer positive definite.
void renormalize_decompose(DistributionState& st, const StrategyParams& p,
                           bool absorb_diagonal);

} // namespace ddcma
