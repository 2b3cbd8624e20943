#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddcma/params.hpp"
#include "ddcma/state.hpp"
#include "ddcma/update.hpp"
#include "ddcma/weights.hpp"

namespace ddcma {

// Which parts of the distribution adapt:
//   plain     - full covariance C, decoding fixed at I
//   separable - decoding D only, C fixed at I
//   dd        - both, with the decoding damped by beta
enum class Variant { plain, separable, dd };

enum class Status { running, target_reached, budget_exhausted, degenerate };

struct TerminationCriteria {
    double target_f = 1e-8;
    std::uint64_t max_evals = 0; // 0: defaults to 5e4 * n at construction
    double min_sigma = 1e-30;
    double max_cond = 1e14;
};

struct OptimizerConfig {
    Variant variant = Variant::dd;
    ActiveMode active = ActiveMode::method1;
    bool det_preserving = false;
    std::size_t lambda = 0;      // 0: default schedule
    StrategyParams params;       // n == 0: derive default_params at init
    TerminationCriteria termination;
    // Diagnostics: disable one adaptation inside the dd variant (a dd run
    // with the D update off must match plain bit for bit, and with the C
    // update off must match separable).
    bool force_C_update_off = false;
    bool force_D_update_off = false;
};

const char* to_string(Variant v);
const char* to_string(ActiveMode a);
const char* to_string(Status s);
bool variant_from_string(const std::string& s, Variant& out);
bool active_from_string(const std::string& s, ActiveMode& out);

// ask/tell driver around the update chain.  Deterministic: a given (config,
// m0, sigma0, seed) always produces the same trajectory on a given binary.
class Optimizer {
public:
    Optimizer(OptimizerConfig cfg, const Vector& m0, double sigma0,
              std::uint64_t seed);

    // Candidates for the current generation; valid until the next ask().
    const std::vector<Vector>& ask();
    // Objective values in ask() order.  Runs the full update chain;
    // numerical blow-ups surface as Status::degenerate, not exceptions.
    void tell(const std::vector<double>& f);

    Status should_stop() const;

    std::uint64_t iterations() const { return st_.t; }
    std::uint64_t evaluations() const { return evals_; }
    double best_f() const { return best_f_; }
    const Vector& best_x() const { return best_x_; }
    double sigma() const { return st_.sigma; }
    const DistributionState& state() const { return st_; }
    const StrategyParams& params() const { return params_; }
    const WeightProfile& profile() const { return profile_; }
    const OptimizerConfig& config() const { return cfg_; }
    const std::string& diagnostic() const { return diagnostic_; }

    // Tab-separated: t, evaluations, best_f, sigma, beta, cond at last
    // decomposition, min D, max D.
    std::string log_line() const;

    // Checkpointing (between generations only).  restore() requires an
    // optimizer constructed with the same config; the continuation is then
    // bit-for-bit identical to an uninterrupted run.
    void save(std::ostream& os) const;
    void restore(std::istream& is);

private:
    void run_update_chain();

    OptimizerConfig cfg_;
    StrategyParams params_;
    WeightProfile profile_;
    bool update_C_ = true;
    bool update_D_ = true;
    DistributionState st_;
    Population pop_;
    NormalRng rng_;
    std::vector<double> w_eff_;
    std::vector<Vector> ask_view_;
    std::uint64_t evals_ = 0;
    double best_f_;
    Vector best_x_;
    bool ask_pending_ = false;
    bool failed_ = false;
    std::string diagnostic_;
};

} // namespace ddcma
