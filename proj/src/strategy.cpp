#include "ddcma/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ddcma/errors.hpp"
#include "ddcma/text.hpp"

namespace ddcma {

const char* to_string(Variant v) {
    switch (v) {
    case Variant::plain: return "plain";
    case Variant::separable: return "separable";
    case Variant::dd: return "dd";
    }
    return "?";
}

const char* to_string(ActiveMode a) {
    switch (a) {
    case ActiveMode::off: return "off";
    case ActiveMode::method1: return "method1";
    case ActiveMode::method2: return "method2";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
    case Status::running: return "running";
    case Status::target_reached: return "target_reached";
    case Status::budget_exhausted: return "budget_exhausted";
    case Status::degenerate: return "degenerate";
    }
    return "?";
}

bool variant_from_string(const std::string& s, Variant& out) {
    if (s == "plain") out = Variant::plain;
    else if (s == "separable") out = Variant::separable;
    else if (s == "dd") out = Variant::dd;
    else return false;
    return true;
}

bool active_from_string(const std::string& s, ActiveMode& out) {
    if (s == "off") out = ActiveMode::off;
    else if (s == "method1") out = ActiveMode::method1;
    else if (s == "method2") out = ActiveMode::method2;
    else return false;
    return true;
}

Optimizer::Optimizer(OptimizerConfig cfg, const Vector& m0, double sigma0,
                     std::uint64_t seed)
    : cfg_(cfg), rng_(seed),
      best_f_(std::numeric_limits<double>::infinity()) {
    const std::size_t n = m0.size();
    if (cfg_.params.n == 0) {
        params_ = default_params(n, cfg_.lambda);
    } else {
        params_ = cfg_.params;
        params_.validate();
        if (params_.n != n)
            throw ConfigError("optimizer: params.n does not match m0");
        if (cfg_.lambda != 0 && cfg_.lambda != params_.lambda)
            throw ConfigError("optimizer: lambda conflicts with params");
    }
    cfg_.lambda = params_.lambda;
    if (cfg_.termination.max_evals == 0)
        cfg_.termination.max_evals = 50000ull * n;

    update_C_ = cfg_.variant != Variant::separable && !cfg_.force_C_update_off;
    update_D_ = cfg_.variant != Variant::plain && !cfg_.force_D_update_off;

    const double ratio = cfg_.variant == Variant::separable
                             ? params_.weight_ratio_d
                             : params_.weight_ratio_c;
    profile_ = build_weights(params_.lambda, ratio);
    if (cfg_.active == ActiveMode::off) {
        for (double& w : profile_.w)
            if (w < 0.0) w = 0.0;
    } else if (cfg_.active == ActiveMode::method2) {
        method2_scale(profile_, params_.c_1, params_.c_mu, params_.t_eig,
                      params_.n);
    }

    st_ = init_state(n, m0, sigma0);
}

const std::vector<Vector>& Optimizer::ask() {
    if (ask_pending_)
        throw ProtocolError("ask: called twice without an intervening tell");
    if (should_stop() != Status::running)
        throw ProtocolError("ask: run already terminated");
    sample(pop_, st_, rng_, params_.lambda, update_C_);
    ask_view_.resize(params_.lambda);
    for (std::size_t i = 0; i < params_.lambda; ++i)
        ask_view_[i].assign(pop_.xrow(i), pop_.xrow(i) + st_.n);
    ask_pending_ = true;
    return ask_view_;
}

void Optimizer::tell(const std::vector<double>& f) {
    if (!ask_pending_) throw ProtocolError("tell: no ask is pending");
    if (f.size() != params_.lambda)
        throw ProtocolError("tell: expected one value per candidate");
    std::copy(f.begin(), f.end(), pop_.f.begin());
    rank(pop_); // throws EvaluationError on non-finite values
    ask_pending_ = false;
    evals_ += params_.lambda;

    const std::size_t ibest = pop_.order[0];
    if (pop_.f[ibest] < best_f_) {
        best_f_ = pop_.f[ibest];
        best_x_.assign(pop_.xrow(ibest), pop_.xrow(ibest) + st_.n);
    }

    try {
        run_update_chain();
    } catch (const NumericFailure& e) {
        failed_ = true;
        diagnostic_ = e.what();
    } catch (const DegeneracyError& e) {
        failed_ = true;
        diagnostic_ = e.what();
    }
}

void Optimizer::run_update_chain() {
    redistribute_weights(profile_.w, pop_, w_eff_);
    update_mean(st_, pop_, w_eff_, params_.c_m);
    const int h_sigma = update_step_size(st_, pop_, w_eff_, params_);
    update_paths(st_, pop_, w_eff_, h_sigma, params_);
    rescale_steps(pop_, w_eff_);
    if (update_C_) accumulate_Z(st_, pop_, w_eff_, params_);
    if (update_D_)
        update_diag_decoding(st_, pop_, w_eff_, params_,
                             cfg_.det_preserving);
    ++st_.t;
    if (update_C_ && st_.t % params_.t_eig == 0) {
        apply_cov_update(st_, params_, cfg_.active);
        renormalize_decompose(st_, params_, update_D_);
    }
}

Status Optimizer::should_stop() const {
    if (failed_) return Status::degenerate;
    if (best_f_ <= cfg_.termination.target_f) return Status::target_reached;
    if (evals_ >= cfg_.termination.max_evals)
        return Status::budget_exhausted;
    if (st_.sigma < cfg_.termination.min_sigma ||
        st_.last_cond > cfg_.termination.max_cond)
        return Status::degenerate;
    return Status::running;
}

std::string Optimizer::log_line() const {
    std::string s;
    s += std::to_string(st_.t);
    s += '\t';
    s += std::to_string(evals_);
    s += '\t';
    s += format_double(best_f_);
    s += '\t';
    s += format_double(st_.sigma);
    s += '\t';
    s += format_double(st_.beta);
    s += '\t';
    s += format_double(st_.last_cond);
    s += '\t';
    s += format_double(st_.D.min());
    s += '\t';
    s += format_double(st_.D.max());
    return s;
}

void Optimizer::save(std::ostream& os) const {
    if (ask_pending_)
        throw ProtocolError("save: checkpoint only between generations");
    os << "ddcma-checkpoint v1\n";
    os << "config " << static_cast<int>(cfg_.variant) << ' '
       << static_cast<int>(cfg_.active) << ' ' << (cfg_.det_preserving ? 1 : 0)
       << ' ' << (cfg_.force_C_update_off ? 1 : 0) << ' '
       << (cfg_.force_D_update_off ? 1 : 0) << ' ' << params_.n << ' '
       << params_.lambda << '\n';
    os << "evals " << evals_ << '\n';
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", best_f_);
    os << "best_f " << buf << '\n';
    os << "best_x " << best_x_.size();
    for (double v : best_x_) {
        std::snprintf(buf, sizeof buf, "%a", v);
        os << ' ' << buf;
    }
    os << '\n';
    os << "failed " << (failed_ ? 1 : 0) << ' ' << diagnostic_ << '\n';
    st_.save(os);
    rng_.save(os);
}

void Optimizer::restore(std::istream& is) {
    std::string word, version;
    is >> word >> version;
    if (word != "ddcma-checkpoint" || version != "v1")
        throw ProtocolError("restore: unrecognized checkpoint header");
    is >> word;
    if (word != "config") throw ProtocolError("restore: missing config line");
    int variant = 0, active = 0, det = 0, fc = 0, fd = 0;
    std::size_t n = 0, lambda = 0;
    is >> variant >> active >> det >> fc >> fd >> n >> lambda;
    if (!is) throw ProtocolError("restore: truncated config line");
    if (variant != static_cast<int>(cfg_.variant) ||
        active != static_cast<int>(cfg_.active) ||
        det != (cfg_.det_preserving ? 1 : 0) ||
        fc != (cfg_.force_C_update_off ? 1 : 0) ||
        fd != (cfg_.force_D_update_off ? 1 : 0) || n != params_.n ||
        lambda != params_.lambda)
        throw ProtocolError("restore: checkpoint config does not match");
    is >> word >> evals_;
    if (word != "evals" || !is)
        throw ProtocolError("restore: bad evals record");
    std::string hex;
    is >> word >> hex;
    if (word != "best_f") throw ProtocolError("restore: bad best_f record");
    best_f_ = std::strtod(hex.c_str(), nullptr);
    std::size_t bn = 0;
    is >> word >> bn;
    if (word != "best_x" || !is)
        throw ProtocolError("restore: bad best_x record");
    best_x_.resize(bn);
    for (double& v : best_x_) {
        is >> hex;
        v = std::strtod(hex.c_str(), nullptr);
    }
    int failed_flag = 0;
    is >> word >> failed_flag;
    if (word != "failed" || !is)
        throw ProtocolError("restore: bad failed record");
    failed_ = failed_flag != 0;
    std::getline(is, diagnostic_);
    if (!diagnostic_.empty() && diagnostic_.front() == ' ')
        diagnostic_.erase(0, 1);
    st_ = DistributionState::load(is);
    if (st_.n != params_.n)
        throw ProtocolError("restore: state dimension mismatch");
    rng_.load(is);
    ask_pending_ = false;
}

} // namespace ddcma
