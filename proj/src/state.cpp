#include "ddcma/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "ddcma/errors.hpp"

namespace ddcma {

DistributionState init_state(std::size_t n, const Vector& m0, double sigma0) {
    if (n < 1) throw ConfigError("init_state: n must be >= 1");
    if (m0.size() != n) throw ConfigError("init_state: m0 has wrong length");
    if (!all_finite(m0)) throw ConfigError("init_state: m0 must be finite");
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw ConfigError("init_state: sigma0 must be positive and finite");

    DistributionState st;
    st.n = n;
    st.m = m0;
    st.sigma = sigma0;
    st.D = DiagMatrix(n, 1.0);
    st.C = SymMatrix::identity(n);
    st.sqrtC = SymMatrix::identity(n);
    st.invSqrtC = SymMatrix::identity(n);
    st.p_sigma.assign(n, 0.0);
    st.p_c.assign(n, 0.0);
    st.p_cd.assign(n, 0.0);
    st.K = SymMatrix(n);
    return st;
}

void Population::resize(std::size_t n_, std::size_t lambda_) {
    n = n_;
    lambda = lambda_;
    z.resize(lambda * n);
    y.resize(lambda * n);
    x.resize(lambda * n);
    zt.resize(lambda * n);
    yt.resize(lambda * n);
    f.assign(lambda, 0.0);
    order.resize(lambda);
    ties.clear();
}

void sample(Population& pop, const DistributionState& st, NormalRng& rng,
            std::size_t lambda, bool apply_sqrtC) {
    pop.resize(st.n, lambda);
    const std::size_t n = st.n;
    for (std::size_t i = 0; i < lambda; ++i) {
        double* zi = pop.zrow(i);
        for (std::size_t k = 0; k < n; ++k) zi[k] = rng.normal();
        double* yi = pop.yrow(i);
        if (apply_sqrtC)
            sym_matvec(st.sqrtC, zi, yi);
        else
            std::copy_n(zi, n, yi);
        double* xi = pop.xrow(i);
        for (std::size_t k = 0; k < n; ++k)
            xi[k] = st.m[k] + st.sigma * (st.D.d[k] * yi[k]);
    }
}

void rank(Population& pop) {
    for (std::size_t i = 0; i < pop.lambda; ++i)
        if (!std::isfinite(pop.f[i]))
            throw EvaluationError("rank: non-finite objective value",
                                  static_cast<long>(i));
    std::iota(pop.order.begin(), pop.order.end(), std::uint32_t{0});
    std::sort(pop.order.begin(), pop.order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  if (pop.f[a] != pop.f[b]) return pop.f[a] < pop.f[b];
                  return a < b;
              });
    pop.ties.clear();
    std::size_t start = 0;
    while (start < pop.lambda) {
        std::size_t end = start + 1;
        while (end < pop.lambda &&
               pop.f[pop.order[end]] == pop.f[pop.order[start]])
            ++end;
        if (end - start > 1)
            pop.ties.emplace_back(static_cast<std::uint32_t>(start),
                                  static_cast<std::uint32_t>(end - start));
        start = end;
    }
}

void redistribute_weights(std::span<const double> profile_w,
                          const Population& pop, std::vector<double>& w_eff) {
    w_eff.assign(profile_w.begin(), profile_w.end());
    for (auto [start, len] : pop.ties) {
        double sum = 0.0;
        for (std::uint32_t r = start; r < start + len; ++r) sum += w_eff[r];
        const double avg = sum / static_cast<double>(len);
        for (std::uint32_t r = start; r < start + len; ++r) w_eff[r] = avg;
    }
}

// ------------------------------------------------------------ checkpoint ---

namespace {

void put_scalar(std::ostream& os, const char* key, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    os << key << ' ' << buf << '\n';
}

void put_vector(std::ostream& os, const char* key,
                std::span<const double> v) {
    os << key;
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%a", x);
        os << ' ' << buf;
    }
    os << '\n';
}

void expect_tag(std::istream& is, const std::string& want) {
    std::string tag;
    is >> tag;
    if (tag != want)
        throw ProtocolError("state load: expected '" + want + "', got '" +
                            tag + "'");
}

double get_scalar(std::istream& is, const std::string& key) {
    expect_tag(is, key);
    std::string hex;
    is >> hex;
    if (!is) throw ProtocolError("state load: truncated at " + key);
    return std::strtod(hex.c_str(), nullptr);
}

void get_vector(std::istream& is, const std::string& key,
                std::span<double> out) {
    expect_tag(is, key);
    std::string hex;
    for (double& x : out) {
        is >> hex;
        if (!is) throw ProtocolError("state load: truncated at " + key);
        x = std::strtod(hex.c_str(), nullptr);
    }
}

} // namespace

void DistributionState::save(std::ostream& os) const {
    os << "ddcma-state v1\n";
    os << "n " << n << '\n';
    os << "t " << t << '\n';
    os << "t_last_decomp " << t_last_decomp << '\n';
    put_scalar(os, "sigma", sigma);
    put_scalar(os, "gamma_sigma", gamma_sigma);
    put_scalar(os, "gamma_c", gamma_c);
    put_scalar(os, "gamma_cd", gamma_cd);
    put_scalar(os, "beta", beta);
    put_scalar(os, "last_cond", last_cond);
    put_vector(os, "m", m);
    put_vector(os, "D", D.d);
    put_vector(os, "p_sigma", p_sigma);
    put_vector(os, "p_c", p_c);
    put_vector(os, "p_cd", p_cd);
    put_vector(os, "C", C.packed());
    put_vector(os, "sqrtC", sqrtC.packed());
    put_vector(os, "invSqrtC", invSqrtC.packed());
    put_vector(os, "K", K.packed());
}

DistributionState DistributionState::load(std::istream& is) {
    std::string word, version;
    is >> word >> version;
    if (word != "ddcma-state" || version != "v1")
        throw ProtocolError("state load: unrecognized header '" + word + " " +
                            version + "'");
    DistributionState st;
    expect_tag(is, "n");
    is >> st.n;
    expect_tag(is, "t");
    is >> st.t;
    expect_tag(is, "t_last_decomp");
    is >> st.t_last_decomp;
    if (!is || st.n < 1) throw ProtocolError("state load: bad dimensions");
    st.sigma = get_scalar(is, "sigma");
    st.gamma_sigma = get_scalar(is, "gamma_sigma");
    st.gamma_c = get_scalar(is, "gamma_c");
    st.gamma_cd = get_scalar(is, "gamma_cd");
    st.beta = get_scalar(is, "beta");
    st.last_cond = get_scalar(is, "last_cond");
    st.m.resize(st.n);
    st.D = DiagMatrix(st.n);
    st.p_sigma.resize(st.n);
    st.p_c.resize(st.n);
    st.p_cd.resize(st.n);
    st.C = SymMatrix(st.n);
    st.sqrtC = SymMatrix(st.n);
    st.invSqrtC = SymMatrix(st.n);
    st.K = SymMatrix(st.n);
    get_vector(is, "m", st.m);
    get_vector(is, "D", st.D.d);
    get_vector(is, "p_sigma", st.p_sigma);
    get_vector(is, "p_c", st.p_c);
    get_vector(is, "p_cd", st.p_cd);
    get_vector(is, "C", st.C.packed());
    get_vector(is, "sqrtC", st.sqrtC.packed());
    get_vector(is, "invSqrtC", st.invSqrtC.packed());
    get_vector(is, "K", st.K.packed());
    return st;
}

} // namespace ddcma
