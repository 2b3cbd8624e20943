#include "ddcma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ddcma/kernels.hpp"

namespace ddcma {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * (i + 1) / 2 + i] = 1.0;
    return m;
}

SymMatrix SymMatrix::from_full(const double* full, std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        double* r = m.row(i);
        for (std::size_t j = 0; j <= i; ++j)
            r[j] = 0.5 * (full[i * n + j] + full[j * n + i]);
    }
    return m;
}

void SymMatrix::set_zero() { std::fill(a_.begin(), a_.end(), 0.0); }

void SymMatrix::add_diag(double s) {
    for (std::size_t i = 0; i < n_; ++i) a_[i * (i + 1) / 2 + i] += s;
}

void SymMatrix::add_rank1(double a, const double* v) {
    for (std::size_t i = 0; i < n_; ++i)
        kernels::axpy(a * v[i], v, row(i), i + 1);
}

void SymMatrix::expand(double* full) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            full[i * n_ + j] = r[j];
            full[j * n_ + i] = r[j];
        }
    }
}

bool SymMatrix::finite() const { return all_finite(a_); }

double DiagMatrix::min() const { return *std::min_element(d.begin(), d.end()); }
double DiagMatrix::max() const { return *std::max_element(d.begin(), d.end()); }

bool DiagMatrix::positive_finite() const {
    for (double x : d)
        if (!(x > 0.0) || !std::isfinite(x)) return false;
    return true;
}

void sym_matvec(const SymMatrix& A, const double* x, double* y) {
    const std::size_t n = A.n();
    std::fill(y, y + n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = A.row(i);
        y[i] += kernels::dot(r, x, i + 1);
        kernels::axpy(x[i], r, y, i); // mirrored (j,i) entries, j < i
    }
}

void matmul_full(const double* A, const double* B, double* C, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = C + i * n;
        std::fill(ci, ci + n, 0.0);
        const double* ai = A + i * n;
        for (std::size_t k = 0; k < n; ++k)
            kernels::axpy(ai[k], B + k * n, ci, n);
    }
}

namespace {

// Householder reduction of the full symmetric matrix in `a` (row-major, both
// triangles filled) to tridiagonal form; `a` is replaced by the accumulated
// orthogonal transformation Q with A = Q T Q^T.  d receives the diagonal of
// T, e the subdiagonal in e[1..n-1].  Classic tred2 scheme, restructured so
// every O(n^2) inner loop runs over contiguous rows.
void tridiagonalize(double* a, double* d, double* e, std::size_t n) {
    std::vector<double> ew(n);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double* u = a + i * n; // row i becomes the Householder vector
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(u[k]);
            if (scale == 0.0) {
                e[i] = u[l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    u[k] /= scale;
                    h += u[k] * u[k];
                }
                double f = u[l];
                const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                u[l] = f - g;
                // ew = (A_sub * u) / h over the lower-triangle rows
                std::fill(ew.begin(), ew.begin() + l + 1, 0.0);
                for (std::size_t j = 0; j <= l; ++j) {
                    const double* rj = a + j * n;
                    ew[j] += kernels::dot(rj, u, j + 1);
                    kernels::axpy(u[j], rj, ew.data(), j);
                }
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a[j * n + i] = u[j] / h; // kept for the Q accumulation
                    ew[j] /= h;
                    f += ew[j] * u[j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) ew[j] -= hh * u[j];
                // A_sub -= u*ew^T + ew*u^T (lower triangle only)
                for (std::size_t j = 0; j <= l; ++j) {
                    double* rj = a + j * n;
                    kernels::axpy(-u[j], ew.data(), rj, j + 1);
                    kernels::axpy(-ew[j], u, rj, j + 1);
                }
            }
        } else {
            e[i] = u[l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    std::vector<double> gv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i;
        if (d[i] != 0.0) { // skip steps whose Householder vector was trivial
            std::fill(gv.begin(), gv.begin() + l, 0.0);
            const double* u = a + i * n;
            for (std::size_t k = 0; k < l; ++k)
                kernels::axpy(u[k], a + k * n, gv.data(), l);
            for (std::size_t k = 0; k < l; ++k)
                kernels::axpy(-a[k * n + i], gv.data(), a + k * n, l);
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for (std::size_t j = 0; j < l; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e[0..n-2]); plane rotations are
// accumulated into the rows of vt (row j = eigenvector j).
void ql_implicit(double* d, double* e, double* vt, std::size_t n) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const long nn = static_cast<long>(n);
    for (long l = 0; l < nn; ++l) {
        int iter = 0;
        long m;
        do {
            for (m = l; m < nn - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 64)
                    throw NumericFailure(
                        "sym_eig: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (long i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    kernels::rotate(vt + static_cast<std::size_t>(i) * n,
                                    vt + static_cast<std::size_t>(i + 1) * n,
                                    c, s, n);
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

EigenDecomp sym_eig(const SymMatrix& S) {
    const std::size_t n = S.n();
    if (n == 0) throw ConfigError("sym_eig: empty matrix");
    if (!S.finite())
        throw NumericFailure("sym_eig: non-finite entries in input");

    EigenDecomp out;
    out.values.resize(n);
    out.basis.assign(n * n, 0.0);
    if (n == 1) {
        out.values[0] = S(0, 0);
        out.basis[0] = 1.0;
        return out;
    }

    std::vector<double> a(n * n);
    S.expand(a.data());
    std::vector<double> d(n), e(n);
    tridiagonalize(a.data(), d.data(), e.data(), n);
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    // vt row j = column j of Q
    std::vector<double> vt(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vt[j * n + i] = a[i * n + j];
    ql_implicit(d.data(), e.data(), vt.data(), n);

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        if (d[x] != d[y]) return d[x] < d[y];
        return x < y;
    });
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[idx[j]];
        std::copy_n(vt.data() + idx[j] * n, n, out.basis.data() + j * n);
    }
    if (!all_finite(out.values) || !all_finite(out.basis))
        throw NumericFailure("sym_eig: non-finite decomposition result");
    return out;
}

SqrtPair sqrt_pair(const EigenDecomp& e) {
    const std::size_t n = e.n();
    if (n == 0 || e.values[0] <= 0.0)
        throw DegeneracyError("sqrt_pair: matrix is not positive definite");
    SqrtPair p{SymMatrix(n), SymMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const double r = std::sqrt(e.values[j]);
        p.root.add_rank1(r, e.eigenvector(j));
        p.inv_root.add_rank1(1.0 / r, e.eigenvector(j));
    }
    return p;
}

double cond(const EigenDecomp& e) {
    if (e.n() == 0 || e.values.front() <= 0.0)
        throw DegeneracyError("cond: matrix is not positive definite");
    return e.values.back() / e.values.front();
}

} // namespace ddcma
