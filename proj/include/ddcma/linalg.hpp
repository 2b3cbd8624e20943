#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ddcma/errors.hpp"

namespace ddcma {

using Vector = std::vector<double>;

// Symmetric matrix with single storage of each off-diagonal element:
// the lower triangle held packed row-major, so (i,j) and (j,i) are the same
// double and the matrix cannot drift out of symmetry.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * (n + 1) / 2, 0.0) {}

    static SymMatrix identity(std::size_t n);
    // Pack a full row-major matrix, averaging (S + S^T)/2 to absorb drift.
    static SymMatrix from_full(const double* full, std::size_t n);

    std::size_t n() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return i >= j ? a_[i * (i + 1) / 2 + j] : a_[j * (j + 1) / 2 + i];
    }
    double& at(std::size_t i, std::size_t j) {
        return i >= j ? a_[i * (i + 1) / 2 + j] : a_[j * (j + 1) / 2 + i];
    }

    // Packed row i = entries (i,0..i), contiguous.
    double* row(std::size_t i) { return a_.data() + i * (i + 1) / 2; }
    const double* row(std::size_t i) const { return a_.data() + i * (i + 1) / 2; }
    std::span<double> packed() { return a_; }
    std::span<const double> packed() const { return a_; }

    void set_zero();
    void add_diag(double s);            // A += s*I
    void add_rank1(double a, const double* v);   // A += a*v*v^T
    void expand(double* full) const;    // write full row-major n x n
    bool finite() const;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

// Positive diagonal matrix (the decoding), stored as its diagonal.
struct DiagMatrix {
    Vector d;

    DiagMatrix() = default;
    explicit DiagMatrix(std::size_t n, double value = 1.0) : d(n, value) {}
    std::size_t n() const { return d.size(); }
    double min() const;
    double max() const;
    bool positive_finite() const;
};

// Result of a symmetric eigendecomposition.  Eigenvalues ascending; `basis`
// is row-major with ROW j holding the eigenvector of values[j] (i.e. the
// transpose of the usual column-eigenvector matrix), which keeps the hot
// rotation and reconstruction loops contiguous.
struct EigenDecomp {
    Vector values;
    std::vector<double> basis;

    std::size_t n() const { return values.size(); }
    const double* eigenvector(std::size_t j) const { return basis.data() + j * n(); }
};

// y = A x for packed symmetric A.
void sym_matvec(const SymMatrix& A, const double* x, double* y);

// C = A * B for full row-major n x n matrices (C must not alias A or B).
void matmul_full(const double* A, const double* B, double* C, std::size_t n);

// Full eigendecomposition by Householder tridiagonalization + implicit-shift
// QL (see README for the rationale versus Jacobi).  Deterministic: identical
// input bits give identical output bits on a given machine/binary.
// Throws NumericFailure on non-finite input or non-convergence.
EigenDecomp sym_eig(const SymMatrix& S);

// Principal square root and its inverse from a decomposition.
// Throws DegeneracyError if any eigenvalue is <= 0.
struct SqrtPair {
    SymMatrix root;
    SymMatrix inv_root;
};
SqrtPair sqrt_pair(const EigenDecomp& e);

// Condition number max/min eigenvalue; DegeneracyError if min <= 0.
double cond(const EigenDecomp& e);

bool all_finite(std::span<const double> v);

} // namespace ddcma
