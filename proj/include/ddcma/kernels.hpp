#pragma once

#include <cstddef>
#include <string>

// Low-level dense kernels used by the linear-algebra layer.  Each kernel has
// a scalar reference implementation and an AVX2+FMA variant; the active set
// is chosen once at startup from CPU capabilities and can be forced with the
// environment variable DDCMA_KERNELS=scalar|avx2.  The two lanes agree to
// rounding error (FMA contraction and reduction order differ), which the
// kernel test suite bounds explicitly; a given machine and binary always
// picks the same lane, so runs stay reproducible.

namespace ddcma::kernels {

using dot_fn = double (*)(const double*, const double*, std::size_t);
using axpy_fn = void (*)(double, const double*, double*, std::size_t);
// (x, y) <- (c*x - s*y, s*x + c*y), the plane rotation used by the eigensolver.
using rotate_fn = void (*)(double*, double*, double, double, std::size_t);

struct Dispatch {
    dot_fn dot;
    axpy_fn axpy;
    rotate_fn rotate;
    const char* lane; // "scalar" or "avx2"
};

// Active kernel set (initialized on first use, stable afterwards).
const Dispatch& active();

// Named kernel sets, for equivalence tests.
const Dispatch& scalar_lane();
const Dispatch& avx2_lane(); // valid only if avx2_available()
bool avx2_available();

inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy(a, x, y, n);
}
inline void rotate(double* x, double* y, double c, double s, std::size_t n) {
    active().rotate(x, y, c, s, n);
}

} // namespace ddcma::kernels
