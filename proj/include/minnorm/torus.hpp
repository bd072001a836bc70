#pragma once

#include "minnorm/types.hpp"

#include <utility>
#include <vector>

namespace minnorm {

// Canonical representative in [0,1)^d.
Vec torus_canonicalize(const Vec& x);
double torus_wrap(double t); // scalar wrap to [0,1)

// Signed representative in [-1/2, 1/2) of a torus coordinate difference.
double torus_signed(double t);

// l2 torus metric: d(x,y)^2 = min_{n in Z^d} sum_j |x_j - y_j - n_j|^2.
double torus_distance(const Vec& x, const Vec& y);

// Exact sum of the s=1 isotropic series in one dimension:
// sum_k (1 + 4 pi^2 k^2)^{-1} e^{2 pi i k t} = cosh(1/2 - |t|) / (2 sinh(1/2)).
double green_kernel_1d(double t);

// Tensor grid of m^d equispaced points with uniform weights m^{-d}.
struct QuadratureGrid {
    int d = 1;
    int m = 2;
    std::int64_t size() const;
    Vec point(std::int64_t i) const;       // i-th grid point
    double weight() const;                  // uniform weight m^{-d}
};
QuadratureGrid quadrature_grid(int d, int m, std::int64_t budget = (std::int64_t{1} << 24));

} // namespace minnorm
