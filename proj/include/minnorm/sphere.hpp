#pragma once

#include "minnorm/types.hpp"

#include <vector>

namespace minnorm {

// Renormalize to unit length; throws if the norm deviates from 1 by more
// than 1e-12 before renormalization is possible (zero vector).
Vec sphere_normalize(const Vec& x);

// Geodesic distance arccos(x.y), clamped inner product.
double sphere_distance(const Vec& x, const Vec& y);

// Surface measure of S^{d-1} in R^d: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int ambient_d);

// Dimension N_l of the space of degree-l spherical harmonics on S^{d-1}.
std::int64_t sphere_degree_dimension(int ambient_d, int ell);

// d-dimensional Legendre (Gegenbauer-normalized) polynomial, P_l(1) = 1,
// |P_l(t)| <= 1 on [-1,1].
double legendre(int ambient_d, int ell, double t);

// All of P_0(t) .. P_L(t) by the three-term recurrence.
std::vector<double> legendre_all(int ambient_d, int max_ell, double t);

// Real orthonormal spherical harmonic on S^2 (ambient d=3), degree l,
// order m in 1..2l+1. Orthonormal with respect to the surface measure
// (area 4 pi), so Y_{0,1} = 1/sqrt(4 pi).
double real_harmonic_d3(int ell, int m, const Vec& x);

// Number of distinct unordered antipodal pairs (x, -x) present in X,
// matched within `match_tol` per coordinate.
int count_symmetric_points(const std::vector<Vec>& X, double match_tol = tol::antipode_match);

} // namespace minnorm
