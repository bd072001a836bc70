#include "minnorm/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace minnorm {

Vec sphere_normalize(const Vec& x) {
    double n = x.norm();
    if (n == 0.0) throw std::invalid_argument("sphere point cannot be the zero vector");
    return x / n;
}

double sphere_distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("sphere_distance: dimension mismatch");
    double c = x.dot(y);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

double sphere_area(int ambient_d) {
    return 2.0 * std::pow(M_PI, ambient_d / 2.0) / std::tgamma(ambient_d / 2.0);
}

std::int64_t sphere_degree_dimension(int ambient_d, int ell) {
    if (ell < 0) throw std::invalid_argument("degree must be nonnegative");
    if (ell == 0) return 1;
    // N_l = (2l + d - 2)/(d - 2) * binom(l + d - 3, l), evaluated as a product.
    double binom = 1.0;
    for (int j = 1; j <= ambient_d - 3; ++j) binom *= double(ell + j) / double(j);
    double n = double(2 * ell + ambient_d - 2) / double(ambient_d - 2) * binom;
    return std::int64_t(std::llround(n));
}

std::vector<double> legendre_all(int ambient_d, int max_ell, double t) {
    if (ambient_d < 3) throw std::invalid_argument("legendre: ambient dimension must be >= 3");
    if (t < -1.0 - 1e-12 || t > 1.0 + 1e-12)
        throw std::invalid_argument("legendre: argument outside [-1, 1]");
    t = std::clamp(t, -1.0, 1.0);
    std::vector<double> p(std::size_t(max_ell) + 1);
    p[0] = 1.0;
    if (max_ell >= 1) p[1] = t;
    // P_l = [(2l + d - 4) t P_{l-1} - (l - 1) P_{l-2}] / (l + d - 3)
    for (int l = 2; l <= max_ell; ++l)
        p[std::size_t(l)] = ((2.0 * l + ambient_d - 4.0) * t * p[std::size_t(l - 1)] -
                             (l - 1.0) * p[std::size_t(l - 2)]) /
                            double(l + ambient_d - 3);
    return p;
}

double legendre(int ambient_d, int ell, double t) {
    return legendre_all(ambient_d, ell, t)[std::size_t(ell)];
}

namespace {

// Fully normalized associated Legendre P-bar_l^m(z) such that the real
// harmonics below are orthonormal on the sphere of area 4 pi.
// Recurrences in the geodesy normalization:
//   Pbar_m^m = sqrt((2m+1)/(2m)) * sin(theta) * Pbar_{m-1}^{m-1}
//   Pbar_{m+1}^m = sqrt(2m+3) * z * Pbar_m^m
//   Pbar_l^m = a_lm (z Pbar_{l-1}^m - Pbar_{l-2}^m / a_{l-1,m})
double assoc_legendre_norm(int l, int m, double z) {
    double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
    double pmm = 1.0; // Pbar_0^0
    for (int k = 1; k <= m; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sz;
    if (l == m) return pmm;
    double pm1 = std::sqrt(2.0 * m + 3.0) * z * pmm;
    if (l == m + 1) return pm1;
    double pl = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        double b = std::sqrt(((2.0 * ll + 1.0) * (ll - 1.0 - m) * (ll - 1.0 + m)) /
                             ((2.0 * ll - 3.0) * (double(ll) * ll - double(m) * m)));
        pl = a * z * pm1 - b * pmm;
        pmm = pm1;
        pm1 = pl;
    }
    return pl;
}

} // namespace

double real_harmonic_d3(int ell, int m, const Vec& x) {
    if (x.size() != 3) throw std::invalid_argument("real_harmonic_d3: point must be in R^3");
    std::int64_t nl = 2 * std::int64_t(ell) + 1;
    if (m < 1 || m > nl) throw std::invalid_argument("real_harmonic_d3: order out of range");
    double z = std::clamp(x[2] / x.norm(), -1.0, 1.0);
    double phi = std::atan2(x[1], x[0]);
    int mu = m - ell - 1; // signed order in -l..l
    int am = std::abs(mu);
    double pbar = assoc_legendre_norm(ell, am, z);
    double base = pbar / std::sqrt(4.0 * M_PI);
    if (mu == 0) return base;
    double ang = mu > 0 ? std::cos(am * phi) : std::sin(am * phi);
    return std::sqrt(2.0) * base * ang;
}

int count_symmetric_points(const std::vector<Vec>& X, double match_tol) {
    int count = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            if ((X[i] + X[j]).lpNorm<Eigen::Infinity>() <= match_tol) {
                ++count;
                break; // points are distinct, so at most one antipode each
            }
        }
    }
    return count;
}

} // namespace minnorm
