#include "minnorm/torus.hpp"

#include <cmath>

namespace minnorm {

double torus_wrap(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0; // floor rounding at negative near-integers
    return r;
}

Vec torus_canonicalize(const Vec& x) {
    Vec r(x.size());
    for (int j = 0; j < x.size(); ++j) r[j] = torus_wrap(x[j]);
    return r;
}

double torus_signed(double t) {
    double r = torus_wrap(t);
    return r < 0.5 ? r : r - 1.0;
}

double torus_distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("torus_distance: dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < x.size(); ++j) {
        double d = std::abs(torus_wrap(x[j]) - torus_wrap(y[j]));
        d = std::min(d, 1.0 - d);
        s += d * d;
    }
    return std::sqrt(s);
}

double green_kernel_1d(double t) {
    double a = std::abs(torus_signed(t));
    return std::cosh(0.5 - a) / (2.0 * std::sinh(0.5));
}

std::int64_t QuadratureGrid::size() const {
    std::int64_t n = 1;
    for (int j = 0; j < d; ++j) n *= m;
    return n;
}

Vec QuadratureGrid::point(std::int64_t i) const {
    Vec x(d);
    for (int j = 0; j < d; ++j) {
        x[j] = double(i % m) / double(m);
        i /= m;
    }
    return x;
}

double QuadratureGrid::weight() const { return std::pow(double(m), -double(d)); }

QuadratureGrid quadrature_grid(int d, int m, std::int64_t budget) {
    if (m < 2) throw std::invalid_argument("quadrature_grid: m must be >= 2");
    QuadratureGrid g{d, m};
    if (g.size() > budget) throw std::invalid_argument("quadrature_grid: m^d exceeds budget");
    return g;
}

} // namespace minnorm
