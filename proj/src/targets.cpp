#include "minnorm/targets.hpp"

#include "minnorm/series.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/torus.hpp"

#include <cmath>

namespace minnorm {

namespace {

// Coefficient series on the 1-D torus given per-frequency cosine/sine
// amplitudes in the orthonormal convention: f = a0 + sum_k sqrt(2)
// (ac_k cos + as_k sin)(2 pi k x). Ordinal layout: [a0, as_1, ac_1, ...].
struct TrigTarget {
    std::vector<double> ccos, csin; // include sqrt(2), ready for trig_series_batch

    double operator()(const Vec& x) const {
        double t = x[0], out;
        trig_series_batch(ccos, csin, std::span<const double>(&t, 1), std::span<double>(&out, 1));
        return out;
    }
    Vec ordinals() const {
        std::int64_t M = std::int64_t(ccos.size()) - 1;
        Vec c(2 * M + 1);
        c[0] = ccos[0];
        const double r2 = std::sqrt(2.0);
        for (std::int64_t k = 1; k <= M; ++k) {
            c[2 * k - 1] = csin[std::size_t(k)] / r2;
            c[2 * k] = ccos[std::size_t(k)] / r2;
        }
        return c;
    }
};

TrigTarget sobolev_boundary_tables(double s, std::int64_t M) {
    TrigTarget t;
    t.ccos.resize(std::size_t(M) + 1);
    t.csin.resize(std::size_t(M) + 1);
    t.ccos[0] = 0.5;
    t.csin[0] = 0.0;
    // deterministic pseudo-random phases; amplitude k^{-(s+0.6)} keeps the
    // target just inside W^s so measured rates track the s - d/2 exponent
    for (std::int64_t k = 1; k <= M; ++k) {
        double amp = std::pow(double(k), -(s + 0.6));
        t.ccos[std::size_t(k)] = amp * std::cos(1.7 * double(k));
        t.csin[std::size_t(k)] = amp * std::sin(1.3 * double(k) + 0.4);
    }
    return t;
}

} // namespace

Target make_target(const std::string& name, const Domain& domain, double s) {
    Target t;
    t.name = name;
    t.domain = domain;
    if (name == "runge") {
        if (!domain.is_torus() || domain.dim != 1)
            throw std::invalid_argument("runge target lives on torus(1)");
        t.f = [](const Vec& x) {
            double u = torus_signed(x[0]);
            return 1.0 / (1.0 + 100.0 * u * u);
        };
        return t;
    }
    if (name == "analytic") {
        if (!domain.is_torus() || domain.dim != 1)
            throw std::invalid_argument("analytic target lives on torus(1)");
        t.f = [](const Vec& x) { return std::exp(std::sin(2.0 * M_PI * x[0])); };
        return t;
    }
    if (name == "sobolev-boundary") {
        if (!domain.is_torus() || domain.dim != 1)
            throw std::invalid_argument("sobolev-boundary target lives on torus(1)");
        auto tab = sobolev_boundary_tables(s, 4096);
        t.coefficients = tab.ordinals();
        t.f = [tab = std::move(tab)](const Vec& x) { return tab(x); };
        return t;
    }
    if (name == "analytic-2d") {
        if (!domain.is_torus() || domain.dim != 2)
            throw std::invalid_argument("analytic-2d target lives on torus(2)");
        t.f = [](const Vec& x) {
            return std::exp(std::sin(2.0 * M_PI * x[0])) * std::exp(std::sin(2.0 * M_PI * x[1]));
        };
        return t;
    }
    if (name == "mixed-boundary") {
        if (!domain.is_torus() || domain.dim != 2)
            throw std::invalid_argument("mixed-boundary target lives on torus(2)");
        auto tab = sobolev_boundary_tables(s, 4096);
        t.f = [tab = std::move(tab)](const Vec& x) {
            Vec a(1), b(1);
            a[0] = x[0];
            b[0] = x[1];
            return tab(a) * tab(b);
        };
        return t;
    }
    if (name == "decaying-coeff") {
        if (!domain.is_torus() || domain.dim != 1)
            throw std::invalid_argument("decaying-coeff target lives on torus(1)");
        TrigTarget tab;
        const std::int64_t M = 48;
        tab.ccos.resize(std::size_t(M) + 1);
        tab.csin.resize(std::size_t(M) + 1);
        tab.ccos[0] = 1.0;
        for (std::int64_t k = 1; k <= M; ++k) {
            double amp = std::exp(-0.4 * double(k));
            tab.ccos[std::size_t(k)] = amp * std::cos(0.9 * double(k));
            tab.csin[std::size_t(k)] = amp * std::sin(1.1 * double(k));
        }
        t.coefficients = tab.ordinals();
        t.f = [tab = std::move(tab)](const Vec& x) { return tab(x); };
        return t;
    }
    if (name == "sphere-analytic") {
        if (!domain.is_sphere() || domain.dim != 3)
            throw std::invalid_argument("sphere-analytic target lives on sphere(3)");
        Vec q(3);
        q << 0.26726124191242440, 0.53452248382484879, 0.80178372573727319; // (1,2,3)/|.|
        t.f = [q](const Vec& x) { return std::exp(x.dot(q)); };
        return t;
    }
    if (name == "ntk-span") {
        if (!domain.is_sphere() || domain.dim != 3)
            throw std::invalid_argument("ntk-span target lives on sphere(3)");
        // fixed combination of degrees 0, 1, 2, 4 (all present in the NTK basis)
        t.f = [](const Vec& x) {
            double v = 0.7 * real_harmonic_d3(0, 1, x);
            v += 0.5 * real_harmonic_d3(1, 2, x) - 0.3 * real_harmonic_d3(1, 3, x);
            v += 0.4 * real_harmonic_d3(2, 1, x) + 0.2 * real_harmonic_d3(2, 4, x);
            v += 0.15 * real_harmonic_d3(4, 5, x);
            return v;
        };
        return t;
    }
    throw std::invalid_argument("unknown target: " + name);
}

} // namespace minnorm
