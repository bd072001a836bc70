#include "minnorm/sampling.hpp"

#include "minnorm/sphere.hpp"
#include "minnorm/torus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace minnorm {

double SplitMix64::normal() {
    if (spare_) {
        double v = *spare_;
        spare_.reset();
        return v;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

namespace {

double point_distance(const Vec& a, const Vec& b, const Domain& dom) {
    return dom.is_torus() ? torus_distance(a, b) : sphere_distance(a, b);
}

bool collides(const std::vector<Vec>& X, const Vec& p, const Domain& dom) {
    for (const auto& x : X)
        if (point_distance(x, p, dom) <= tol::point_distinct) return true;
    return false;
}

std::vector<Vec> gen_uniform(const Domain& dom, std::int64_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Vec> X;
    X.reserve(std::size_t(n));
    int retries = 0;
    while (std::int64_t(X.size()) < n) {
        Vec p(dom.dim);
        if (dom.is_torus()) {
            for (int j = 0; j < dom.dim; ++j) p[j] = rng.uniform01();
        } else {
            for (int j = 0; j < dom.dim; ++j) p[j] = rng.normal();
            if (p.norm() < 1e-8) continue;
            p = sphere_normalize(p);
        }
        if (collides(X, p, dom)) {
            if (++retries > 1000) throw std::runtime_error("sampling: collision retries exhausted");
            continue;
        }
        X.push_back(std::move(p));
    }
    return X;
}

std::vector<Vec> gen_equispaced(const Domain& dom, int per_axis) {
    if (!dom.is_torus()) throw std::invalid_argument("equispaced generator requires a torus");
    if (per_axis < 1) throw std::invalid_argument("equispaced: per_axis must be >= 1");
    std::int64_t n = 1;
    for (int j = 0; j < dom.dim; ++j) n *= per_axis;
    std::vector<Vec> X;
    X.reserve(std::size_t(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Vec p(dom.dim);
        std::int64_t r = i;
        for (int j = 0; j < dom.dim; ++j) {
            p[j] = double(r % per_axis) / double(per_axis);
            r /= per_axis;
        }
        X.push_back(std::move(p));
    }
    return X;
}

std::vector<Vec> gen_fibonacci(const Domain& dom, std::int64_t n) {
    if (!dom.is_sphere() || dom.dim != 3)
        throw std::invalid_argument("fibonacci generator requires sphere d=3");
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Vec> X;
    X.reserve(std::size_t(n));
    for (std::int64_t i = 0; i < n; ++i) {
        double z = 1.0 - (2.0 * double(i) + 1.0) / double(n);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden_angle * double(i);
        Vec p(3);
        p << r * std::cos(phi), r * std::sin(phi), z;
        X.push_back(std::move(p));
    }
    return X;
}

} // namespace

std::vector<Vec> generate(const SamplingPlan& plan) {
    if (plan.n < 1) throw std::invalid_argument("sampling plan: n must be >= 1");
    switch (plan.kind) {
    case GeneratorKind::UniformRandom: return gen_uniform(plan.domain, plan.n, plan.seed);
    case GeneratorKind::Equispaced: {
        auto X = gen_equispaced(plan.domain, plan.per_axis);
        if (plan.n != std::int64_t(X.size()))
            throw std::invalid_argument("equispaced: n must equal per_axis^d");
        return X;
    }
    case GeneratorKind::Fibonacci: return gen_fibonacci(plan.domain, plan.n);
    case GeneratorKind::SymmetricAugment: {
        if (!plan.domain.is_sphere())
            throw std::invalid_argument("symmetric-augment requires a sphere");
        std::int64_t base_n = plan.n - plan.pairs;
        if (plan.pairs < 0 || base_n < plan.pairs)
            throw std::invalid_argument("symmetric-augment: invalid pair count");
        std::vector<Vec> X = plan.base == GeneratorKind::Fibonacci
                                 ? gen_fibonacci(plan.domain, base_n)
                                 : gen_uniform(plan.domain, base_n, plan.seed);
        for (int i = 0; i < plan.pairs; ++i) X.push_back(Vec(-X[std::size_t(i)]));
        return X;
    }
    }
    throw std::invalid_argument("unknown generator");
}

namespace {

double min_dist_to(const std::vector<Vec>& X, const Vec& p, const Domain& dom) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : X) best = std::min(best, point_distance(x, p, dom));
    return best;
}

} // namespace

MeshNormResult mesh_norm(const std::vector<Vec>& X, const Domain& domain) {
    if (X.empty()) throw std::invalid_argument("mesh_norm: empty point set");
    if (domain.is_torus()) {
        const int d = domain.dim;
        const int m0 = d == 1 ? 512 : (d == 2 ? 96 : 24); // coarse pass, >= 64 for d <= 2 refined
        std::int64_t total = 1;
        for (int j = 0; j < d; ++j) total *= m0;
        Vec best(d);
        double bestval = -1.0;
        for (std::int64_t i = 0; i < total; ++i) {
            Vec p(d);
            std::int64_t r = i;
            for (int j = 0; j < d; ++j) {
                p[j] = double(r % m0) / double(m0);
                r /= m0;
            }
            double v = min_dist_to(X, p, domain);
            if (v > bestval) {
                bestval = v;
                best = p;
            }
        }
        // local refinement: shrink a 5^d stencil around the incumbent
        double h = 1.0 / double(m0);
        for (int round = 0; round < 6; ++round) {
            h *= 0.25;
            std::int64_t cells = 1;
            for (int j = 0; j < d; ++j) cells *= 5;
            Vec center = best;
            for (std::int64_t i = 0; i < cells; ++i) {
                Vec p(d);
                std::int64_t r = i;
                for (int j = 0; j < d; ++j) {
                    p[j] = torus_wrap(center[j] + h * (double(r % 5) - 2.0));
                    r /= 5;
                }
                double v = min_dist_to(X, p, domain);
                if (v > bestval) {
                    bestval = v;
                    best = p;
                }
            }
        }
        return {bestval, h};
    }
    if (domain.dim != 3)
        throw std::invalid_argument("mesh_norm on the sphere is implemented for d=3");
    // dense Fibonacci probe + tangent-plane refinement
    SamplingPlan probe{domain, GeneratorKind::Fibonacci, 20000, 0, 0, 0};
    auto P = generate(probe);
    Vec best(3);
    double bestval = -1.0;
    for (const auto& p : P) {
        double v = min_dist_to(X, p, domain);
        if (v > bestval) {
            bestval = v;
            best = p;
        }
    }
    double cap = std::sqrt(4.0 * M_PI / 20000.0); // initial probe spacing scale
    for (int round = 0; round < 6; ++round) {
        cap *= 0.35;
        // tangent frame at the incumbent
        Vec u(3);
        if (std::abs(best[0]) < 0.9)
            u << 0, -best[2], best[1];
        else
            u << -best[2], 0, best[0];
        u /= u.norm();
        Vec v(3);
        v << best[1] * u[2] - best[2] * u[1], best[2] * u[0] - best[0] * u[2],
            best[0] * u[1] - best[1] * u[0];
        for (int a = -2; a <= 2; ++a) {
            for (int b = -2; b <= 2; ++b) {
                Vec p = sphere_normalize(best + cap * (a * 0.5) * u + cap * (b * 0.5) * v);
                double val = min_dist_to(X, p, domain);
                if (val > bestval) {
                    bestval = val;
                    best = p;
                }
            }
        }
    }
    return {bestval, cap};
}

double separation_radius(const std::vector<Vec>& X, const Domain& domain) {
    if (X.empty()) throw std::invalid_argument("separation_radius: empty point set");
    if (X.size() == 1) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
            best = std::min(best, point_distance(X[i], X[j], domain));
    return 0.5 * best;
}

} // namespace minnorm
