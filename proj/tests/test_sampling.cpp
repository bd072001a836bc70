#include "minnorm/sampling.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/torus.hpp"

#include <doctest.h>

#include <cmath>

using namespace minnorm;

TEST_CASE("equispaced generator") {
    SamplingPlan plan{Domain::torus(1), GeneratorKind::Equispaced, 4, 0, 4, 0};
    auto X = generate(plan);
    REQUIRE(X.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(X[std::size_t(i)][0] == doctest::Approx(i / 4.0));
    SamplingPlan bad{Domain::torus(2), GeneratorKind::Equispaced, 5, 0, 2, 0};
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("uniform random generator is deterministic per seed") {
    SamplingPlan plan{Domain::torus(2), GeneratorKind::UniformRandom, 12, 77, 0, 0};
    auto a = generate(plan), b = generate(plan);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    plan.seed = 78;
    auto c = generate(plan);
    CHECK(a[0] != c[0]);
    SamplingPlan sp{Domain::sphere(3), GeneratorKind::UniformRandom, 9, 5, 0, 0};
    for (const auto& x : generate(sp)) CHECK(x.norm() == doctest::Approx(1.0));
}

TEST_CASE("symmetric augment produces the requested pair count") {
    for (int k : {1, 3, 5}) {
        SamplingPlan plan{Domain::sphere(3), GeneratorKind::SymmetricAugment, 10 + k, 3, 0, k};
        auto X = generate(plan);
        CHECK(std::int64_t(X.size()) == 10 + k);
        CHECK(count_symmetric_points(X) == k);
    }
}

TEST_CASE("mesh norm examples") {
    std::vector<Vec> two(2, Vec(1));
    two[0][0] = 0.0;
    two[1][0] = 0.5;
    auto r = mesh_norm(two, Domain::torus(1));
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-3));
    SamplingPlan eq{Domain::torus(1), GeneratorKind::Equispaced, 8, 0, 8, 0};
    auto X = generate(eq);
    CHECK(mesh_norm(X, Domain::torus(1)).value == doctest::Approx(1.0 / 16).epsilon(1e-3));
    // octahedron on S^2: covering radius arccos(1/sqrt(3))
    std::vector<Vec> oct;
    for (int j = 0; j < 3; ++j)
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(3);
            v[j] = s;
            oct.push_back(v);
        }
    CHECK(mesh_norm(oct, Domain::sphere(3)).value ==
          doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(5e-3));
}

TEST_CASE("separation radius") {
    std::vector<Vec> two(2, Vec(1));
    two[0][0] = 0.0;
    two[1][0] = 0.5;
    CHECK(separation_radius(two, Domain::torus(1)) == doctest::Approx(0.25));
    SamplingPlan eq{Domain::torus(1), GeneratorKind::Equispaced, 10, 0, 10, 0};
    CHECK(separation_radius(generate(eq), Domain::torus(1)) == doctest::Approx(0.05));
    std::vector<Vec> one(1, Vec(1));
    one[0][0] = 0.3;
    CHECK(std::isinf(separation_radius(one, Domain::torus(1))));
    SamplingPlan rnd{Domain::torus(1), GeneratorKind::UniformRandom, 20, 4, 0, 0};
    CHECK(separation_radius(generate(rnd), Domain::torus(1)) > 0.0);
}

TEST_CASE("mesh norm dominates separation radius; equality for equispaced sets") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, 15, seed, 0, 0};
        auto X = generate(plan);
        CHECK(mesh_norm(X, plan.domain).value >=
              separation_radius(X, plan.domain) - 1e-3);
    }
    SamplingPlan eq{Domain::torus(1), GeneratorKind::Equispaced, 16, 0, 16, 0};
    auto X = generate(eq);
    double h = mesh_norm(X, eq.domain).value, q = separation_radius(X, eq.domain);
    CHECK(h == doctest::Approx(q).epsilon(2e-2));
}

TEST_CASE("mesh norm decreases under refinement") {
    SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, 10, 12, 0, 0};
    auto X = generate(plan);
    double h0 = mesh_norm(X, plan.domain).value;
    Vec extra(1);
    extra[0] = 0.123456;
    X.push_back(extra);
    double h1 = mesh_norm(X, plan.domain).value;
    CHECK(h1 <= h0 + 2e-3);
}

TEST_CASE("fibonacci lattice is quasi-uniform") {
    SamplingPlan plan{Domain::sphere(3), GeneratorKind::Fibonacci, 200, 0, 0, 0};
    auto X = generate(plan);
    double h = mesh_norm(X, plan.domain).value, q = separation_radius(X, plan.domain);
    CHECK(h >= q - 1e-6);
    CHECK(h / q < 4.0); // quasi-uniformity at desk scale
}
