#include "minnorm/basis.hpp"
#include "minnorm/sampling.hpp"
#include "minnorm/sphere.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>

using namespace minnorm;

namespace {
Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}
Vec random_unit(SplitMix64& rng) {
    Vec v(3);
    for (int j = 0; j < 3; ++j) v[j] = rng.normal();
    return sphere_normalize(v);
}
} // namespace

TEST_CASE("degree dimensions") {
    CHECK(sphere_degree_dimension(3, 0) == 1);
    for (int l = 1; l <= 10; ++l) CHECK(sphere_degree_dimension(3, l) == 2 * l + 1);
    for (int l = 1; l <= 6; ++l)
        CHECK(sphere_degree_dimension(4, l) == std::int64_t(l + 1) * (l + 1));
    CHECK(sphere_degree_dimension(5, 2) == 14); // (2*2+3)(3)(4)/6
}

TEST_CASE("sphere distance") {
    CHECK(sphere_distance(v3(1, 0, 0), v3(1, 0, 0)) == 0.0);
    CHECK(sphere_distance(v3(1, 0, 0), v3(-1, 0, 0)) == doctest::Approx(M_PI));
    CHECK(sphere_distance(v3(1, 0, 0), v3(0, 1, 0)) == doctest::Approx(M_PI / 2));
}

TEST_CASE("legendre polynomials") {
    for (int d : {3, 4, 5})
        for (int l : {0, 1, 2, 7, 19}) CHECK(legendre(d, l, 1.0) == doctest::Approx(1.0));
    for (double t : {-0.8, -0.2, 0.3, 0.9}) CHECK(legendre(3, 1, t) == doctest::Approx(t));
    CHECK(legendre(3, 2, 0.0) == doctest::Approx(-0.5));
    // |P_l| <= 1 on a dense grid up to degree 40
    for (int d : {3, 4}) {
        for (int i = 0; i <= 200; ++i) {
            double t = -1.0 + 2.0 * i / 200.0;
            auto p = legendre_all(d, 40, t);
            for (double v : p) CHECK(std::abs(v) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("NTK enumeration skips odd degrees >= 3") {
    BasisSpec ntk(Domain::sphere(3), WeightScheme::ntk());
    auto e = enumerate_basis(ntk, 9);
    int expect_deg[] = {0, 1, 1, 1, 2, 2, 2, 2, 2};
    for (int i = 0; i < 9; ++i) CHECK(e[std::size_t(i)].sphere().degree == expect_deg[i]);
    auto e2 = enumerate_basis(ntk, 10);
    CHECK(e2[9].sphere().degree == 4); // degree 3 absent
    CHECK(ntk.aligned_truncation(9) == 9);
    CHECK(ntk.aligned_truncation(12) == 9); // inside the degree-4 block
    CHECK(ntk.sphere_block_size(4) == 1 + 3 + 5 + 9);
}

TEST_CASE("sphere kernel: low-degree closed form and rotation invariance") {
    // unit weights restricted to degrees {0,1}: K = (1 + 3 t)/(4 pi)
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(0.0));
    SplitMix64 rng(7);
    for (int i = 0; i < 10; ++i) {
        Vec x = random_unit(rng), y = random_unit(rng);
        double t = x.dot(y);
        CHECK(kernel_truncated(spec, 4, x, y) ==
              doctest::Approx((1.0 + 3.0 * t) / (4.0 * M_PI)).epsilon(1e-12));
    }
    // function of the inner product only: kernel at matched t must agree
    BasisSpec ntk(Domain::sphere(3), WeightScheme::ntk());
    Vec a = v3(1, 0, 0), b = v3(0.6, 0.8, 0);
    double t_ab = a.dot(b);
    Vec d = v3(0, 1, 0);
    Vec e = v3(std::sqrt(1 - t_ab * t_ab), t_ab, 0); // rotated pair with e.d == a.b
    CHECK(kernel_truncated(ntk, 9, a, b) ==
          doctest::Approx(kernel_truncated(ntk, 9, d, e)).epsilon(1e-12));
    Vec c = v3(0, 0, 1); // c.d = 0 != a.b
    CHECK(kernel_truncated(ntk, 9, a, b) != doctest::Approx(kernel_truncated(ntk, 9, c, d)));
}

TEST_CASE("NTK kernel sums only present degrees") {
    BasisSpec ntk(Domain::sphere(3), WeightScheme::ntk(1.0, 1.0, 1.0));
    std::int64_t p = ntk.sphere_block_size(4);
    SplitMix64 rng(13);
    Vec x = random_unit(rng), y = random_unit(rng);
    double t = x.dot(y);
    double mu = 4.0 * M_PI;
    double manual = (1.0 / mu) * (1.0 * legendre(3, 0, t) + 3.0 * legendre(3, 1, t) +
                                  (5.0 / 8.0) * legendre(3, 2, t) +
                                  (9.0 / std::pow(4.0, 3)) * legendre(3, 4, t));
    CHECK(kernel_truncated(ntk, p, x, y) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("real spherical harmonics: base cases, parity, addition formula") {
    SplitMix64 rng(19);
    Vec x = random_unit(rng);
    CHECK(real_harmonic_d3(0, 1, x) == doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)));
    for (int l = 0; l <= 5; ++l) {
        Vec y = random_unit(rng);
        double sign = l % 2 == 0 ? 1.0 : -1.0;
        for (int m = 1; m <= 2 * l + 1; ++m)
            CHECK(real_harmonic_d3(l, m, Vec(-y)) ==
                  doctest::Approx(sign * real_harmonic_d3(l, m, y)).epsilon(1e-11));
    }
    for (int l = 0; l <= 6; ++l) {
        Vec a = random_unit(rng), b = random_unit(rng);
        double acc = 0;
        for (int m = 1; m <= 2 * l + 1; ++m)
            acc += real_harmonic_d3(l, m, a) * real_harmonic_d3(l, m, b);
        double expect = (2.0 * l + 1.0) / (4.0 * M_PI) * legendre(3, l, a.dot(b));
        CHECK(acc == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("Monte Carlo orthonormality of the d=3 harmonics") {
    SplitMix64 rng(23);
    const int N = 100000;
    // a few (l,m) pairs; inner products within 3 standard errors
    int pairs[][4] = {{2, 3, 2, 3}, {2, 3, 3, 1}, {1, 2, 1, 2}, {3, 5, 3, 5}, {4, 2, 2, 5}};
    for (auto& q : pairs) {
        double acc = 0, acc2 = 0;
        for (int i = 0; i < N; ++i) {
            Vec x = random_unit(rng);
            double v = real_harmonic_d3(q[0], q[1], x) * real_harmonic_d3(q[2], q[3], x) *
                       (4.0 * M_PI); // area factor: mean over sphere times mu
            acc += v;
            acc2 += v * v;
        }
        double mean = acc / N;
        double se = std::sqrt(std::max(0.0, acc2 / N - mean * mean) / N);
        double expect = (q[0] == q[2] && q[1] == q[3]) ? 1.0 : 0.0;
        CHECK(std::abs(mean - expect) <= 3.0 * se + 1e-4);
    }
}

TEST_CASE("eval_basis on the sphere matches the explicit harmonics") {
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(2.0));
    auto e = enumerate_basis(spec, 9);
    SplitMix64 rng(29);
    Vec x = random_unit(rng);
    for (auto& idx : e)
        CHECK(eval_basis(spec, idx, x) ==
              doctest::Approx(real_harmonic_d3(idx.sphere().degree, idx.sphere().order, x)));
}

TEST_CASE("symmetric point counting") {
    std::vector<Vec> a{v3(1, 0, 0), v3(0, 1, 0)};
    CHECK(count_symmetric_points(a) == 0);
    std::vector<Vec> b{v3(1, 0, 0), v3(-1, 0, 0)};
    CHECK(count_symmetric_points(b) == 1);
    SamplingPlan plan{Domain::sphere(3), GeneratorKind::Fibonacci, 20, 0, 0, 0};
    CHECK(count_symmetric_points(generate(plan)) == 0);
}

TEST_CASE("NTK Gram on a fully symmetric set is singular with an odd null vector") {
    BasisSpec ntk(Domain::sphere(3), WeightScheme::ntk());
    SamplingPlan plan{Domain::sphere(3), GeneratorKind::SymmetricAugment, 14, 99, 0, 7};
    auto pts = generate(plan);
    REQUIRE(count_symmetric_points(pts) == 7);
    const std::int64_t n = 14;
    Mat K(n, n);
    std::int64_t p = ntk.reference_truncation();
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            K(i, j) = kernel_truncated(ntk, p, pts[std::size_t(i)], pts[std::size_t(j)]);
    Eigen::SelfAdjointEigenSolver<Mat> es(K);
    double lmin = es.eigenvalues().minCoeff();
    CHECK(lmin <= 1e-8 * K.trace());
    Vec u = es.eigenvectors().col(0);
    for (int i = 0; i < 7; ++i) CHECK(std::abs(u[i] + u[i + 7]) <= 1e-6);
}

TEST_CASE("sphere-power kernel is strictly positive definite on generic sets") {
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(2.0));
    SamplingPlan plan{Domain::sphere(3), GeneratorKind::UniformRandom, 15, 7, 0, 0};
    auto pts = generate(plan);
    const std::int64_t n = 15;
    Mat K(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            K(i, j) = kernel_truncated(spec, spec.reference_truncation(), pts[std::size_t(i)],
                                       pts[std::size_t(j)]);
    Eigen::SelfAdjointEigenSolver<Mat> es(K);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("sphere point construction") {
    Vec x = sphere_normalize(v3(3, 4, 0));
    CHECK(x.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(sphere_normalize(v3(0, 0, 0)), std::invalid_argument);
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(2.0));
    auto e = enumerate_basis(spec, 1);
    CHECK_THROWS_AS(eval_basis(spec, e[0], v3(2, 0, 0)), std::invalid_argument);
}

TEST_CASE("kernel diagonal equals the weighted dimension sum") {
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(2.0));
    Vec x = sphere_normalize(v3(0.3, -0.5, 0.81));
    int L = spec.sphere_max_degree(spec.aligned_truncation(100));
    double expect = 0;
    for (int l = 0; l <= L; ++l)
        expect += double(sphere_degree_dimension(3, l)) /
                  spec.weights().sphere_weight(l, 3) / (4.0 * M_PI);
    CHECK(kernel_truncated(spec, spec.sphere_block_size(L), x, x) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("incompatible weights reject the kernel-limit surrogate") {
    BasisSpec spec(Domain::sphere(3), WeightScheme::sphere_power(0.5)); // 2s <= d-1
    CHECK(!spec.compatible());
    CHECK_THROWS_AS(spec.reference_truncation(), std::invalid_argument);
    CHECK_THROWS_AS(tail_bound(spec, 9), std::invalid_argument);
    // finite truncations still evaluate
    Vec x = v3(1, 0, 0), y = v3(0, 1, 0);
    CHECK(std::isfinite(kernel_truncated(spec, 9, x, y)));
}
