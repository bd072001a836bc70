#include "minnorm/error_metrics.hpp"
#include "minnorm/sampling.hpp"
#include "minnorm/targets.hpp"

#include <doctest.h>

#include <cmath>

using namespace minnorm;

namespace {
Vec v1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}
} // namespace

TEST_CASE("error_q basics on the torus") {
    Domain dom = Domain::torus(1);
    RealFn f = [](const Vec& x) { return std::sqrt(2.0) * std::cos(2 * M_PI * x[0]); };
    RealFn zero = [](const Vec&) { return 0.0; };
    CHECK(error_q(f, f, ErrorNorm::L2, dom).value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(error_q(f, zero, ErrorNorm::L2, dom).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(error_q(f, zero, ErrorNorm::LInf, dom).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    double e1 = error_q(f, zero, ErrorNorm::L1, dom).value;
    CHECK(e1 == doctest::Approx(std::sqrt(2.0) * 2.0 / M_PI).epsilon(1e-4));
}

TEST_CASE("norm ordering E1 <= E2 <= Einf") {
    Domain dom = Domain::torus(1);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        double a = rng.uniform01(), b = rng.uniform01();
        RealFn f = [a](const Vec& x) { return std::sin(2 * M_PI * x[0]) + a; };
        RealFn g = [b](const Vec& x) { return b * std::cos(4 * M_PI * x[0]); };
        double e1 = error_q(f, g, ErrorNorm::L1, dom).value;
        double e2 = error_q(f, g, ErrorNorm::L2, dom).value;
        double ei = error_q(f, g, ErrorNorm::LInf, dom).value;
        CHECK(e1 <= e2 + 1e-12);
        CHECK(e2 <= ei + 1e-12);
    }
    // sphere: Monte Carlo for q <= 2 under the normalized measure
    Domain sph = Domain::sphere(3);
    RealFn f = [](const Vec& x) { return x[2]; };
    RealFn g = [](const Vec& x) { return 0.3 * x[0]; };
    ErrorResolution res;
    res.sphere_mc = 20000;
    double e1 = error_q(f, g, ErrorNorm::L1, sph, res).value;
    auto e2est = error_q(f, g, ErrorNorm::L2, sph, res);
    double ei = error_q(f, g, ErrorNorm::LInf, sph, res).value;
    CHECK(e1 <= e2est.value + 3 * e2est.std_error);
    CHECK(e2est.value <= ei + 1e-6);
    CHECK(e2est.std_error > 0.0);
}

TEST_CASE("quadrature sanity: orthonormal basis functions have unit L2 norm") {
    Domain dom = Domain::torus(1);
    RealFn zero = [](const Vec&) { return 0.0; };
    for (int k : {1, 3, 8}) {
        RealFn f = [k](const Vec& x) { return std::sqrt(2.0) * std::sin(2 * M_PI * k * x[0]); };
        CHECK(error_q(f, zero, ErrorNorm::L2, dom).value == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("refinement stability for band-limited pairs") {
    Domain dom = Domain::torus(1);
    RealFn f = [](const Vec& x) { return std::cos(2 * M_PI * 3 * x[0]); };
    RealFn g = [](const Vec& x) { return std::sin(2 * M_PI * 5 * x[0]) * 0.4; };
    ErrorResolution lo, hi;
    lo.torus_grid = 1024;
    hi.torus_grid = 2048;
    for (ErrorNorm q : {ErrorNorm::L1, ErrorNorm::L2, ErrorNorm::LInf}) {
        double a = error_q(f, g, q, dom, lo).value;
        double b = error_q(f, g, q, dom, hi).value;
        CHECK(std::abs(a - b) < 0.01 * std::max(a, b));
    }
}

TEST_CASE("sweep: regime rule, reference row, and failure markers") {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(3.0));
    auto target = make_target("analytic", Domain::torus(1));
    SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, 6, 9, 0, 0};
    auto pts = generate(plan);
    Vec y(6);
    for (int j = 0; j < 6; ++j) y[j] = target.f(pts[std::size_t(j)]);
    SampleSet X(Domain::torus(1), pts, y);

    std::vector<std::int64_t> plist{1, 3, 5, 9, 13, spec.reference_truncation()};
    SweepOptions opts;
    opts.res.torus_grid = 2048;
    ErrorCurve curve = sweep_errors(spec, X, target.f, plist, opts);
    REQUIRE(curve.rows.size() == plist.size());
    for (const auto& r : curve.rows) {
        CHECK(r.regime == (r.p <= 6 ? "LS" : "MN"));
        if (r.status.rfind("ok", 0) == 0) {
            CHECK(r.e1 <= r.e2 + 1e-12);
            CHECK(r.e2 <= r.einf + 1e-12);
        }
    }
    // the reference row reproduces the kernel interpolant's error
    auto fref = kernel_interpolant(spec, X);
    std::vector<Vec> grid;
    for (int i = 0; i < 2048; ++i) grid.push_back(v1(i / 2048.0));
    Vec fv = fref.eval_many(grid);
    double einf = 0;
    for (int i = 0; i < 2048; ++i)
        einf = std::max(einf, std::abs(fv[i] - target.f(grid[std::size_t(i)])));
    CHECK(curve.rows.back().einf == doctest::Approx(einf).epsilon(1e-9));

    // strict solving on a degenerate set yields failure-marked rows, not aborts
    std::vector<Vec> bad{v1(0.3), v1(0.3 + 1e-10), v1(0.8)};
    Vec yb(3);
    yb << 1, -1, 0;
    SampleSet Xbad(Domain::torus(1), bad, yb);
    SweepOptions strict;
    strict.solve = SolveOptions{1e8, true};
    std::vector<std::int64_t> small{9, 17};
    ErrorCurve cbad = sweep_errors(spec, Xbad, target.f, small, strict);
    bool any_fail = false;
    for (const auto& r : cbad.rows) any_fail = any_fail || r.status == "ill-conditioned";
    CHECK(any_fail);
    for (const auto& r : cbad.rows)
        if (r.status == "ill-conditioned") CHECK(std::isnan(r.einf));
}

TEST_CASE("errors along the p-list approach the reference error") {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0));
    auto target = make_target("runge", Domain::torus(1));
    SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, 10, 33, 0, 0};
    auto pts = generate(plan);
    Vec y(10);
    for (int j = 0; j < 10; ++j) y[j] = target.f(pts[std::size_t(j)]);
    SampleSet X(Domain::torus(1), pts, y);
    std::vector<std::int64_t> plist{33, 65, 129, 257, spec.reference_truncation()};
    SweepOptions opts;
    opts.res.torus_grid = 2048;
    ErrorCurve curve = sweep_errors(spec, X, target.f, plist, opts);
    double ref = curve.rows.back().einf;
    double first_gap = std::abs(curve.rows.front().einf - ref);
    double last_gap = std::abs(curve.rows[curve.rows.size() - 2].einf - ref);
    CHECK(last_gap < first_gap / 4.0);
    CHECK(last_gap < 1e-3); // rough data amplifies the tail through K_p^{-1}
}

TEST_CASE("default p-list policy") {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0));
    auto ps = default_p_list(spec, 10, 4097);
    REQUIRE(!ps.empty());
    CHECK(ps.front() == 1);
    for (std::size_t i = 1; i < ps.size(); ++i) {
        CHECK(ps[i] > ps[i - 1]);
        CHECK(spec.is_aligned(ps[i]));
    }
    CHECK(ps.back() <= std::min<std::int64_t>(4097, spec.truncation_limit()));
    bool has_4n = false;
    for (auto p : ps) has_4n = has_4n || (p >= 39 && p <= 41);
    CHECK(has_4n);
}

TEST_CASE("resolution budgets are enforced") {
    Domain dom2 = Domain::torus(2);
    RealFn zero = [](const Vec&) { return 0.0; };
    ErrorResolution res;
    res.torus_grid = 8192; // 8192^2 > 2^24
    CHECK_THROWS_AS(error_q(zero, zero, ErrorNorm::L2, dom2, res), std::invalid_argument);
    ErrorResolution res2;
    res2.sphere_mc = (std::int64_t{1} << 25);
    CHECK_THROWS_AS(error_q(zero, zero, ErrorNorm::L2, Domain::sphere(3), res2),
                    std::invalid_argument);
}
