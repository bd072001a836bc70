// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero on any failure.

#include "minnorm/basis.hpp"
#include "minnorm/error_metrics.hpp"
#include "minnorm/experiments.hpp"
#include "minnorm/interpolate.hpp"
#include "minnorm/sampling.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/targets.hpp"
#include "minnorm/torus.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

using namespace minnorm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s (%6.1fs) %s\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), seconds, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run_criterion(int number, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(number, name, pass, secs, detail);
}

void parallel_for(int count, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::thread t(worker);
    worker();
    t.join();
}

Vec v1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}

SampleSet sampled(const BasisSpec& spec, std::int64_t n, std::uint64_t seed,
                  const std::function<double(const Vec&)>& f) {
    SamplingPlan plan{spec.domain(), GeneratorKind::UniformRandom, n, seed, 0, 0};
    auto pts = generate(plan);
    Vec y(n);
    for (std::int64_t j = 0; j < n; ++j) y[j] = f(pts[std::size_t(j)]);
    return SampleSet(spec.domain(), pts, y);
}

SampleSet random_values(const BasisSpec& spec, std::int64_t n, std::uint64_t seed) {
    SamplingPlan plan{spec.domain(), GeneratorKind::UniformRandom, n, seed, 0, 0};
    auto pts = generate(plan);
    SplitMix64 rng(seed ^ 0x5bd1e995);
    Vec y(n);
    for (std::int64_t j = 0; j < n; ++j) y[j] = 2.0 * rng.uniform01() - 1.0;
    return SampleSet(spec.domain(), pts, y);
}

// Random draws from the quasi-uniform ensemble: redraw (deterministically)
// until the separation radius clears a floor, so near-coincident points do
// not push the kernel weights past what doubles can represent.
SampleSet separated_random_values(const BasisSpec& spec, std::int64_t n, std::uint64_t seed) {
    const int d_eff = spec.domain().is_sphere() ? spec.domain().dim - 1 : spec.domain().dim;
    const double floor = 0.45 * std::pow(double(n), -2.0 / d_eff);
    for (std::uint64_t k = 0;; ++k) {
        SampleSet X = random_values(spec, n, seed + 100003 * k);
        if (X.separation() >= floor) return X;
    }
}

// --- criterion 1 -----------------------------------------------------------

std::pair<bool, std::string> criterion1() {
    // Exactness is checked on families whose Gram systems stay representable
    // in doubles at n <= 40 random points: lambda_min scales like
    // q_X^{2s-1}, so very smooth weights (s >= 2 in d=1) put the kernel
    // weights c beyond 1/eps and no evaluation can return 1e-8 residuals.
    std::vector<BasisSpec> specs{
        BasisSpec(Domain::torus(1), WeightScheme::isotropic_sobolev(1.0)),
        BasisSpec(Domain::torus(1), WeightScheme::isotropic_sobolev(1.1)),
        BasisSpec(Domain::torus(2), WeightScheme::isotropic_sobolev(2.0)),
        BasisSpec(Domain::torus(2), WeightScheme::mixed_sobolev(1.0)),
        BasisSpec(Domain::sphere(3), WeightScheme::sphere_power(2.0)),
    };
    std::atomic<int> bad{0};
    std::vector<double> worst(200, 0.0);
    parallel_for(200, [&](int i) {
        const BasisSpec& spec = specs[std::size_t(i) % specs.size()];
        std::int64_t n = 5 + (i * 7) % 36; // n in 5..40
        SampleSet X = separated_random_values(spec, n, 9000 + std::uint64_t(i));
        std::int64_t p;
        if (spec.domain().is_torus()) {
            p = spec.aligned_truncation(4 * n + 5);
        } else {
            int L = 2;
            while (spec.sphere_block_size(L) < n + 3) ++L;
            p = spec.sphere_block_size(L);
        }
        try {
            auto f = min_norm_interpolant(spec, X, p, SolveOptions{tol::cond_max, false});
            double resid = interpolation_residual(f, X);
            worst[std::size_t(i)] = resid;
            if (resid > tol::interp_tol(X.values().lpNorm<Eigen::Infinity>())) bad.fetch_add(1);
        } catch (const std::exception&) {
            bad.fetch_add(1);
        }
    });
    double w = *std::max_element(worst.begin(), worst.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "200 instances, failures=%d, worst residual=%.2e",
                  bad.load(), w);
    return {bad.load() == 0, buf};
}

// --- criterion 2 -----------------------------------------------------------

std::pair<bool, std::string> criterion2() {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(1.0));
    auto target = make_target("analytic", Domain::torus(1));
    std::vector<double> sup(50, 0.0);
    std::atomic<int> bad{0};
    parallel_for(50, [&](int trial) {
        std::int64_t n = 5 + (trial % 16); // n in 5..20
        SampleSet X = sampled(spec, n, 1000 + std::uint64_t(trial), target.f);
        auto f = kernel_interpolant(spec, X);
        const auto& pts = X.points();
        Mat G(n, n);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j)
                G(i, j) = green_kernel_1d(pts[std::size_t(i)][0] - pts[std::size_t(j)][0]);
        Vec c = G.ldlt().solve(X.values());
        std::vector<Vec> probes;
        for (int i = 0; i < 65; ++i) probes.push_back(v1((i + 0.31) / 65.0));
        Vec fs = f.eval_many(probes);
        double maxdiff = 0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            double fg = 0;
            for (std::int64_t k = 0; k < n; ++k)
                fg += c[k] * green_kernel_1d(probes[i][0] - pts[std::size_t(k)][0]);
            maxdiff = std::max(maxdiff, std::abs(fs[std::int64_t(i)] - fg));
        }
        sup[std::size_t(trial)] = maxdiff;
        if (maxdiff > 1e-6) bad.fetch_add(1);
    });
    double w = *std::max_element(sup.begin(), sup.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "50 sets, worst sup-grid gap=%.2e (tol 1e-6)", w);
    return {bad.load() == 0, buf};
}

// --- criterion 3 -----------------------------------------------------------

std::pair<bool, std::string> criterion3() {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0));
    auto target = make_target("analytic", Domain::torus(1));
    SampleSet X = sampled(spec, 10, 4242, target.f);
    auto fref = kernel_interpolant(spec, X);
    std::vector<Vec> grid;
    for (int i = 0; i < 2048; ++i) grid.push_back(v1(i / 2048.0));
    Vec ref = fref.eval_many(grid);
    Vec tv(2048);
    for (int i = 0; i < 2048; ++i) tv[i] = target.f(grid[std::size_t(i)]);
    double ref_einf = (ref - tv).lpNorm<Eigen::Infinity>();

    bool dec_sup = true, dec_err = true;
    double prev_sup = 1e300, prev_err_gap = 1e300, final_sup = 0;
    std::ostringstream traj;
    for (std::int64_t p : {32, 64, 128, 256}) {
        auto f = min_norm_interpolant(spec, X, p);
        Vec fv = f.eval_many(grid);
        double sup = (fv - ref).lpNorm<Eigen::Infinity>();
        double err_gap = std::abs((fv - tv).lpNorm<Eigen::Infinity>() - ref_einf);
        dec_sup = dec_sup && sup < prev_sup;
        dec_err = dec_err && err_gap < prev_err_gap + 1e-15;
        prev_sup = sup;
        prev_err_gap = err_gap;
        final_sup = sup;
        traj << " " << csv_num(sup);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "sup gaps:%s; final=%.2e (tol 1e-4)", traj.str().c_str(),
                  final_sup);
    return {dec_sup && dec_err && final_sup <= 1e-4, buf};
}

// --- criterion 4 -----------------------------------------------------------

std::pair<bool, std::string> criterion4() {
    std::vector<BasisSpec> specs{
        BasisSpec(Domain::torus(1), WeightScheme::isotropic_sobolev(1.0)),
        BasisSpec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0)),
        BasisSpec(Domain::torus(2), WeightScheme::isotropic_sobolev(2.0)),
        BasisSpec(Domain::sphere(3), WeightScheme::sphere_power(2.0)),
    };
    std::atomic<int> bad{0};
    std::vector<double> margins(50, 1e300);
    parallel_for(50, [&](int i) {
        const BasisSpec& spec = specs[std::size_t(i) % specs.size()];
        std::int64_t n = 4 + (i % 12);
        SampleSet X = random_values(spec, n, 7000 + std::uint64_t(i));
        auto gref = GramSystem::assemble(spec, X, spec.reference_truncation());
        double lref = gref.lambda_min();
        std::vector<std::int64_t> ps;
        if (spec.domain().is_torus())
            ps = {spec.aligned_truncation(2 * n + 1), spec.aligned_truncation(4 * n + 1),
                  spec.aligned_truncation(8 * n + 1)};
        else {
            int L = 2;
            while (spec.sphere_block_size(L) < 2 * n) ++L;
            ps = {spec.sphere_block_size(L), spec.sphere_block_size(L + 2),
                  spec.sphere_block_size(L + 4)};
        }
        for (std::int64_t p : ps) {
            auto gp = GramSystem::assemble(spec, X, p);
            double margin =
                gp.lambda_min() - (lref - double(n) * tail_bound(spec, p)) + 1e-13;
            margins[std::size_t(i)] = std::min(margins[std::size_t(i)], margin);
            if (margin < 0) bad.fetch_add(1);
        }
    });
    double worst = *std::min_element(margins.begin(), margins.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "50 instances x 3 p, worst margin=%.2e", worst);
    return {bad.load() == 0, buf};
}

// --- criterion 5 -----------------------------------------------------------

std::pair<bool, std::string> criterion5() {
    std::atomic<int> bad{0};
    std::vector<double> min_rel(50, 1e300);
    parallel_for(50, [&](int i) {
        double s = 1.0 + (i % 3);
        BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(s));
        std::int64_t n = 4 + (i % 5);
        std::int64_t p = spec.aligned_truncation(3 * n + 7 + 2 * (i % 6));
        SampleSet X = random_values(spec, n, 3000 + std::uint64_t(i));
        auto f = min_norm_interpolant(spec, X, p);
        Vec ghat = f.coefficients();
        auto gram = GramSystem::assemble(spec, X, p);
        const Mat& A = gram.design_matrix();
        Vec w = gram.weight_reciprocals().cwiseInverse();
        double base = ghat.dot(w.asDiagonal() * ghat);
        Eigen::JacobiSVD<Mat> svd(A.transpose(), Eigen::ComputeFullV);
        SplitMix64 rng(4000 + std::uint64_t(i));
        for (int k = 0; k < 20; ++k) {
            Vec z = Vec::Zero(p);
            for (std::int64_t j = n; j < p; ++j)
                z += (2 * rng.uniform01() - 1) * svd.matrixV().col(j);
            if (z.norm() < 1e-14) continue;
            Vec pert = ghat + z;
            double val = pert.dot(w.asDiagonal() * pert);
            double rel = (val - base) / base;
            min_rel[std::size_t(i)] = std::min(min_rel[std::size_t(i)], rel);
            if (rel <= 1e-10) bad.fetch_add(1);
        }
    });
    double worst = *std::min_element(min_rel.begin(), min_rel.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "50x20 perturbations, min relative excess=%.2e", worst);
    return {bad.load() == 0, buf};
}

// --- criterion 6 -----------------------------------------------------------

std::pair<bool, std::string> criterion6() {
    std::atomic<int> bad{0};
    std::vector<double> worst(100, 0.0);
    parallel_for(100, [&](int i) {
        double s = 1.0 + (i % 2); // the identity is weight-agnostic; large s
                                  // only stresses the squared conditioning
        BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(s));
        std::int64_t n = 6 + (i % 15);            // n in 6..20
        std::int64_t p = spec.aligned_truncation(1 + 2 * (1 + (i % 3)) + (i % 2) * 2);
        p = std::min<std::int64_t>(p, n);
        // jittered lattice nodes keep the two routes within double-precision
        // reach of each other even for square (p = n) instances
        SplitMix64 jrng(5000 + std::uint64_t(i));
        std::vector<Vec> pts;
        Vec y(n);
        for (std::int64_t j = 0; j < n; ++j) {
            Vec v(1);
            v[0] = torus_wrap((double(j) + 0.35 * (2 * jrng.uniform01() - 1)) / double(n));
            pts.push_back(v);
            y[j] = 2.0 * jrng.uniform01() - 1.0;
        }
        SampleSet X(spec.domain(), pts, y);
        auto a = least_squares_fit(spec, X, p);
        auto b = least_squares_kernel_form(spec, X, p);
        std::vector<Vec> probes;
        for (int q = 0; q < 25; ++q) probes.push_back(v1((q + 0.21) / 25.0));
        Vec av = a.eval_many(probes), bv = b.eval_many(probes);
        double d = (av - bv).lpNorm<Eigen::Infinity>();
        worst[std::size_t(i)] = d;
        if (d > 1e-8) bad.fetch_add(1);
    });
    double w = *std::max_element(worst.begin(), worst.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "100 instances, worst route gap=%.2e (tol 1e-8)", w);
    return {bad.load() == 0, buf};
}

// --- criteria 7 and 8 ------------------------------------------------------

double rate_einf(const BasisSpec& spec, const Target& target, int per_axis, int grid_m) {
    const int d = spec.domain().dim;
    std::int64_t n = 1;
    for (int j = 0; j < d; ++j) n *= per_axis;
    SamplingPlan plan{spec.domain(), GeneratorKind::Equispaced, n, 0, per_axis, 0};
    auto pts = generate(plan);
    Vec y(n);
    for (std::int64_t j = 0; j < n; ++j) y[j] = target.f(pts[std::size_t(j)]);
    SampleSet X(spec.domain(), pts, y);
    auto f = kernel_interpolant(spec, X);
    std::int64_t total = 1;
    for (int j = 0; j < d; ++j) total *= grid_m;
    std::vector<Vec> grid;
    grid.reserve(std::size_t(total));
    for (std::int64_t i = 0; i < total; ++i) {
        Vec p(d);
        std::int64_t r = i;
        for (int j = 0; j < d; ++j) {
            p[j] = (double(r % grid_m) + 0.37) / double(grid_m);
            r /= grid_m;
        }
        grid.push_back(std::move(p));
    }
    Vec fv = f.eval_many(grid);
    double einf = 0;
    for (std::int64_t i = 0; i < total; ++i)
        einf = std::max(einf, std::abs(fv[i] - target.f(grid[std::size_t(i)])));
    return einf;
}

std::pair<bool, std::string> criterion7() {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0));
    auto target = make_target("sobolev-boundary", Domain::torus(1), 2.0);
    std::vector<double> hs, es;
    for (int n : {8, 16, 32, 64, 128}) {
        hs.push_back(0.5 / n); // equispaced torus mesh norm
        es.push_back(rate_einf(spec, target, n, 4096));
    }
    auto fit = fit_loglog_slope(hs, es);
    // info: an analytic target superconverges on equispaced sets
    auto analytic = make_target("analytic", Domain::torus(1));
    std::vector<double> ea;
    for (int n : {8, 16, 32, 64, 128}) ea.push_back(rate_einf(spec, analytic, n, 4096));
    auto fita = fit_loglog_slope(hs, ea);
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "slope=%.3f (window [1.0, 2.2]); analytic target slope=%.2f (info)",
                  fit.slope, fita.slope);
    return {fit.slope >= 1.0 && fit.slope <= 2.2, buf};
}

std::pair<bool, std::string> criterion8() {
    BasisSpec spec(Domain::torus(2), WeightScheme::mixed_sobolev(1.0));
    auto target = make_target("analytic-2d", Domain::torus(2));
    std::vector<double> hs, es;
    for (int g : {4, 6, 8, 12, 16, 24}) {
        hs.push_back(0.5 * std::sqrt(2.0) / g);
        es.push_back(rate_einf(spec, target, g, 192));
    }
    auto fit = fit_loglog_slope(hs, es);
    char buf[128];
    std::snprintf(buf, sizeof buf, "slope=%.3f (window [1.3, 2.7])", fit.slope);
    return {fit.slope >= 1.3 && fit.slope <= 2.7, buf};
}

// --- criterion 9 -----------------------------------------------------------

std::pair<bool, std::string> criterion9() {
    ExperimentConfig cfg;
    cfg.experiment = "runge-sweep";
    cfg.n = 35;
    cfg.realizations = 100;
    cfg.seed = 20240229;
    cfg.s_list = {0, 1, 2, 3, 4};
    cfg.p_max = 4097;
    auto dir = std::filesystem::temp_directory_path() / "minnorm-acceptance-runge";
    std::filesystem::create_directories(dir);
    auto res = run_runge_sweep(cfg, dir.string());
    if (res.exit_code != 0) return {false, "sweep failed: " + res.message};

    // parse the aggregate CSV
    std::ifstream in(dir / ("runge-sweep-" + cfg.hash() + "-aggregate.csv"));
    if (!in) return {false, "aggregate CSV missing"};
    std::string line;
    std::getline(in, line); // header
    std::map<double, std::map<std::int64_t, double>> einf; // s -> p -> Einf
    std::map<double, std::map<std::int64_t, std::string>> regime;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 15) continue;
        double s = std::stod(cells[5]);
        std::int64_t p = std::stoll(cells[6]);
        if (!cells[10].empty()) einf[s][p] = std::stod(cells[10]);
        regime[s][p] = cells[7];
    }

    // (a) LS branch: interior minimum at p < n; window max >= 5x that minimum
    const auto& ls = einf.begin()->second; // any s shares the LS branch
    double ls_min = 1e300;
    std::int64_t ls_argmin = 0;
    for (const auto& [p, e] : ls) {
        if (p > 35) break;
        if (e < ls_min) {
            ls_min = e;
            ls_argmin = p;
        }
    }
    double window_max = 0;
    for (const auto& [p, e] : ls)
        if (p >= 28 && p <= 42) window_max = std::max(window_max, e);
    bool a_interior = ls_argmin > 1 && ls_argmin < 35;
    bool a_peak = window_max >= 5.0 * ls_min;

    // (b) s in {3,4}: plateau below the best LS error
    auto plateau = [&](double s) {
        const auto& m = einf.at(s);
        return m.rbegin()->second; // largest swept p
    };
    bool b_ok = plateau(3) < ls_min && plateau(4) < ls_min;

    // (c) s=0 plateau at least 10x the s=3 plateau
    bool c_ok = plateau(0) >= 10.0 * plateau(3);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "LS min=%.3e at p=%lld, window max=%.3e (x%.1f); plateaus s0=%.3e s3=%.3e "
                  "s4=%.3e",
                  ls_min, static_cast<long long>(ls_argmin), window_max, window_max / ls_min,
                  plateau(0), plateau(3), plateau(4));
    return {a_interior && a_peak && b_ok && c_ok, buf};
}

// --- criterion 10 ----------------------------------------------------------

std::pair<bool, std::string> criterion10() {
    BasisSpec ntk(Domain::sphere(3), WeightScheme::ntk());
    // (a) fully symmetric, 2n = 14 > 2d = 6
    SamplingPlan sym{Domain::sphere(3), GeneratorKind::SymmetricAugment, 14, 77, 0, 7};
    auto spts = generate(sym);
    SampleSet Xs(Domain::sphere(3), spts, Vec::Zero(14));
    auto gram = GramSystem::assemble(ntk, Xs, ntk.reference_truncation());
    Eigen::SelfAdjointEigenSolver<Mat> es(gram.kernel_matrix());
    double ratio = es.eigenvalues().minCoeff() / gram.kernel_matrix().trace();
    Vec u = es.eigenvectors().col(0);
    double odd_err = 0;
    for (int i = 0; i < 7; ++i) odd_err = std::max(odd_err, std::abs(u[i] + u[i + 7]));
    // (b) 20 points with 3 symmetric pairs: interpolation succeeds
    SamplingPlan plan{Domain::sphere(3), GeneratorKind::SymmetricAugment, 20, 78, 0, 3};
    auto pts = generate(plan);
    SplitMix64 rng(1234);
    Vec y(20);
    for (int j = 0; j < 20; ++j) y[j] = 2.0 * rng.uniform01() - 1.0;
    SampleSet Xb(Domain::sphere(3), pts, y);
    auto f = kernel_interpolant(ntk, Xb);
    double resid = interpolation_residual(f, Xb);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "lambda_min/trace=%.2e (tol 1e-8), odd err=%.2e (tol 1e-6), resid=%.2e "
                  "(tol 1e-8)",
                  ratio, odd_err, resid);
    return {ratio <= 1e-8 && odd_err <= 1e-6 && resid <= 1e-8, buf};
}

// --- criterion 11 ----------------------------------------------------------

std::pair<bool, std::string> criterion11() {
    BasisSpec spec(Domain::torus(1), WeightScheme::isotropic_sobolev(2.0));
    auto target = make_target("decaying-coeff", Domain::torus(1));
    SampleSet X = sampled(spec, 8, 31415, target.f);
    const Vec& fc = *target.coefficients;
    double tols[] = {1e-2, 1e-3, 1e-4};
    std::int64_t plist[] = {64, 128, 256};
    bool ok = true;
    std::ostringstream detail;
    for (int i = 0; i < 3; ++i) {
        std::int64_t p = spec.aligned_truncation(plist[i]);
        auto g = near_optimal_interpolant(spec, X, target.as_coefficient_target(), p);
        double tail2 = 0;
        for (std::int64_t j = p; j < fc.size(); ++j) tail2 += fc[j] * fc[j];
        double head2 = 0;
        const Vec& gc = g.coefficients();
        for (std::int64_t j = 0; j < p; ++j) {
            double fj = j < fc.size() ? fc[j] : 0.0;
            head2 += (fj - gc[j]) * (fj - gc[j]);
        }
        double gap = std::sqrt(head2 + tail2) - std::sqrt(tail2);
        double resid = interpolation_residual(g, X);
        ok = ok && gap <= tols[i] &&
             resid <= tol::interp_tol(X.values().lpNorm<Eigen::Infinity>());
        detail << " p=" << p << " gap=" << csv_num(gap);
    }
    return {ok, detail.str() + " (tols 1e-2, 1e-3, 1e-4)"};
}

// --- criterion 12 ----------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<bool, std::string> criterion12() {
#ifndef MINNORM_CLI_PATH
    return {false, "CLI path not configured"};
#else
    namespace fs = std::filesystem;
    auto base = fs::temp_directory_path() / "minnorm-acceptance-determinism";
    fs::remove_all(base);
    fs::create_directories(base / "a");
    fs::create_directories(base / "b");
    std::string cfgpath = (base / "sweep.config").string();
    {
        std::ofstream cfg(cfgpath);
        cfg << "experiment = runge-sweep\nn = 8\nrealizations = 2\np_max = 65\n"
               "s_list = 0,2\nseed = 99\n";
    }
    auto run = [&](const std::string& sub) {
        std::string cmd = std::string(MINNORM_CLI_PATH) + " runge-sweep --config " + cfgpath +
                          " --out " + (base / sub).string() + " --quiet";
        return std::system(cmd.c_str());
    };
    if (run("a") != 0 || run("b") != 0) return {false, "CLI run failed"};
    // compare every CSV byte for byte
    bool same = true;
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
        if (entry.path().extension() != ".csv") continue;
        auto other = base / "b" / entry.path().filename();
        same = same && fs::exists(other) && slurp(entry.path().string()) == slurp(other.string());
        ++compared;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d CSV files byte-identical across reruns: %s", compared,
                  same ? "yes" : "NO");
    return {same && compared > 0, buf};
#endif
}

} // namespace

int main() {
    std::printf("acceptance suite (%s)\n", BasisSpec(Domain::torus(1),
                                                     WeightScheme::isotropic_sobolev(2.0))
                                               .describe()
                                               .c_str());
    run_criterion(1, "interpolation exactness", criterion1);
    run_criterion(2, "oracle equivalence", criterion2);
    run_criterion(3, "convergence to reference", criterion3);
    run_criterion(4, "eigenvalue tail bound", criterion4);
    run_criterion(5, "weighted-norm minimality", criterion5);
    run_criterion(6, "least-squares identity", criterion6);
    run_criterion(7, "isotropic rate", criterion7);
    run_criterion(8, "mixed rate", criterion8);
    run_criterion(9, "double descent", criterion9);
    run_criterion(10, "NTK spectrum", criterion10);
    run_criterion(11, "near-optimal interpolant", criterion11);
    run_criterion(12, "CLI determinism", criterion12);
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
