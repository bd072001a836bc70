#include "minnorm/error_metrics.hpp"
#include <map>

#include "minnorm/sampling.hpp"
#include "minnorm/torus.hpp"

#include <algorithm>
#include <cmath>

namespace minnorm {

namespace {

std::vector<Vec> torus_grid_points(int d, int m) {
    std::int64_t total = 1;
    for (int j = 0; j < d; ++j) total *= m;
    if (total > (std::int64_t{1} << 24))
        throw std::invalid_argument("error_q: torus grid exceeds the resolution budget");
    std::vector<Vec> pts;
    pts.reserve(std::size_t(total));
    for (std::int64_t i = 0; i < total; ++i) {
        Vec p(d);
        std::int64_t r = i;
        for (int j = 0; j < d; ++j) {
            p[j] = double(r % m) / double(m);
            r /= m;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

int auto_torus_grid(int d, int requested) {
    if (requested > 0) return requested;
    return d == 1 ? 2048 : 256;
}

// Per-row grid for sweep rows: at least 8 points per period of the largest
// active frequency so band-limited oscillation cannot hide between samples.
int sweep_torus_grid(int d, int requested, std::int64_t max_freq) {
    if (requested > 0) return requested;
    std::int64_t want = std::max<std::int64_t>(512, 8 * max_freq);
    std::int64_t cap = d == 1 ? 16384 : 256;
    std::int64_t m = 512;
    while (m < want && m < cap) m *= 2;
    return int(std::min(m, cap));
}

double norm_of_diff(std::span<const double> fv, std::span<const double> gv, ErrorNorm q,
                    double w) {
    double acc = 0.0;
    switch (q) {
    case ErrorNorm::L1:
        for (std::size_t i = 0; i < fv.size(); ++i) acc += std::abs(fv[i] - gv[i]);
        return acc * w;
    case ErrorNorm::L2:
        for (std::size_t i = 0; i < fv.size(); ++i) {
            double dlt = fv[i] - gv[i];
            acc += dlt * dlt;
        }
        return std::sqrt(acc * w);
    case ErrorNorm::LInf:
        for (std::size_t i = 0; i < fv.size(); ++i)
            acc = std::max(acc, std::abs(fv[i] - gv[i]));
        return acc;
    }
    return 0.0;
}

std::vector<Vec> sphere_mc_points(int d, std::int64_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Vec> pts;
    pts.reserve(std::size_t(n));
    while (std::int64_t(pts.size()) < n) {
        Vec p(d);
        for (int j = 0; j < d; ++j) p[j] = rng.normal();
        double norm = p.norm();
        if (norm < 1e-8) continue;
        pts.push_back(p / norm);
    }
    return pts;
}

} // namespace

ErrorEstimate error_q(const RealFn& f, const RealFn& g, ErrorNorm q, const Domain& domain,
                      const ErrorResolution& res) {
    if (domain.is_torus()) {
        int m = auto_torus_grid(domain.dim, res.torus_grid);
        auto pts = torus_grid_points(domain.dim, m);
        std::vector<double> fv(pts.size()), gv(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            fv[i] = f(pts[i]);
            gv[i] = g(pts[i]);
        }
        double w = 1.0 / double(pts.size());
        return {norm_of_diff(fv, gv, q, w), 0.0};
    }
    if (q == ErrorNorm::LInf) {
        if (domain.dim != 3)
            throw std::invalid_argument("sphere sup-norm probe is implemented for d=3");
        SamplingPlan probe{domain, GeneratorKind::Fibonacci, res.sphere_probe, 0, 0, 0};
        auto pts = generate(probe);
        double acc = 0.0;
        for (const auto& p : pts) acc = std::max(acc, std::abs(f(p) - g(p)));
        return {acc, 0.0};
    }
    if (res.sphere_mc > (std::int64_t{1} << 24))
        throw std::invalid_argument("error_q: Monte Carlo budget exceeded");
    auto pts = sphere_mc_points(domain.dim, res.sphere_mc, res.mc_seed);
    // normalized surface measure: plain Monte Carlo average
    double acc = 0.0, acc2 = 0.0;
    for (const auto& p : pts) {
        double d0 = std::abs(f(p) - g(p));
        double v = q == ErrorNorm::L1 ? d0 : d0 * d0;
        acc += v;
        acc2 += v * v;
    }
    double n = double(pts.size());
    double mean = acc / n;
    double var = std::max(0.0, acc2 / n - mean * mean);
    double se_mean = std::sqrt(var / n);
    if (q == ErrorNorm::L1) return {mean, se_mean};
    double val = std::sqrt(mean);
    double se = val > 0 ? se_mean / (2.0 * val) : se_mean; // delta method
    return {val, se};
}

std::vector<std::int64_t> default_p_list(const BasisSpec& spec, std::int64_t n,
                                         std::int64_t p_max) {
    std::vector<std::int64_t> ps;
    // sweeps may pass the reference truncation (f_p ~ f_infinity there); only
    // the hard table cap bounds the list
    std::int64_t cap = std::min(p_max, spec.truncation_limit());
    std::int64_t p = 1;
    while (p <= std::min(4 * n, cap)) {
        std::int64_t a = spec.aligned_truncation(p);
        if (ps.empty() || ps.back() != a) ps.push_back(a);
        // advance past the current admissible point
        std::int64_t next = a + 1;
        while (spec.aligned_truncation(next) == a && next < cap) ++next;
        p = next;
        if (a >= cap) break;
    }
    while (!ps.empty() && ps.back() < cap) {
        std::int64_t next = spec.aligned_truncation(std::min(cap, ps.back() * 2));
        if (next <= ps.back()) break;
        ps.push_back(next);
    }
    return ps;
}

ErrorCurve sweep_errors(const BasisSpec& spec, const SampleSet& X, const RealFn& target,
                        std::span<const std::int64_t> p_list, const SweepOptions& opts) {
    for (std::size_t i = 1; i < p_list.size(); ++i)
        if (p_list[i] <= p_list[i - 1])
            throw std::invalid_argument("sweep_errors: p-list must be strictly increasing");
    ErrorCurve curve;
    curve.spec_desc = spec.describe();
    curve.n = X.size();
    if (opts.with_geometry) {
        curve.h_x = X.mesh_norm();
        curve.q_x = X.separation();
    }
    const int d = spec.domain().dim;
    const bool torus = spec.domain().is_torus();

    // evaluation grids (torus, per-row size, cached by m) or MC/probe sets
    struct GridData {
        std::vector<Vec> pts;
        std::vector<double> tv;
    };
    std::map<int, GridData> grids;
    auto torus_grid_for = [&](int m) -> const GridData& {
        auto it = grids.find(m);
        if (it == grids.end()) {
            GridData g;
            g.pts = torus_grid_points(d, m);
            g.tv.resize(g.pts.size());
            for (std::size_t i = 0; i < g.pts.size(); ++i) g.tv[i] = target(g.pts[i]);
            it = grids.emplace(m, std::move(g)).first;
        }
        return it->second;
    };
    std::vector<Vec> mc_pts, sup_pts;
    std::vector<double> mc_tv, sup_tv;
    if (!torus) {
        mc_pts = sphere_mc_points(d, opts.res.sphere_mc, opts.res.mc_seed);
        SamplingPlan probe{spec.domain(), GeneratorKind::Fibonacci, opts.res.sphere_probe, 0, 0,
                           0};
        sup_pts = generate(probe);
        mc_tv.resize(mc_pts.size());
        for (std::size_t i = 0; i < mc_pts.size(); ++i) mc_tv[i] = target(mc_pts[i]);
        sup_tv.resize(sup_pts.size());
        for (std::size_t i = 0; i < sup_pts.size(); ++i) sup_tv[i] = target(sup_pts[i]);
    }

    for (std::int64_t p : p_list) {
        ErrorRecord row;
        row.p = spec.aligned_truncation(p);
        row.degree = torus ? spec.torus_max_frequency(row.p) : spec.sphere_max_degree(row.p);
        row.regime = row.p <= X.size() ? "LS" : "MN";
        try {
            SolveInfo info;
            Interpolant f = row.p <= X.size()
                                ? least_squares_fit(spec, X, row.p, &info)
                                : min_norm_interpolant(spec, X, row.p, opts.solve, &info);
            row.cond_est = info.cond_estimate;
            if (info.used_pseudo) row.status = "ok-pinv";
            if (torus) {
                const auto& g = torus_grid_for(
                    sweep_torus_grid(d, opts.res.torus_grid, row.degree));
                Vec fv = f.eval_many(g.pts);
                std::span<const double> fvs(fv.data(), std::size_t(fv.size()));
                double w = 1.0 / double(g.pts.size());
                row.e1 = norm_of_diff(fvs, g.tv, ErrorNorm::L1, w);
                row.e2 = norm_of_diff(fvs, g.tv, ErrorNorm::L2, w);
                row.einf = norm_of_diff(fvs, g.tv, ErrorNorm::LInf, 0.0);
            } else {
                Vec fv = f.eval_many(mc_pts);
                std::span<const double> fvs(fv.data(), std::size_t(fv.size()));
                double w = 1.0 / double(mc_pts.size());
                row.e1 = norm_of_diff(fvs, mc_tv, ErrorNorm::L1, w);
                row.e2 = norm_of_diff(fvs, mc_tv, ErrorNorm::L2, w);
                Vec sv = f.eval_many(sup_pts);
                row.einf = norm_of_diff(std::span<const double>(sv.data(), std::size_t(sv.size())),
                                        sup_tv, ErrorNorm::LInf, 0.0);
            }
        } catch (const IllConditionedError& e) {
            row.cond_est = e.cond_estimate;
            row.status = "ill-conditioned";
            row.e1 = row.e2 = row.einf = std::numeric_limits<double>::quiet_NaN();
        } catch (const RankError&) {
            row.status = "rank-deficient";
            row.e1 = row.e2 = row.einf = std::numeric_limits<double>::quiet_NaN();
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

} // namespace minnorm
