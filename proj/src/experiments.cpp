#include "minnorm/experiments.hpp"

#include "minnorm/interpolate.hpp"
#include "minnorm/plot.hpp"
#include "minnorm/sphere.hpp"
#include "minnorm/targets.hpp"
#include "minnorm/torus.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <atomic>
#include <future>
#include <limits>
#include <thread>
#include <sstream>

namespace minnorm {

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T> std::string join(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, double>)
            out += fmt(xs[i]);
        else
            out += std::to_string(xs[i]);
    }
    return out;
}

} // namespace

std::string csv_num(double v) { return std::isnan(v) ? "" : fmt(v); }

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto to_i64 = [&] { return std::stoll(val); };
        auto to_int = [&] { return std::stoi(val); };
        auto to_f = [&] { return std::stod(val); };
        auto to_u64 = [&] { return std::stoull(val); };
        auto to_i64_list = [&] {
            std::vector<std::int64_t> out;
            for (auto& p : split(val, ',')) out.push_back(std::stoll(p));
            return out;
        };
        auto to_f_list = [&] {
            std::vector<double> out;
            for (auto& p : split(val, ',')) out.push_back(std::stod(p));
            return out;
        };
        if (key == "experiment") { c.experiment = val; c.experiment_explicit = true; }
        else if (key == "version") { /* informational, rewritten on serialize */ }
        else if (key == "domain") c.domain = val;
        else if (key == "dim") c.dim = to_int();
        else if (key == "weights") c.weights = val;
        else if (key == "s") c.s = to_f();
        else if (key == "s_list") c.s_list = to_f_list();
        else if (key == "sigma0") c.sigma0 = to_f();
        else if (key == "sigma1") c.sigma1 = to_f();
        else if (key == "cd") c.cd = to_f();
        else if (key == "n") c.n = to_i64();
        else if (key == "n_list") c.n_list = to_i64_list();
        else if (key == "realizations") c.realizations = to_int();
        else if (key == "seed") c.seed = to_u64();
        else if (key == "p_list") c.p_list = val.empty() ? std::vector<std::int64_t>{} : to_i64_list();
        else if (key == "p_max") c.p_max = to_i64();
        else if (key == "q_list") c.q_list = val;
        else if (key == "generator") c.generator = val;
        else if (key == "per_axis") c.per_axis = to_int();
        else if (key == "pairs") c.pairs = to_int();
        else if (key == "target") c.target = val;
        else if (key == "target_s") c.target_s = to_f();
        else if (key == "torus_grid") c.torus_grid = to_int();
        else if (key == "sphere_mc") c.sphere_mc = to_i64();
        else if (key == "sphere_probe") c.sphere_probe = to_i64();
        else if (key == "kernel_tol") c.kernel_tol = to_f();
        else if (key == "reference_cap") c.reference_cap = to_i64();
        else if (key == "cond_max") c.cond_max = to_f();
        else if (key == "quiet") c.quiet = to_int();
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    for (char ch : c.q_list)
        if (std::string("12,inf ").find(ch) == std::string::npos)
            throw std::invalid_argument("q_list must be a comma list over {1,2,inf}");
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream o;
    o << "version = " << kVersion << "\n";
    o << "experiment = " << experiment << "\n";
    o << "domain = " << domain << "\n";
    o << "dim = " << dim << "\n";
    o << "weights = " << weights << "\n";
    o << "s = " << fmt(s) << "\n";
    o << "s_list = " << join(s_list) << "\n";
    o << "sigma0 = " << fmt(sigma0) << "\n";
    o << "sigma1 = " << fmt(sigma1) << "\n";
    o << "cd = " << fmt(cd) << "\n";
    o << "n = " << n << "\n";
    o << "n_list = " << join(n_list) << "\n";
    o << "realizations = " << realizations << "\n";
    o << "seed = " << seed << "\n";
    o << "p_list = " << join(p_list) << "\n";
    o << "p_max = " << p_max << "\n";
    o << "q_list = " << q_list << "\n";
    o << "generator = " << generator << "\n";
    o << "per_axis = " << per_axis << "\n";
    o << "pairs = " << pairs << "\n";
    o << "target = " << target << "\n";
    o << "target_s = " << fmt(target_s) << "\n";
    o << "torus_grid = " << torus_grid << "\n";
    o << "sphere_mc = " << sphere_mc << "\n";
    o << "sphere_probe = " << sphere_probe << "\n";
    o << "kernel_tol = " << fmt(kernel_tol) << "\n";
    o << "reference_cap = " << reference_cap << "\n";
    o << "cond_max = " << fmt(cond_max) << "\n";
    o << "quiet = " << quiet << "\n";
    return o.str();
}

std::string ExperimentConfig::hash() const {
    std::string text = serialize();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Domain ExperimentConfig::make_domain() const {
    if (domain == "torus") return Domain::torus(dim);
    if (domain == "sphere") return Domain::sphere(dim);
    throw std::invalid_argument("domain must be torus or sphere");
}

WeightScheme ExperimentConfig::make_weights(double sv) const {
    if (weights == "unit" || (weights == "isotropic-sobolev" && sv == 0.0))
        return WeightScheme::unit();
    if (weights == "isotropic-sobolev") return WeightScheme::isotropic_sobolev(sv);
    if (weights == "mixed-sobolev") return WeightScheme::mixed_sobolev(sv);
    if (weights == "sphere-power") return WeightScheme::sphere_power(sv);
    if (weights == "ntk") return WeightScheme::ntk(sigma0, sigma1, cd);
    throw std::invalid_argument("unknown weight scheme: " + weights);
}

BasisSpec ExperimentConfig::make_spec(double sv) const {
    ReferenceOptions ro;
    ro.kernel_tol = kernel_tol;
    ro.cap = reference_cap;
    return BasisSpec(make_domain(), make_weights(sv), ro);
}

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t realization) {
    SplitMix64 rng(master ^ (0x9E3779B97F4A7C15ull * (realization + 1)));
    return rng.next();
}

SlopeFit fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
    if (h.size() != e.size() || h.size() < 4)
        throw std::invalid_argument("slope fit requires at least 4 levels");
    const int n = int(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(h.size()), ys(h.size());
    for (int i = 0; i < n; ++i) {
        xs[std::size_t(i)] = std::log(h[std::size_t(i)]);
        ys[std::size_t(i)] = std::log(e[std::size_t(i)]);
        sx += xs[std::size_t(i)];
        sy += ys[std::size_t(i)];
        sxx += xs[std::size_t(i)] * xs[std::size_t(i)];
        sxy += xs[std::size_t(i)] * ys[std::size_t(i)];
    }
    double denom = n * sxx - sx * sx;
    SlopeFit f;
    f.levels = n;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        double r = ys[std::size_t(i)] - (f.intercept + f.slope * xs[std::size_t(i)]);
        ss += r * r;
    }
    double var = n > 2 ? ss / (n - 2) : 0.0;
    f.std_error = std::sqrt(var * n / denom);
    f.ci_lo = f.slope - 2.0 * f.std_error;
    f.ci_hi = f.slope + 2.0 * f.std_error;
    return f;
}

// ---------------------------------------------------------------------------
// Runner helpers

namespace {

const char* kSweepHeader =
    "experiment,config_hash,seed,realization,n,s,p,regime,E1,E2,Einf,cond_est,hX,qX,status";

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string sweep_row(const std::string& experiment, const std::string& hash,
                      std::uint64_t seed, const std::string& realization, std::int64_t n,
                      double s, const ErrorRecord& r, double hx, double qx) {
    std::ostringstream o;
    o << experiment << ',' << hash << ',' << seed << ',' << realization << ',' << n << ','
      << fmt(s) << ',' << r.p << ',' << r.regime << ',' << csv_num(r.e1) << ','
      << csv_num(r.e2) << ',' << csv_num(r.einf) << ',' << csv_num(r.cond_est) << ','
      << csv_num(hx) << ',' << csv_num(qx) << ',' << r.status;
    return o.str();
}

struct AggKey {
    double s;
    std::int64_t p;
    bool operator<(const AggKey& o) const { return s != o.s ? s < o.s : p < o.p; }
};

} // namespace

// ---------------------------------------------------------------------------
// runge-sweep

RunResult run_runge_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    const std::string hash = cfg.hash();
    auto target = make_target(cfg.target, Domain::torus(1), cfg.target_s);

    struct Branch {
        double s;
        BasisSpec spec;
        std::vector<std::int64_t> plist;
    };
    std::vector<Branch> branches;
    for (double sv : cfg.s_list) {
        BasisSpec spec = cfg.make_spec(sv);
        std::vector<std::int64_t> plist = cfg.p_list;
        if (plist.empty()) plist = default_p_list(spec, cfg.n, cfg.p_max);
        branches.push_back({sv, spec, std::move(plist)});
    }

    // one realization = one sample set shared across branches
    struct RealOut {
        std::vector<std::string> lines;
        std::map<AggKey, std::vector<ErrorRecord>> recs;
    };
    auto run_one = [&](int r) {
        RealOut out;
        std::uint64_t rs = realization_seed(cfg.seed, std::uint64_t(r));
        SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, cfg.n, rs, 0, 0};
        auto pts = generate(plan);
        Vec y(cfg.n);
        for (std::int64_t j = 0; j < cfg.n; ++j) y[j] = target.f(pts[std::size_t(j)]);
        SampleSet X(Domain::torus(1), pts, y);
        double hx = X.mesh_norm(), qx = X.separation();
        for (const auto& br : branches) {
            SweepOptions so;
            so.res.torus_grid = cfg.torus_grid;
            so.solve = SolveOptions{cfg.cond_max, false};
            so.with_geometry = false;
            ErrorCurve curve = sweep_errors(br.spec, X, target.f, br.plist, so);
            for (const auto& row : curve.rows) {
                out.lines.push_back(sweep_row(cfg.experiment, hash, cfg.seed,
                                              std::to_string(r), cfg.n, br.s, row, hx, qx));
                out.recs[{br.s, row.p}].push_back(row);
            }
        }
        return out;
    };

    std::vector<RealOut> reals(std::size_t(cfg.realizations));
    {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                int r = next.fetch_add(1);
                if (r >= cfg.realizations) return;
                reals[std::size_t(r)] = run_one(r);
            }
        };
        std::thread t1(worker), t2(worker);
        t1.join();
        t2.join();
    }

    std::ostringstream csv;
    csv << kSweepHeader << "\n";
    std::map<AggKey, std::vector<ErrorRecord>> agg;
    for (auto& ro : reals) {
        for (auto& l : ro.lines) csv << l << "\n";
        for (auto& [k, v] : ro.recs) {
            auto& dst = agg[k];
            dst.insert(dst.end(), v.begin(), v.end());
        }
    }
    std::string csv_path = out_dir + "/" + cfg.experiment + "-" + hash + ".csv";
    write_file(csv_path, csv.str());
    res.outputs.push_back(csv_path);

    std::ostringstream acsv;
    acsv << kSweepHeader << "\n";
    for (auto& [k, rows] : agg) {
        ErrorRecord mean;
        mean.p = k.p;
        int cnt = 0;
        for (auto& r : rows) {
            if (r.status.rfind("ok", 0) != 0) continue;
            mean.e1 += r.e1;
            mean.e2 += r.e2;
            mean.einf += r.einf;
            mean.cond_est += r.cond_est;
            ++cnt;
        }
        if (cnt == 0) {
            mean.status = "all-failed";
            mean.e1 = mean.e2 = mean.einf = std::numeric_limits<double>::quiet_NaN();
        } else {
            mean.e1 /= cnt;
            mean.e2 /= cnt;
            mean.einf /= cnt;
            mean.cond_est /= cnt;
        }
        mean.regime = k.p <= cfg.n ? "LS" : "MN";
        acsv << sweep_row(cfg.experiment, hash, cfg.seed, "mean", cfg.n, k.s, mean,
                          std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN())
             << "\n";
    }
    std::string agg_path = out_dir + "/" + cfg.experiment + "-" + hash + "-aggregate.csv";
    write_file(agg_path, acsv.str());
    res.outputs.push_back(agg_path);

    std::string svg_path = out_dir + "/" + cfg.experiment + "-" + hash + ".svg";
    plot_csv("runge-sweep", agg_path, svg_path);
    res.outputs.push_back(svg_path);
    return res;
}

// ---------------------------------------------------------------------------
// rate-study

RunResult run_rate_study(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    const std::string hash = cfg.hash();
    if (cfg.n_list.size() < 4) {
        res.exit_code = 2;
        res.message = "rate-study needs at least 4 sample-count levels to fit a slope";
        return res;
    }
    Domain dom = cfg.make_domain();
    BasisSpec spec = cfg.make_spec(cfg.s);
    auto target = make_target(cfg.target, dom, cfg.target_s);

    std::ostringstream csv;
    csv << kSweepHeader << "\n";
    std::vector<double> hs, einfs;
    for (std::int64_t nv : cfg.n_list) {
        int g = dom.dim == 1 ? int(nv) : int(std::llround(std::sqrt(double(nv))));
        if (dom.is_torus() && std::int64_t(std::pow(double(g), dom.dim)) != nv) {
            res.exit_code = 2;
            res.message = "rate-study on torus(d): every n must be a perfect d-th power";
            return res;
        }
        std::vector<Vec> pts;
        if (dom.is_torus()) {
            SamplingPlan plan{dom, GeneratorKind::Equispaced, nv, 0, g, 0};
            pts = generate(plan);
        } else {
            SamplingPlan plan{dom, GeneratorKind::Fibonacci, nv, 0, 0, 0};
            pts = generate(plan);
        }
        Vec y(nv);
        for (std::int64_t j = 0; j < nv; ++j) y[j] = target.f(pts[std::size_t(j)]);
        SampleSet X(dom, pts, y);
        ErrorRecord row;
        row.p = spec.reference_truncation();
        row.regime = "MN";
        double hx = X.mesh_norm(), qx = X.separation();
        try {
            SolveInfo info;
            Interpolant f = kernel_interpolant(spec, X, SolveOptions{cfg.cond_max, false}, &info);
            row.cond_est = info.cond_estimate;
            if (info.used_pseudo) row.status = "ok-pinv";
            // E_q over a dense grid / probe set
            if (dom.is_torus()) {
                int m = cfg.torus_grid > 0 ? cfg.torus_grid : (dom.dim == 1 ? 4096 : 256);
                std::int64_t total = 1;
                for (int j = 0; j < dom.dim; ++j) total *= m;
                std::vector<Vec> grid;
                grid.reserve(std::size_t(total));
                for (std::int64_t i = 0; i < total; ++i) {
                    Vec p(dom.dim);
                    std::int64_t rr = i;
                    for (int j = 0; j < dom.dim; ++j) {
                        p[j] = double(rr % m) / double(m);
                        rr /= m;
                    }
                    grid.push_back(std::move(p));
                }
                Vec fv = f.eval_many(grid);
                double w = 1.0 / double(total);
                double e1 = 0, e2 = 0, einf = 0;
                for (std::int64_t i = 0; i < total; ++i) {
                    double d0 = std::abs(fv[i] - target.f(grid[std::size_t(i)]));
                    e1 += d0;
                    e2 += d0 * d0;
                    einf = std::max(einf, d0);
                }
                row.e1 = e1 * w;
                row.e2 = std::sqrt(e2 * w);
                row.einf = einf;
            } else {
                SamplingPlan probe{dom, GeneratorKind::Fibonacci, cfg.sphere_probe, 0, 0, 0};
                auto pr = generate(probe);
                Vec fv = f.eval_many(pr);
                double einf = 0;
                for (std::size_t i = 0; i < pr.size(); ++i)
                    einf = std::max(einf, std::abs(fv[std::int64_t(i)] - target.f(pr[i])));
                row.einf = einf;
                row.e1 = row.e2 = std::numeric_limits<double>::quiet_NaN();
            }
            hs.push_back(hx);
            einfs.push_back(row.einf);
        } catch (const IllConditionedError& e) {
            row.cond_est = e.cond_estimate;
            row.status = "ill-conditioned";
            row.e1 = row.e2 = row.einf = std::numeric_limits<double>::quiet_NaN();
        }
        csv << sweep_row(cfg.experiment, hash, cfg.seed, "0", nv, cfg.s, row, hx, qx) << "\n";
    }
    std::string csv_path = out_dir + "/" + cfg.experiment + "-" + hash + ".csv";
    write_file(csv_path, csv.str());
    res.outputs.push_back(csv_path);

    if (std::int64_t(hs.size()) < 4) {
        res.exit_code = 3;
        res.message = "fewer than 4 rate levels solved; refusing to fit";
        return res;
    }
    SlopeFit fit = fit_loglog_slope(hs, einfs);
    std::ostringstream fcsv;
    fcsv << "experiment,config_hash,levels,slope,std_error,ci_lo,ci_hi\n";
    fcsv << cfg.experiment << ',' << hash << ',' << fit.levels << ',' << fmt(fit.slope) << ','
         << fmt(fit.std_error) << ',' << fmt(fit.ci_lo) << ',' << fmt(fit.ci_hi) << "\n";
    std::string fit_path = out_dir + "/" + cfg.experiment + "-" + hash + "-fit.csv";
    write_file(fit_path, fcsv.str());
    res.outputs.push_back(fit_path);
    res.message = "slope " + fmt(fit.slope) + " +- " + fmt(2 * fit.std_error);

    std::string svg_path = out_dir + "/" + cfg.experiment + "-" + hash + ".svg";
    plot_csv("rate-study", csv_path, svg_path);
    res.outputs.push_back(svg_path);
    return res;
}

// ---------------------------------------------------------------------------
// ntk-check

RunResult run_ntk_check(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    const std::string hash = cfg.hash();
    Domain dom = Domain::sphere(3);
    ReferenceOptions ro;
    ro.kernel_tol = cfg.kernel_tol;
    ro.cap = cfg.reference_cap;
    BasisSpec spec(dom, WeightScheme::ntk(cfg.sigma0, cfg.sigma1, cfg.cd), ro);

    std::ostringstream csv;
    csv << "experiment,config_hash,case,n,sym_pairs,lambda_min,trace,ratio,null_odd_err,"
           "interp_resid,status\n";

    // (a) fully symmetric set with 2n > 2d: the Gram matrix is singular and
    // the null direction is an odd function on the points.
    {
        const int half = 7; // 2n = 14 > 2d = 6
        SamplingPlan plan{dom, GeneratorKind::SymmetricAugment, 2 * half, cfg.seed, 0, half};
        auto pts = generate(plan);
        SampleSet X(dom, pts, Vec::Zero(2 * half));
        auto gram = GramSystem::assemble(spec, X, spec.reference_truncation());
        Eigen::SelfAdjointEigenSolver<Mat> es(gram.kernel_matrix());
        double lmin = es.eigenvalues().minCoeff();
        double trace = gram.kernel_matrix().trace();
        Vec u = es.eigenvectors().col(0);
        double odd_err = 0;
        for (int i = 0; i < half; ++i)
            odd_err = std::max(odd_err, std::abs(u[i] + u[i + half]));
        csv << cfg.experiment << ',' << hash << ",symmetric," << 2 * half << ','
            << X.symmetric_pairs() << ',' << fmt(lmin) << ',' << fmt(trace) << ','
            << fmt(lmin / trace) << ',' << fmt(odd_err) << ",,ok\n";
    }

    // (b) at most d symmetric pairs: sampling set; interpolation succeeds.
    {
        const std::int64_t n = 20;
        const int pairs = 3;
        SamplingPlan plan{dom, GeneratorKind::SymmetricAugment, n, cfg.seed + 1, 0, pairs};
        auto pts = generate(plan);
        SplitMix64 rng(realization_seed(cfg.seed, 7));
        Vec y(n);
        for (std::int64_t j = 0; j < n; ++j) y[j] = 2.0 * rng.uniform01() - 1.0;
        SampleSet X(dom, pts, y);
        std::string status = "ok";
        double resid = std::numeric_limits<double>::quiet_NaN();
        double lmin = 0, trace = 0;
        try {
            auto gram = GramSystem::assemble(spec, X, spec.reference_truncation());
            lmin = gram.lambda_min();
            trace = gram.kernel_matrix().trace();
            SolveInfo info;
            Interpolant f = kernel_interpolant(spec, X, SolveOptions{cfg.cond_max, true}, &info);
            resid = interpolation_residual(f, X);
        } catch (const IllConditionedError&) {
            status = "ill-conditioned";
            res.exit_code = 3;
        }
        csv << cfg.experiment << ',' << hash << ",sampling," << n << ',' << X.symmetric_pairs()
            << ',' << fmt(lmin) << ',' << fmt(trace) << ',' << fmt(lmin / trace) << ",,"
            << csv_num(resid) << ',' << status << "\n";
    }

    std::string csv_path = out_dir + "/" + cfg.experiment + "-" + hash + ".csv";
    write_file(csv_path, csv.str());
    res.outputs.push_back(csv_path);
    std::string svg_path = out_dir + "/" + cfg.experiment + "-" + hash + ".svg";
    plot_csv("ntk-check", csv_path, svg_path);
    res.outputs.push_back(svg_path);
    return res;
}

// ---------------------------------------------------------------------------
// kernel-eval

RunResult run_kernel_eval(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    const std::string hash = cfg.hash();
    if (cfg.domain != "torus" || cfg.dim != 1) {
        res.exit_code = 2;
        res.message = "kernel-eval tabulates d=1 torus kernels";
        return res;
    }
    BasisSpec spec = cfg.make_spec(cfg.s);
    std::vector<std::int64_t> plist = cfg.p_list;
    if (plist.empty()) plist = {9, 33, 129, 513};
    for (auto& p : plist) p = spec.aligned_truncation(p);
    const bool green = cfg.weights == "isotropic-sobolev" && cfg.s == 1.0;
    std::ostringstream csv;
    csv << "experiment,config_hash,p,t,K_p,K_ref,green,sym_diff,tail_bound\n";
    const std::int64_t ref = spec.reference_truncation();
    for (std::int64_t p : plist) {
        double tb = tail_bound(spec, p);
        for (int i = 0; i <= 64; ++i) {
            double t = double(i) / 128.0;
            double kp = kernel_truncated_scalar(spec, p, t);
            double kn = kernel_truncated_scalar(spec, p, -t);
            double kr = kernel_truncated_scalar(spec, ref, t);
            csv << cfg.experiment << ',' << hash << ',' << p << ',' << fmt(t) << ',' << fmt(kp)
                << ',' << fmt(kr) << ',' << (green ? fmt(green_kernel_1d(t)) : std::string())
                << ',' << fmt(std::abs(kp - kn)) << ',' << fmt(tb) << "\n";
        }
    }
    std::string csv_path = out_dir + "/" + cfg.experiment + "-" + hash + ".csv";
    write_file(csv_path, csv.str());
    res.outputs.push_back(csv_path);
    std::string svg_path = out_dir + "/" + cfg.experiment + "-" + hash + ".svg";
    plot_csv("kernel-eval", csv_path, svg_path);
    res.outputs.push_back(svg_path);
    return res;
}

// ---------------------------------------------------------------------------
// near-optimal

RunResult run_near_optimal(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    const std::string hash = cfg.hash();
    BasisSpec spec = cfg.make_spec(cfg.s);
    auto target = make_target(cfg.target == "runge" ? "decaying-coeff" : cfg.target,
                              Domain::torus(1), cfg.target_s);
    if (!target.coefficients) {
        res.exit_code = 2;
        res.message = "near-optimal requires a coefficient-expansion target";
        return res;
    }
    SamplingPlan plan{Domain::torus(1), GeneratorKind::UniformRandom, cfg.n, cfg.seed, 0, 0};
    auto pts = generate(plan);
    Vec y(cfg.n);
    for (std::int64_t j = 0; j < cfg.n; ++j) y[j] = target.f(pts[std::size_t(j)]);
    SampleSet X(Domain::torus(1), pts, y);
    std::vector<std::int64_t> plist = cfg.p_list;
    if (plist.empty()) plist = {64, 128, 256};

    const Vec& fc = *target.coefficients;
    std::ostringstream csv;
    csv << "experiment,config_hash,p,l2_err,proj_residual,gap,interp_resid,status\n";
    for (std::int64_t praw : plist) {
        std::int64_t p = spec.aligned_truncation(praw);
        std::string status = "ok";
        double l2 = std::numeric_limits<double>::quiet_NaN(), proj = l2, gap = l2, ir = l2;
        try {
            Interpolant g =
                near_optimal_interpolant(spec, X, target.as_coefficient_target(), p,
                                         SolveOptions{cfg.cond_max, true});
            double tail2 = 0;
            for (std::int64_t j = p; j < fc.size(); ++j) tail2 += fc[j] * fc[j];
            proj = std::sqrt(tail2);
            double head2 = 0;
            const Vec& gc = g.coefficients();
            for (std::int64_t j = 0; j < p; ++j) {
                double fj = j < fc.size() ? fc[j] : 0.0;
                head2 += (fj - gc[j]) * (fj - gc[j]);
            }
            l2 = std::sqrt(head2 + tail2);
            gap = l2 - proj;
            ir = interpolation_residual(g, X);
        } catch (const IllConditionedError&) {
            status = "ill-conditioned";
            res.exit_code = 3;
        }
        csv << cfg.experiment << ',' << hash << ',' << p << ',' << csv_num(l2) << ','
            << csv_num(proj) << ',' << csv_num(gap) << ',' << csv_num(ir) << ',' << status
            << "\n";
    }
    std::string csv_path = out_dir + "/" + cfg.experiment + "-" + hash + ".csv";
    write_file(csv_path, csv.str());
    res.outputs.push_back(csv_path);
    std::string svg_path = out_dir + "/" + cfg.experiment + "-" + hash + ".svg";
    plot_csv("near-optimal", csv_path, svg_path);
    res.outputs.push_back(svg_path);
    return res;
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
    RunResult res;
    try {
        std::string cfg_path = out_dir + "/" + cfg.experiment + "-" + cfg.hash() + ".config";
        write_file(cfg_path, cfg.serialize());
        if (cfg.experiment == "runge-sweep") res = run_runge_sweep(cfg, out_dir);
        else if (cfg.experiment == "rate-study") res = run_rate_study(cfg, out_dir);
        else if (cfg.experiment == "ntk-check") res = run_ntk_check(cfg, out_dir);
        else if (cfg.experiment == "kernel-eval") res = run_kernel_eval(cfg, out_dir);
        else if (cfg.experiment == "near-optimal") res = run_near_optimal(cfg, out_dir);
        else {
            res.exit_code = 2;
            res.message = "unknown experiment: " + cfg.experiment;
            return res;
        }
        res.outputs.push_back(cfg_path);
    } catch (const std::invalid_argument& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const IllConditionedError& e) {
        res.exit_code = 3;
        res.message = e.what();
    } catch (const RankError& e) {
        res.exit_code = 3;
        res.message = e.what();
    }
    return res;
}

} // namespace minnorm
