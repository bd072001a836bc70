#pragma once

#include "minnorm/basis.hpp"
#include "minnorm/error_metrics.hpp"
#include "minnorm/sampling.hpp"

#include <map>
#include <string>
#include <vector>

namespace minnorm {

inline constexpr const char* kVersion = "0.1.0";

// Flat key-value experiment configuration. Every key has a default; the
// serialized form records all resolved values, so configs round-trip
// losslessly and the hash pins the exact run.
struct ExperimentConfig {
    std::string experiment = "runge-sweep"; // runge-sweep | rate-study | ntk-check |
                                            // kernel-eval | near-optimal
    std::string domain = "torus";
    int dim = 1;
    std::string weights = "isotropic-sobolev";
    double s = 2.0;
    std::vector<double> s_list = {0, 1, 2, 3, 4}; // runge-sweep branches
    double sigma0 = 1.0, sigma1 = 1.0, cd = 1.0;  // ntk parameters
    std::int64_t n = 35;
    std::vector<std::int64_t> n_list = {8, 16, 32, 64, 128}; // rate-study
    int realizations = 100;
    std::uint64_t seed = 42;
    std::vector<std::int64_t> p_list;  // empty = default policy
    std::int64_t p_max = 4097;
    std::string q_list = "1,2,inf";
    std::string generator = "uniform-random";
    int per_axis = 0;
    int pairs = 0;
    std::string target = "runge";
    double target_s = 2.0;
    int torus_grid = 0;
    std::int64_t sphere_mc = 200000;
    std::int64_t sphere_probe = 20000;
    double kernel_tol = tol::kernel_tol;
    std::int64_t reference_cap = 0;
    double cond_max = tol::cond_max;
    int quiet = 0;
    bool experiment_explicit = false; // set by parse when the key appeared

    static ExperimentConfig parse(const std::string& text); // throws on unknown keys
    static ExperimentConfig load(const std::string& path);
    std::string serialize() const; // canonical form, all keys, fixed order
    std::string hash() const;      // FNV-1a 64 over the canonical form, hex

    Domain make_domain() const;
    WeightScheme make_weights(double s_override) const;
    BasisSpec make_spec(double s_override) const;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 2 config error, 3 solver failure
    std::string message;
    std::vector<std::string> outputs; // files written
};

RunResult run_runge_sweep(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_rate_study(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_ntk_check(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_kernel_eval(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_near_optimal(const ExperimentConfig& cfg, const std::string& out_dir);

// Dispatch on cfg.experiment; writes CSV (plus aggregate/fit files), the
// resolved config, and one SVG per experiment into out_dir.
RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

// Least-squares slope fit for rate studies: log(E) ~ a + b log(h).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0; // slope +- 2 se
    int levels = 0;
};
SlopeFit fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& e);

// Deterministic per-realization seed derivation.
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t realization);

// Formats a double for CSV output ("" for NaN, %.17g otherwise).
std::string csv_num(double v);

} // namespace minnorm
