#pragma once

#include "minnorm/interpolate.hpp"
#include "minnorm/types.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace minnorm {

enum class ErrorNorm { L1 = 1, L2 = 2, LInf = 3 };

struct ErrorResolution {
    int torus_grid = 0;               // per-axis points; 0 = auto from active frequencies
    std::int64_t sphere_mc = 200000;  // Monte Carlo samples for q in {1,2}
    std::int64_t sphere_probe = 20000; // Fibonacci probes for q = inf (d=3)
    std::uint64_t mc_seed = 9001;
};

struct ErrorEstimate {
    double value = 0.0;
    double std_error = 0.0; // Monte Carlo only; 0 for grid quadrature
};

using RealFn = std::function<double(const Vec&)>;

// E_q(f, g) = ||f - g||_{L^q_mu} under the normalized measure (torus: uniform
// probability; sphere: surface measure divided by its area, so the norm
// ordering E_1 <= E_2 <= E_inf holds on both domains).
ErrorEstimate error_q(const RealFn& f, const RealFn& g, ErrorNorm q, const Domain& domain,
                      const ErrorResolution& res = {});

// Per-p record of a sweep.
struct ErrorRecord {
    std::int64_t p = 0;
    std::int64_t degree = 0; // torus: max frequency; sphere: max degree
    std::string regime;      // "LS" | "MN"
    double e1 = 0, e2 = 0, einf = 0;
    double cond_est = 0;
    std::string status = "ok"; // "ok" or a failure tag
};

struct ErrorCurve {
    std::string spec_desc;
    std::int64_t n = 0;
    double h_x = 0, q_x = 0;
    std::vector<ErrorRecord> rows;
};

struct SweepOptions {
    ErrorResolution res;
    SolveOptions solve{tol::cond_max, /*strict=*/false};
    bool with_geometry = true; // compute h_X / q_X (probe-based, not free)
};

// One record per p: least squares for p <= n, minimum weighted norm for
// p > n. Solver failures become failure-tagged rows, not aborts.
ErrorCurve sweep_errors(const BasisSpec& spec, const SampleSet& X, const RealFn& target,
                        std::span<const std::int64_t> p_list, const SweepOptions& opts = {});

// Default sweep p-list: every admissible p up to 4n, then geometric spacing
// up to `p_max` (aligned; clamped to the reference when one exists).
std::vector<std::int64_t> default_p_list(const BasisSpec& spec, std::int64_t n,
                                         std::int64_t p_max);

} // namespace minnorm
