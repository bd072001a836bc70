#pragma once

#include "minnorm/basis.hpp"
#include "minnorm/sampling.hpp"
#include "minnorm/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace minnorm {

// Points with data values on a domain. Geometry summaries (mesh norm,
// separation radius, symmetric pair count) are computed on demand and cached.
class SampleSet {
  public:
    SampleSet(Domain domain, std::vector<Vec> points, Vec values);

    const Domain& domain() const { return domain_; }
    const std::vector<Vec>& points() const { return points_; }
    const Vec& values() const { return values_; }
    std::int64_t size() const { return std::int64_t(points_.size()); }

    double mesh_norm() const;
    double separation() const;
    int symmetric_pairs() const; // sphere only; 0 on the torus

    SampleSet with_values(Vec values) const { return {domain_, points_, std::move(values)}; }

  private:
    Domain domain_;
    std::vector<Vec> points_;
    Vec values_;
    struct Geometry {
        std::optional<double> h, q;
        std::optional<int> sym;
    };
    std::shared_ptr<Geometry> geom_ = std::make_shared<Geometry>();
};

// Diagnostics attached to a linear solve through a GramSystem.
struct SolveInfo {
    double cond_estimate = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool used_pseudo = false; // eigenvalue cutoff fallback engaged
    std::int64_t rank = 0;
};

struct SolveOptions {
    double cond_max = tol::cond_max;
    bool strict = true; // throw IllConditionedError instead of falling back
};

// K_p = A_p^t W A_p on a sample set, with factorizations and eigenvalue
// diagnostics. The matrix entries are assembled through the kernel path;
// assemble() cross-checks against A_p^t W A_p whenever A_p is materialized.
class GramSystem {
  public:
    static GramSystem assemble(const BasisSpec& spec, const SampleSet& X, std::int64_t p);

    const Mat& kernel_matrix() const { return K_; }
    std::int64_t truncation() const { return p_; } // aligned truncation actually used
    std::int64_t requested_truncation() const { return p_requested_; }
    const BasisSpec& spec() const { return spec_; }
    const SampleSet& samples() const { return X_; }

    // A_p is materialized only when the basis is explicitly evaluable and p
    // is small enough for a dense p x n matrix.
    bool has_design_matrix() const { return A_.has_value(); }
    const Mat& design_matrix() const; // p x n
    Vec weight_reciprocals() const;   // diag of W (length p)

    // Solve K_p c = y (SPD path with eigen-cutoff fallback).
    Vec solve(const Vec& y, SolveInfo& info, const SolveOptions& opts = {}) const;
    // Least-squares pseudo-inverse solve c = K_p^dagger y.
    Vec pseudo_solve(const Vec& y, SolveInfo& info) const;

    double lambda_min() const;
    double lambda_max() const;
    double cond_estimate() const;

  private:
    GramSystem(const BasisSpec& spec, SampleSet X, std::int64_t p_requested, std::int64_t p);
    void ensure_eigen() const;

    BasisSpec spec_;
    SampleSet X_;
    std::int64_t p_requested_ = 0;
    std::int64_t p_ = 0;
    Mat K_;
    std::optional<Mat> A_;
    struct Eig;
    mutable std::shared_ptr<Eig> eig_;
};

// A function on the domain, either as basis coefficients over the first p
// ordinals or as a kernel expansion sum_k c_k K_p(., x_k) over sample points.
class Interpolant {
  public:
    enum class Rep { Coefficients, KernelExpansion };

    static Interpolant from_coefficients(BasisSpec spec, std::int64_t p, Vec coeffs);
    static Interpolant from_kernel(std::shared_ptr<const GramSystem> gram, Vec c);

    Rep representation() const { return rep_; }
    const BasisSpec& spec() const { return spec_; }
    std::int64_t truncation() const { return p_; }

    double operator()(const Vec& x) const;
    Vec eval_many(const std::vector<Vec>& xs) const;

    // Basis-coefficient view (conversion W A c for kernel expansions;
    // requires an explicitly evaluable basis and moderate p).
    const Vec& coefficients() const;
    bool has_coefficients() const;

    const Vec& kernel_weights() const; // c in the kernel expansion
    const GramSystem& gram() const;

    // sqrt(sum omega_j fhat_j^2); for kernel expansions computed as
    // sqrt(c^t K_p c), which equals the coefficient route exactly.
    double weighted_norm() const;

  private:
    Rep rep_ = Rep::Coefficients;
    BasisSpec spec_;
    std::int64_t p_ = 0;
    Vec coeffs_;
    mutable std::optional<Vec> coeff_cache_;
    Vec c_;
    std::shared_ptr<const GramSystem> gram_;

    Interpolant(BasisSpec spec) : spec_(std::move(spec)) {}
};

// Minimum weighted norm interpolant at truncation p (p >= p_X required).
Interpolant min_norm_interpolant(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                                 const SolveOptions& opts = {}, SolveInfo* info = nullptr);

// f_infinity surrogate at the reference truncation P*.
Interpolant kernel_interpolant(const BasisSpec& spec, const SampleSet& X,
                               const SolveOptions& opts = {}, SolveInfo* info = nullptr);

// Least-squares fit on the first p basis functions (p <= n; A_p full row rank).
Interpolant least_squares_fit(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                              SolveInfo* info = nullptr);

// Kernel-form least squares via K_p^dagger (the pseudo-inverse identity);
// used as the second route when validating least_squares_fit.
Interpolant least_squares_kernel_form(const BasisSpec& spec, const SampleSet& X, std::int64_t p,
                                      SolveInfo* info = nullptr);

// Weighted norm of any interpolant (see Interpolant::weighted_norm).
double weighted_norm(const BasisSpec& spec, const Interpolant& f);

// A target with basis-coefficient access up to the reference truncation.
struct CoefficientTarget {
    std::function<double(const Vec&)> evaluate;
    Vec coefficients; // ordinal-indexed, finite support
};

// Near-optimal interpolant g = h + g_p: h is the L2 projection of the target
// onto the first p basis functions and g_p the kernel correction
// interpolating the projection residual on X.
Interpolant near_optimal_interpolant(const BasisSpec& spec, const SampleSet& X,
                                     const CoefficientTarget& target, std::int64_t p,
                                     const SolveOptions& opts = {});

// Interpolation residual max_j |f(x_j) - y_j|.
double interpolation_residual(const Interpolant& f, const SampleSet& X);

} // namespace minnorm
