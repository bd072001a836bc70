#pragma once

#include "minnorm/types.hpp"
#include "minnorm/weights.hpp"

#include <memory>
#include <unordered_map>
#include <span>
#include <variant>
#include <vector>

namespace minnorm {

// Torus label: the lattice point k in Z^d of the complex enumeration.
// k = 0 is the constant function. For a pair {k, -k} the lexicographically
// larger member carries sqrt(2) cos(2 pi k_+ . x) and the smaller member
// carries sqrt(2) sin(2 pi k_+ . x), where k_+ is the larger one.
struct TorusLabel {
    IVec freq;

    bool is_constant() const { return freq.isZero(); }
    // Lexicographic sign: first nonzero coordinate positive.
    bool lex_positive() const {
        for (int j = 0; j < freq.size(); ++j) {
            if (freq[j] > 0) return true;
            if (freq[j] < 0) return false;
        }
        return false;
    }
    bool is_cosine() const { return !is_constant() && lex_positive(); }
    bool is_sine() const { return !is_constant() && !lex_positive(); }
};

// Sphere label: degree l and order m with 1 <= m <= N_l.
struct SphereLabel {
    int degree = 0;
    int order = 1;
};

struct BasisIndex {
    std::int64_t ordinal = 0;
    std::variant<TorusLabel, SphereLabel> label;

    const TorusLabel& torus() const { return std::get<TorusLabel>(label); }
    const SphereLabel& sphere() const { return std::get<SphereLabel>(label); }
};

// Options controlling the reference truncation standing in for p = infinity.
struct ReferenceOptions {
    double kernel_tol = tol::kernel_tol;
    // Hard cap on the reference size; 0 selects a per-domain default.
    // Torus: cap on the half-width M of the frequency box |k|_inf <= M.
    // Sphere: cap on the maximum degree L.
    std::int64_t cap = 0;
};

struct BasisSpecCache; // internal

// An ordered orthonormal basis with positive diverging weights on a fixed
// domain. Immutable after construction; cheap to copy (shared internals);
// safe for concurrent use.
class BasisSpec {
  public:
    BasisSpec(Domain domain, WeightScheme weights, ReferenceOptions opts = {});

    const Domain& domain() const { return domain_; }
    const WeightScheme& weights() const { return weights_; }
    bool compatible() const { return compatible_; }

    // Reference truncation P* (ordinal count standing in for p = infinity)
    // and the rigorous tail bound it achieves. When the per-domain cap binds
    // before kernel_tol is reached, reference_met_tol() is false and the
    // achieved tail is the honest surrogate quality.
    std::int64_t reference_truncation() const;
    double reference_tail() const;
    bool reference_met_tol() const;
    double kernel_tol() const { return opts_.kernel_tol; }

    // Largest admissible truncation <= p (pair boundaries on the torus,
    // degree-block boundaries on the sphere), clamped to the cap-implied
    // limit. Truncations beyond the reference remain valid (the tables grow
    // on demand); the limit bounds what can be evaluated at all.
    std::int64_t aligned_truncation(std::int64_t p) const;
    bool is_aligned(std::int64_t p) const;
    std::int64_t truncation_limit() const { return limit_p_; }

    // Torus helpers: box half-width of the reference, and the largest
    // frequency (inf-norm) active in an aligned prefix of length p.
    std::int64_t torus_reference_halfwidth() const;
    std::int64_t torus_max_frequency(std::int64_t p) const;

    // Sphere helpers.
    int sphere_reference_degree() const;
    int sphere_max_degree(std::int64_t p) const;
    std::int64_t sphere_block_size(int max_degree) const;

    std::string describe() const;

  private:
    Domain domain_;
    WeightScheme weights_;
    ReferenceOptions opts_;
    bool compatible_ = false;
    std::int64_t reference_p_ = 0; // 0 when no reference exists (incompatible)
    double reference_tail_ = 0.0;
    std::int64_t torus_ref_halfwidth_ = 0;
    int sphere_ref_degree_ = -1;
    std::int64_t limit_p_ = 0;
    std::shared_ptr<BasisSpecCache> cache_;

    friend struct BasisSpecAccess;
};

// --- basis-core operations ---

// First p indices in the canonical order (deterministic across runs).
std::vector<BasisIndex> enumerate_basis(const BasisSpec& spec, std::int64_t p);

// omega at a basis index.
double weight_of(const BasisSpec& spec, const BasisIndex& idx);

// phi_idx(x); x must lie on the domain. For the sphere explicit values exist
// only in ambient dimension 3.
double eval_basis(const BasisSpec& spec, const BasisIndex& idx, const Vec& x);

// K_p(x, y) = sum_{k <= p} omega_k^{-1} phi_k(x) phi_k(y), with p rounded
// down to the nearest admissible truncation (and clamped to the reference).
double kernel_truncated(const BasisSpec& spec, std::int64_t p, const Vec& x, const Vec& y);

// Batched kernel evaluation in the kernel's natural scalar argument.
// Torus d=1: ts are differences x - y. Sphere: ts are inner products x.y.
// Torus d>=2 has no scalar form; see kernel_truncated.
void kernel_truncated_batch(const BasisSpec& spec, std::int64_t p, std::span<const double> ts,
                            std::span<double> out);
double kernel_truncated_scalar(const BasisSpec& spec, std::int64_t p, double t);

// Rigorous upper bound on sup_{x,y} |K(x,y) - K_p(x,y)|, computed as the
// weight-reciprocal tail with pair/degree-block aggregation. Requires
// compatible weights. Monotone non-increasing in p.
double tail_bound(const BasisSpec& spec, std::int64_t p);

// Memoizing evaluator for kernels whose truncation factors over axes
// (mixed-Sobolev weights at full-box truncations: K_p(x,y) = prod_j
// k1(x_j - y_j)). Lattice sample sets hit few distinct differences, so
// memoization turns dense Gram assembly from O(n^2 M) into O(n M + n^2 d).
class MixedAxisKernel {
  public:
    MixedAxisKernel(const BasisSpec& spec, std::int64_t p);
    double axis(double t) const;                  // memoized 1-D factor
    double operator()(const Vec& x, const Vec& y) const;
    std::int64_t truncation() const { return p_; }

  private:
    const BasisSpec spec_;
    std::int64_t p_ = 0;
    std::int64_t halfwidth_ = 0;
    std::shared_ptr<const std::vector<double>> table_;
    mutable std::unordered_map<double, double> memo_;
};

} // namespace minnorm
