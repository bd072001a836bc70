#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minnorm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

enum class DomainKind { Torus, Sphere };

// Domain descriptor: Torus means T^d = [0,1)^d, Sphere means S^{d-1}
// embedded in R^d (so `dim` is always the ambient coordinate count).
struct Domain {
    DomainKind kind = DomainKind::Torus;
    int dim = 1;

    static Domain torus(int d) {
        if (d < 1) throw std::invalid_argument("torus dimension must be >= 1");
        return Domain{DomainKind::Torus, d};
    }
    static Domain sphere(int ambient_d) {
        if (ambient_d < 3) throw std::invalid_argument("sphere ambient dimension must be >= 3");
        return Domain{DomainKind::Sphere, ambient_d};
    }

    bool is_torus() const { return kind == DomainKind::Torus; }
    bool is_sphere() const { return kind == DomainKind::Sphere; }

    bool operator==(const Domain& o) const { return kind == o.kind && dim == o.dim; }
    bool operator!=(const Domain& o) const { return !(*this == o); }

    std::string describe() const {
        return is_torus() ? "torus(" + std::to_string(dim) + ")"
                          : "sphere(" + std::to_string(dim) + ")";
    }
};

// Thrown when a linear system is too ill-conditioned for the strict solve path.
class IllConditionedError : public std::runtime_error {
  public:
    explicit IllConditionedError(double cond)
        : std::runtime_error("Gram system condition estimate " + std::to_string(cond) +
                             " exceeds the configured maximum"),
          cond_estimate(cond) {}
    double cond_estimate;
};

// Thrown when a matrix fails a rank requirement (e.g. least squares with
// rank-deficient evaluation matrix).
class RankError : public std::runtime_error {
  public:
    RankError(std::int64_t rank, std::int64_t required)
        : std::runtime_error("matrix rank " + std::to_string(rank) + " below required " +
                             std::to_string(required)),
          rank(rank), required(required) {}
    std::int64_t rank;
    std::int64_t required;
};

namespace tol {
// Default tolerances; all entry points that depend on them accept overrides.
inline constexpr double kernel_tol = 1e-10;    // target tail bound for the p=infinity surrogate
inline constexpr double solve_tol = 1e-9;      // relative agreement of equivalent solve routes
inline constexpr double cond_max = 1e12;       // strict-path condition number guard
inline constexpr double point_distinct = 1e-12;
inline constexpr double antipode_match = 1e-9;

inline double interp_tol(double y_inf_norm) { return 1e-8 * (1.0 + y_inf_norm); }
} // namespace tol

} // namespace minnorm
