#pragma once

#include "minnorm/types.hpp"

#include <cmath>

namespace minnorm {

enum class WeightKind {
    Unit,             // omega = 1 (no reproducing kernel; finite-p only)
    IsotropicSobolev, // torus: omega_k = (1 + 4 pi^2 |k|_2^2)^s
    MixedSobolev,     // torus: omega_k = prod_j (1 + 4 pi^2 k_j^2)^s
    SpherePower,      // sphere: omega_l = (1 + l(l+d-2))^s
    Ntk,              // sphere: sigma_0, sigma_1, C_d l^d for even l >= 2; odd l >= 3 absent
};

struct WeightScheme {
    WeightKind kind = WeightKind::Unit;
    double s = 0.0;
    double sigma0 = 1.0;
    double sigma1 = 1.0;
    double cd = 1.0;

    static WeightScheme unit() { return {WeightKind::Unit, 0.0, 1, 1, 1}; }
    static WeightScheme isotropic_sobolev(double s) {
        return {WeightKind::IsotropicSobolev, s, 1, 1, 1};
    }
    static WeightScheme mixed_sobolev(double s) { return {WeightKind::MixedSobolev, s, 1, 1, 1}; }
    static WeightScheme sphere_power(double s) { return {WeightKind::SpherePower, s, 1, 1, 1}; }
    static WeightScheme ntk(double sigma0 = 1.0, double sigma1 = 1.0, double cd = 1.0) {
        return {WeightKind::Ntk, 0.0, sigma0, sigma1, cd};
    }

    bool is_sphere_scheme() const {
        return kind == WeightKind::SpherePower || kind == WeightKind::Ntk;
    }

    // Sufficient condition for the kernel series to converge absolutely and
    // uniformly on the given domain.
    bool compatible_on(const Domain& dom) const {
        switch (kind) {
        case WeightKind::Unit: return false;
        case WeightKind::IsotropicSobolev: return dom.is_torus() && 2.0 * s > dom.dim;
        case WeightKind::MixedSobolev: return dom.is_torus() && s > 0.5;
        case WeightKind::SpherePower: return dom.is_sphere() && 2.0 * s > dom.dim - 1;
        case WeightKind::Ntk: return dom.is_sphere(); // sigma_l ~ l^d, exponent d > d-1
        }
        return false;
    }

    // Torus weight for frequency vector k (identical for both members of a +-k pair).
    double torus_weight(const IVec& k) const {
        constexpr double four_pi2 = 4.0 * M_PI * M_PI;
        switch (kind) {
        case WeightKind::Unit: return 1.0;
        case WeightKind::IsotropicSobolev: {
            double n2 = 0.0;
            for (int j = 0; j < k.size(); ++j) n2 += double(k[j]) * double(k[j]);
            return std::pow(1.0 + four_pi2 * n2, s);
        }
        case WeightKind::MixedSobolev: {
            double w = 1.0;
            for (int j = 0; j < k.size(); ++j)
                w *= std::pow(1.0 + four_pi2 * double(k[j]) * double(k[j]), s);
            return w;
        }
        default: throw std::invalid_argument("weight scheme is not a torus scheme");
        }
    }

    // Sphere weight for degree l on S^{d-1}; order-independent by construction.
    double sphere_weight(int ell, int ambient_d) const {
        switch (kind) {
        case WeightKind::Unit: return 1.0;
        case WeightKind::SpherePower: {
            double lambda = double(ell) * (double(ell) + ambient_d - 2);
            return std::pow(1.0 + lambda, s);
        }
        case WeightKind::Ntk:
            if (ell == 0) return sigma0;
            if (ell == 1) return sigma1;
            if (ell % 2 == 0) return cd * std::pow(double(ell), double(ambient_d));
            throw std::invalid_argument("odd degree >= 3 has no NTK basis element");
        default: throw std::invalid_argument("weight scheme is not a sphere scheme");
        }
    }

    // True when the scheme drops a degree entirely (NTK: odd l >= 3).
    bool sphere_degree_present(int ell) const {
        if (kind == WeightKind::Ntk) return ell <= 1 || ell % 2 == 0;
        return true;
    }

    std::string describe() const {
        switch (kind) {
        case WeightKind::Unit: return "unit";
        case WeightKind::IsotropicSobolev: return "isotropic-sobolev(s=" + std::to_string(s) + ")";
        case WeightKind::MixedSobolev: return "mixed-sobolev(s=" + std::to_string(s) + ")";
        case WeightKind::SpherePower: return "sphere-power(s=" + std::to_string(s) + ")";
        case WeightKind::Ntk:
            return "ntk(sigma0=" + std::to_string(sigma0) + ",sigma1=" + std::to_string(sigma1) +
                   ",cd=" + std::to_string(cd) + ")";
        }
        return "?";
    }
};

} // namespace minnorm
