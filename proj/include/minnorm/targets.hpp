#pragma once

#include "minnorm/interpolate.hpp"
#include "minnorm/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace minnorm {

// A named target function for experiments. `coefficients` (when present) is
// the exact finite expansion in the canonical basis enumeration of the
// domain, enabling exact L2 computations and the near-optimal construction.
struct Target {
    std::string name;
    Domain domain;
    std::function<double(const Vec&)> f;
    std::optional<Vec> coefficients;

    CoefficientTarget as_coefficient_target() const {
        if (!coefficients) throw std::invalid_argument("target has no coefficient expansion");
        return {f, *coefficients};
    }
};

// Built-in catalog, keyed by name:
//   runge            torus d=1: R(x) = 1/(1+100 x^2) on [-1/2,1/2)
//   analytic         torus d=1: exp(sin(2 pi x)), entire Fourier decay
//   sobolev-boundary torus d=1: |fhat_k| ~ k^{-(s+0.6)}, just inside W^s
//   analytic-2d      torus d=2: exp(sin(2 pi x1)) * exp(sin(2 pi x2))
//   mixed-boundary   torus d=2: tensor square of sobolev-boundary(s)
//   decaying-coeff   torus d=1: pair amplitudes e^{-0.4 k} (finite support)
//   sphere-analytic  sphere d=3: exp(x . q), zonal analytic
//   ntk-span         sphere d=3: finite combination of degrees {0,1,2,4}
// `s` parameterizes the two boundary targets; ignored otherwise.
Target make_target(const std::string& name, const Domain& domain, double s = 2.0);

} // namespace minnorm
