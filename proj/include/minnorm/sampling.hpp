#pragma once

#include "minnorm/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace minnorm {

enum class GeneratorKind {
    UniformRandom,    // torus: uniform on [0,1)^d; sphere: normalized Gaussians
    Equispaced,       // torus: tensor lattice with per_axis points per axis
    Fibonacci,        // sphere d=3 quasi-uniform lattice
    SymmetricAugment, // sphere: base points plus antipodes of the first `pairs`
};

struct SamplingPlan {
    Domain domain;
    GeneratorKind kind = GeneratorKind::UniformRandom;
    std::int64_t n = 1;          // total point count
    std::uint64_t seed = 0;      // uniform-random / symmetric-augment base
    int per_axis = 0;            // equispaced: points per axis (n = per_axis^d)
    int pairs = 0;               // symmetric-augment: antipodal pairs to add
    GeneratorKind base = GeneratorKind::UniformRandom; // symmetric-augment base generator
};

// Deterministic per (plan, seed); points pairwise distinct.
std::vector<Vec> generate(const SamplingPlan& plan);

// Mesh norm h_X: covering radius estimated by a dense probe with local
// refinement. `probe_density` reports the final probe spacing so the
// estimation error can be bounded.
struct MeshNormResult {
    double value = 0.0;
    double probe_spacing = 0.0;
};
MeshNormResult mesh_norm(const std::vector<Vec>& X, const Domain& domain);

// Separation radius q_X = half the minimum pairwise distance (exact).
// Singletons get +infinity.
double separation_radius(const std::vector<Vec>& X, const Domain& domain);

// Portable deterministic RNG helpers (identical streams on every platform).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; } // [0,1)
    double normal(); // Box-Muller, one value per call
  private:
    std::optional<double> spare_;
};

} // namespace minnorm
