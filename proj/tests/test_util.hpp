#pragma once

#include <cstdint>

#include "pyrofield/model.hpp"
#include "pyrofield/rng.hpp"

namespace testutil {

// Deterministic stream of uniforms in [0,1) for test generators.
class Gen {
  public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}

    double uniform() { return (pyrofield::mix64(state_++) >> 11) * 0x1p-53; }

    // Samples a triple satisfying all four validity inequalities:
    // gamma free, alpha <= gamma, beta in [gamma - alpha, gamma].
    pyrofield::Params valid_params() {
        const double g = uniform();
        const double a = g * uniform();
        const double bmin = g - a;  // >= 0 since a <= g
        const double b = bmin + (g - bmin) * uniform();
        return pyrofield::validate_params(a, b, g);
    }

  private:
    std::uint64_t state_;
};

}  // namespace testutil
