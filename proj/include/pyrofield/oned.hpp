#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pyrofield {

// Single-parameter chain: a tree burns with probability p when its left
// neighbor is burnt, never otherwise. Fire starts at index -1.
struct OneDParams {
    double p = 0.0;
};

OneDParams validate_oned(double p);

// P{S(j) = 1} = p^(j+1).
double marginal_burn(const OneDParams& params, std::uint64_t j);

// P{Y >= n} = p^(n-1) for n >= 1, where Y counts burnt trees including
// the one at -1 (so Y >= 1 always).
double y_tail(const OneDParams& params, std::uint64_t n);

// (E[Y], V[Y]) = (1/(1-p), p/(1-p)^2). Throws DivergentMoments at p = 1.
std::pair<double, double> y_moments(const OneDParams& params);

struct OneDEmpirical {
    std::uint64_t replicas = 0;
    std::vector<std::uint64_t> counts;  // counts[y] = #replicas with Y == y

    double mean() const;
    double variance() const;
    // empirical P{Y >= n}
    double tail_frequency(std::uint64_t n) const;
};

// Simulates the burn front replica by replica; requires p < 1.
OneDEmpirical simulate_1d(const OneDParams& params, std::uint64_t replicas,
                          std::uint64_t seed, unsigned threads = 1);

}  // namespace pyrofield
