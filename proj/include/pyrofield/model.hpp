#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "pyrofield/errors.hpp"

namespace pyrofield {

// Burn-probability triple (alpha, beta, gamma). Construct through
// validate_params so the ordering inequalities always hold.
struct Params {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

// Strict check of 0 <= alpha <= gamma, 0 <= beta <= gamma,
// gamma <= 1, gamma <= alpha + beta. No tolerance: the monotone
// coupling argument needs the inequalities exactly.
Params validate_params(double alpha, double beta, double gamma);

// Finite ignition index sets. fire_x holds the j with S(j,-1)=1,
// fire_y the k with S(-1,k)=1.
class Boundary {
  public:
    Boundary() = default;
    Boundary(std::vector<std::uint32_t> fire_x, std::vector<std::uint32_t> fire_y);

    static Boundary delta() { return Boundary({0}, {0}); }
    static Boundary empty() { return Boundary({}, {}); }

    bool in_fire_x(std::uint32_t j) const;
    bool in_fire_y(std::uint32_t k) const;

    // Largest ignition index over both sets, -1 when both are empty.
    // Past this index an all-zero diagonal is absorbing.
    std::int64_t max_ignition() const { return max_ignition_; }

    const std::vector<std::uint32_t>& fire_x() const { return fire_x_; }
    const std::vector<std::uint32_t>& fire_y() const { return fire_y_; }

    bool operator==(const Boundary&) const = default;

  private:
    std::vector<std::uint32_t> fire_x_;  // sorted, unique
    std::vector<std::uint32_t> fire_y_;  // sorted, unique
    std::int64_t max_ignition_ = -1;
};

// Statuses of the two sites feeding a target site: left = S(j-1,k),
// bottom = S(j,k-1).
struct NeighborPair {
    std::uint8_t left = 0;
    std::uint8_t bottom = 0;
};

// Binary statuses of the n+1 sites on anti-diagonal n; bit j is S(j, n-j).
class DiagonalState {
  public:
    explicit DiagonalState(std::uint32_t n)
        : n_(n), words_((n + 1 + 63) / 64, 0) {}

    std::uint32_t n() const { return n_; }
    std::uint32_t site_count() const { return n_ + 1; }

    bool bit(std::uint32_t j) const {
        return (words_[j >> 6] >> (j & 63)) & 1u;
    }
    void set_bit(std::uint32_t j, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (j & 63);
        if (v) words_[j >> 6] |= m;
        else words_[j >> 6] &= ~m;
    }
    void clear() { words_.assign(words_.size(), 0); }

    // Y_n: number of burnt sites on this diagonal.
    std::uint32_t popcount() const {
        std::uint32_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
        return c;
    }

    std::uint64_t* words() { return words_.data(); }
    const std::uint64_t* words() const { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }

  private:
    std::uint32_t n_;
    std::vector<std::uint64_t> words_;
};

// Conditional burn probability given the neighbor statuses:
// (0,0) -> 0, (1,0) -> alpha, (0,1) -> beta, (1,1) -> gamma.
inline double kernel(const Params& p, NeighborPair nb) {
    if (nb.left && nb.bottom) return p.gamma;
    if (nb.left) return p.alpha;
    if (nb.bottom) return p.beta;
    return 0.0;
}

// Neighbors of site j on diagonal prev.n()+1. Edge sites read the
// boundary conditions; interior sites read the previous diagonal.
NeighborPair neighbor_statuses(const Boundary& boundary, const DiagonalState& prev,
                               std::uint32_t j);

// Neighbors of the corner site (0,0), fed only by the boundary.
inline NeighborPair diagonal0_neighbors(const Boundary& boundary) {
    return NeighborPair{static_cast<std::uint8_t>(boundary.in_fire_y(0)),
                        static_cast<std::uint8_t>(boundary.in_fire_x(0))};
}

}  // namespace pyrofield
