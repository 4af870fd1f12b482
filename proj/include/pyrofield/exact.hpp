#pragma once

#include <cstdint>
#include <vector>

#include "pyrofield/model.hpp"

namespace pyrofield {

struct ExactOptions {
    // Largest diagonal index for the dense forward distribution.
    std::uint32_t n_max_exact = 12;
    // Largest triangle for brute-force enumeration.
    std::uint32_t n_max_enum = 5;
};

// Exact probability table over the 2^(n+1) configurations of diagonal n.
// Index bit j is the status of site (j, n-j).
struct DiagonalDistribution {
    std::uint32_t n = 0;
    std::vector<double> probs;

    double sum() const;
    // P{S(j, n-j) = 1}.
    double marginal_one(std::uint32_t j) const;
    // Throws InternalConsistencyError when the table drifts from sum 1.
    void check_normalized(double tol = 1e-12) const;
};

struct SiteConstraint {
    std::uint32_t j = 0;
    std::uint32_t k = 0;
    bool status = false;
};

// Finitely many fixed site statuses; no site constrained twice.
struct CylinderEvent {
    std::vector<SiteConstraint> constraints;
};

// Distribution of Y_n = popcount of diagonal n.
struct YnPmf {
    std::uint32_t n = 0;
    std::vector<double> pmf;  // entry y = P{Y_n = y}, y = 0..n+1

    double mean_y() const;
    double mean_z() const;  // E[Z_n] = E[Y_n]/(n+1)
    void check_normalized(double tol = 1e-12) const;
};

// Full joint over the triangle {j+k <= n}, sites ordered diagonal-major:
// site (d, j) on diagonal d is bit d*(d+1)/2 + j.
struct TriangleJoint {
    std::uint32_t n = 0;
    std::vector<double> probs;

    static std::uint32_t site_index(std::uint32_t d, std::uint32_t j) {
        return d * (d + 1) / 2 + j;
    }
    DiagonalDistribution diagonal_marginal(std::uint32_t d) const;
    double event_probability(const CylinderEvent& event) const;
};

DiagonalDistribution initial_distribution(const Params& params, const Boundary& boundary);

// One forward step of the diagonal law (dense transfer over all
// predecessor configurations). Deterministic accumulation order.
DiagonalDistribution step_distribution(const Params& params, const Boundary& boundary,
                                       const DiagonalDistribution& dist,
                                       const ExactOptions& opts = {});

YnPmf yn_pmf(const DiagonalDistribution& dist);

// Probability of a cylinder event by direct enumeration of the smallest
// covering triangle. Independent of the forward-step code path.
double cylinder_probability(const Params& params, const Boundary& boundary,
                            const CylinderEvent& event, const ExactOptions& opts = {});

// Brute-force oracle: exact joint over all sites of the triangle.
TriangleJoint triangle_enumeration(const Params& params, const Boundary& boundary,
                                   std::uint32_t n, const ExactOptions& opts = {});

}  // namespace pyrofield
