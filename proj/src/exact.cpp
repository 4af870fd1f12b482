#include "pyrofield/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "pyrofield/errors.hpp"

namespace pyrofield {

namespace {

// Neighbor statuses of site j on diagonal d, given the configuration of
// diagonal d-1 as a bitmask (d >= 1).
inline NeighborPair config_neighbors(const Boundary& boundary, std::uint32_t d,
                                     std::uint32_t prev_mask, std::uint32_t j) {
    NeighborPair nb;
    nb.left = (j >= 1) ? static_cast<std::uint8_t>((prev_mask >> (j - 1)) & 1u)
                       : static_cast<std::uint8_t>(boundary.in_fire_y(d));
    nb.bottom = (j <= d - 1) ? static_cast<std::uint8_t>((prev_mask >> j) & 1u)
                             : static_cast<std::uint8_t>(boundary.in_fire_x(d));
    return nb;
}

void check_table(const std::vector<double>& t, double tol, const char* what) {
    double s = 0.0;
    for (double p : t) {
        if (p < 0.0 || p > 1.0)
            throw InternalConsistencyError(std::string(what) + ": entry outside [0,1]");
        s += p;
    }
    if (std::abs(s - 1.0) > tol)
        throw InternalConsistencyError(std::string(what) + ": sum deviates from 1 by " +
                                       std::to_string(std::abs(s - 1.0)));
}

}  // namespace

double DiagonalDistribution::sum() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double DiagonalDistribution::marginal_one(std::uint32_t j) const {
    double s = 0.0;
    for (std::size_t cfg = 0; cfg < probs.size(); ++cfg)
        if ((cfg >> j) & 1u) s += probs[cfg];
    return s;
}

void DiagonalDistribution::check_normalized(double tol) const {
    check_table(probs, tol, "diagonal distribution");
}

double YnPmf::mean_y() const {
    double s = 0.0;
    for (std::size_t y = 0; y < pmf.size(); ++y) s += static_cast<double>(y) * pmf[y];
    return s;
}

double YnPmf::mean_z() const { return mean_y() / (n + 1); }

void YnPmf::check_normalized(double tol) const { check_table(pmf, tol, "Y_n pmf"); }

DiagonalDistribution initial_distribution(const Params& params, const Boundary& boundary) {
    const double p1 = kernel(params, diagonal0_neighbors(boundary));
    return DiagonalDistribution{0, {1.0 - p1, p1}};
}

DiagonalDistribution step_distribution(const Params& params, const Boundary& boundary,
                                       const DiagonalDistribution& dist,
                                       const ExactOptions& opts) {
    const std::uint32_t m = dist.n;  // predecessor diagonal
    const std::uint32_t next_n = m + 1;
    if (next_n > opts.n_max_exact)
        throw ExactLimitExceeded("diagonal " + std::to_string(next_n) +
                                 " exceeds n_max_exact = " + std::to_string(opts.n_max_exact));

    const std::size_t prev_size = std::size_t{1} << (m + 1);
    const std::size_t next_size = std::size_t{1} << (m + 2);
    if (dist.probs.size() != prev_size)
        throw InternalConsistencyError("distribution table has wrong size");

    std::vector<double> out(next_size, 0.0);
    std::vector<double> scratch(next_size);
    std::vector<double> kappa(m + 2);

    for (std::size_t prev = 0; prev < prev_size; ++prev) {
        const double p_prev = dist.probs[prev];
        if (p_prev == 0.0) continue;
        for (std::uint32_t j = 0; j <= m + 1; ++j)
            kappa[j] = kernel(params, config_neighbors(boundary, next_n,
                                                       static_cast<std::uint32_t>(prev), j));
        // Expand the product of independent Bernoullis site by site.
        scratch[0] = p_prev;
        std::size_t len = 1;
        for (std::uint32_t j = 0; j <= m + 1; ++j) {
            const double k1 = kappa[j];
            const double k0 = 1.0 - k1;
            const std::size_t bit = std::size_t{1} << j;
            for (std::size_t c = len; c-- > 0;) {
                const double v = scratch[c];
                scratch[c | bit] = v * k1;
                scratch[c] = v * k0;
            }
            len <<= 1;
        }
        for (std::size_t c = 0; c < next_size; ++c) out[c] += scratch[c];
    }

    DiagonalDistribution result{next_n, std::move(out)};
    result.check_normalized();
    return result;
}

YnPmf yn_pmf(const DiagonalDistribution& dist) {
    YnPmf r;
    r.n = dist.n;
    r.pmf.assign(dist.n + 2, 0.0);
    for (std::size_t cfg = 0; cfg < dist.probs.size(); ++cfg)
        r.pmf[std::popcount(cfg)] += dist.probs[cfg];
    return r;
}

namespace {

void validate_event(const CylinderEvent& event) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& c : event.constraints)
        if (!seen.insert({c.j, c.k}).second)
            throw std::invalid_argument("site constrained twice in cylinder event");
}

std::uint32_t triangle_sites(std::uint32_t n) { return (n + 1) * (n + 2) / 2; }

void check_enum_limit(std::uint32_t n, const ExactOptions& opts) {
    if (n > opts.n_max_enum || triangle_sites(n) > 25)
        throw EnumLimitExceeded("triangle n = " + std::to_string(n) +
                                " exceeds n_max_enum = " + std::to_string(opts.n_max_enum));
}

// Shared recursion shape for triangle walks: assigns sites diagonal by
// diagonal, carrying the previous and current diagonal as bitmasks.
template <class Leaf, class Choose>
void walk_triangle(const Params& params, const Boundary& boundary, std::uint32_t n,
                   std::uint32_t d, std::uint32_t j, std::uint32_t prev_mask,
                   std::uint32_t cur_mask, std::uint32_t cfg, double prob,
                   const Leaf& leaf, const Choose& choose) {
    if (j > d) {
        if (d == n) {
            leaf(cfg, prob);
            return;
        }
        walk_triangle(params, boundary, n, d + 1, 0, cur_mask, 0, cfg, prob, leaf, choose);
        return;
    }
    const NeighborPair nb = (d == 0) ? diagonal0_neighbors(boundary)
                                     : config_neighbors(boundary, d, prev_mask, j);
    const double kappa = kernel(params, nb);
    const std::uint32_t site = TriangleJoint::site_index(d, j);
    // choose() limits the admissible statuses (cylinder constraints).
    for (std::uint32_t s : {0u, 1u}) {
        if (!choose(d, j, s)) continue;
        const double f = s ? kappa : 1.0 - kappa;
        if (f == 0.0) continue;
        walk_triangle(params, boundary, n, d, j + 1, prev_mask,
                      cur_mask | (s << j), cfg | (s << site), prob * f, leaf, choose);
    }
}

}  // namespace

DiagonalDistribution TriangleJoint::diagonal_marginal(std::uint32_t d) const {
    const std::uint32_t off = site_index(d, 0);
    const std::uint32_t width = d + 1;
    DiagonalDistribution out{d, std::vector<double>(std::size_t{1} << width, 0.0)};
    const std::uint32_t mask = (width < 32) ? ((1u << width) - 1u) : 0xFFFFFFFFu;
    for (std::size_t cfg = 0; cfg < probs.size(); ++cfg)
        out.probs[(cfg >> off) & mask] += probs[cfg];
    return out;
}

double TriangleJoint::event_probability(const CylinderEvent& event) const {
    validate_event(event);
    std::uint32_t want = 0, care = 0;
    for (const auto& c : event.constraints) {
        const std::uint32_t bit = 1u << site_index(c.j + c.k, c.j);
        care |= bit;
        if (c.status) want |= bit;
    }
    double s = 0.0;
    for (std::size_t cfg = 0; cfg < probs.size(); ++cfg)
        if ((cfg & care) == want) s += probs[cfg];
    return s;
}

TriangleJoint triangle_enumeration(const Params& params, const Boundary& boundary,
                                   std::uint32_t n, const ExactOptions& opts) {
    check_enum_limit(n, opts);
    TriangleJoint joint;
    joint.n = n;
    joint.probs.assign(std::size_t{1} << triangle_sites(n), 0.0);
    walk_triangle(
        params, boundary, n, 0, 0, 0, 0, 0, 1.0,
        [&](std::uint32_t cfg, double p) { joint.probs[cfg] += p; },
        [](std::uint32_t, std::uint32_t, std::uint32_t) { return true; });
    check_table(joint.probs, 1e-12, "triangle joint");
    return joint;
}

double cylinder_probability(const Params& params, const Boundary& boundary,
                            const CylinderEvent& event, const ExactOptions& opts) {
    validate_event(event);
    if (event.constraints.empty()) return 1.0;
    std::uint32_t n = 0;
    for (const auto& c : event.constraints) n = std::max(n, c.j + c.k);
    check_enum_limit(n, opts);

    // required[site] = -1 free, 0/1 pinned.
    std::vector<int> required(triangle_sites(n), -1);
    for (const auto& c : event.constraints)
        required[TriangleJoint::site_index(c.j + c.k, c.j)] = c.status ? 1 : 0;

    double total = 0.0;
    walk_triangle(
        params, boundary, n, 0, 0, 0, 0, 0, 1.0,
        [&](std::uint32_t, double p) { total += p; },
        [&](std::uint32_t d, std::uint32_t j, std::uint32_t s) {
            const int r = required[TriangleJoint::site_index(d, j)];
            return r < 0 || static_cast<std::uint32_t>(r) == s;
        });
    return total;
}

}  // namespace pyrofield
