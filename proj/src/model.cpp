#include "pyrofield/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pyrofield {

Params validate_params(double alpha, double beta, double gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw ConstraintViolation("parameters must be finite");
    if (alpha < 0.0)
        throw ConstraintViolation("alpha < 0 violates 0 <= alpha");
    if (beta < 0.0)
        throw ConstraintViolation("beta < 0 violates 0 <= beta");
    if (gamma < alpha)
        throw ConstraintViolation("gamma < alpha violates alpha <= gamma");
    if (gamma < beta)
        throw ConstraintViolation("gamma < beta violates beta <= gamma");
    if (gamma > 1.0)
        throw ConstraintViolation("gamma > 1 violates gamma <= 1");
    if (gamma > alpha + beta)
        throw ConstraintViolation("gamma > alpha+beta violates gamma <= alpha+beta");
    return Params{alpha, beta, gamma};
}

namespace {
std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}
}  // namespace

Boundary::Boundary(std::vector<std::uint32_t> fire_x, std::vector<std::uint32_t> fire_y)
    : fire_x_(sorted_unique(std::move(fire_x))),
      fire_y_(sorted_unique(std::move(fire_y))) {
    max_ignition_ = -1;
    if (!fire_x_.empty()) max_ignition_ = fire_x_.back();
    if (!fire_y_.empty())
        max_ignition_ = std::max<std::int64_t>(max_ignition_, fire_y_.back());
}

bool Boundary::in_fire_x(std::uint32_t j) const {
    return std::binary_search(fire_x_.begin(), fire_x_.end(), j);
}

bool Boundary::in_fire_y(std::uint32_t k) const {
    return std::binary_search(fire_y_.begin(), fire_y_.end(), k);
}

NeighborPair neighbor_statuses(const Boundary& boundary, const DiagonalState& prev,
                               std::uint32_t j) {
    const std::uint32_t next_diag = prev.n() + 1;
    if (j > next_diag)
        throw std::out_of_range("site index " + std::to_string(j) +
                                " out of range for diagonal " + std::to_string(next_diag));
    NeighborPair nb;
    nb.left = (j >= 1) ? static_cast<std::uint8_t>(prev.bit(j - 1))
                       : static_cast<std::uint8_t>(boundary.in_fire_y(next_diag));
    nb.bottom = (j <= prev.n()) ? static_cast<std::uint8_t>(prev.bit(j))
                                : static_cast<std::uint8_t>(boundary.in_fire_x(next_diag));
    return nb;
}

}  // namespace pyrofield
