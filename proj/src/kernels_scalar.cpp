#include "pyrofield/kernels.hpp"
#include "pyrofield/rng.hpp"

namespace pyrofield {
namespace {

void fill_scalar(std::uint64_t seed, std::uint64_t replica, std::uint32_t tag,
                 std::uint32_t nblocks, std::uint32_t* out) {
    const philox::Key key{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
    const auto rep_lo = static_cast<std::uint32_t>(replica);
    const auto rep_hi = static_cast<std::uint32_t>(replica >> 32);
    for (std::uint32_t b = 0; b < nblocks; ++b) {
        const auto w = philox::block({b, tag, rep_lo, rep_hi}, key);
        out[4 * b + 0] = w[0];
        out[4 * b + 1] = w[1];
        out[4 * b + 2] = w[2];
        out[4 * b + 3] = w[3];
    }
}

inline bool get_bit(const std::uint64_t* w, std::uint32_t j) {
    return (w[j >> 6] >> (j & 63)) & 1u;
}

void update_scalar(const std::uint64_t* prev, std::uint64_t* next,
                   std::uint32_t nsites, const std::uint32_t* u,
                   const SiteThresholds& th, bool left_edge, bool bottom_edge) {
    const std::uint32_t nwords = (nsites + 63) / 64;
    for (std::uint32_t w = 0; w < nwords; ++w) next[w] = 0;
    for (std::uint32_t j = 0; j < nsites; ++j) {
        const std::uint32_t left = (j == 0) ? static_cast<std::uint32_t>(left_edge)
                                            : static_cast<std::uint32_t>(get_bit(prev, j - 1));
        const std::uint32_t bottom = (j == nsites - 1)
                                         ? static_cast<std::uint32_t>(bottom_edge)
                                         : static_cast<std::uint32_t>(get_bit(prev, j));
        const std::uint32_t cls = (left << 1) | bottom;
        const std::uint64_t burn = th.live[cls] & static_cast<std::uint32_t>(-(u[j] <= th.cut[cls]));
        next[j >> 6] |= (burn & 1u) << (j & 63);
    }
}

}  // namespace

Kernels scalar_kernels() { return Kernels{fill_scalar, update_scalar, "scalar"}; }

}  // namespace pyrofield
