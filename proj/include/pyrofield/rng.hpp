#pragma once

#include <array>
#include <cstdint>

namespace pyrofield {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A block is a pure function of (counter, key), so every site's uniform
// can be regenerated independently of scheduling or replay order.
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Counter round_once(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    return Counter{hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Counter block(Counter c, Key k) {
    c = round_once(c, k);
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        c = round_once(c, k);
    }
    return c;
}

}  // namespace philox

// Stream tags keep distinct uses of the generator on disjoint counters.
// 2-D simulation uses the diagonal index directly (n_max stays far below
// the tag values); other consumers get reserved tags.
inline constexpr std::uint32_t kTagOneDim = 0xFFFFFFFFu;
inline constexpr std::uint32_t kTagTest = 0xFFFFFFFEu;

// One uniform 32-bit word per site: block index j>>2, lane j&3.
inline std::uint32_t site_uniform_u32(std::uint64_t seed, std::uint64_t replica,
                                      std::uint32_t tag, std::uint32_t j) {
    const philox::Counter c{j >> 2, tag, static_cast<std::uint32_t>(replica),
                            static_cast<std::uint32_t>(replica >> 32)};
    const philox::Key k{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32)};
    return philox::block(c, k)[j & 3];
}

// splitmix64 finalizer; used to derive per-cell seeds in sweeps.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace pyrofield
