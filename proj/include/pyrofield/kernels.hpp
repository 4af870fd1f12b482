#pragma once

#include <cmath>
#include <cstdint>

#include "pyrofield/model.hpp"

namespace pyrofield {

// Integer burn thresholds per neighbor class. A site burns iff its
// uniform word u satisfies live[cls] && u <= cut[cls], where
// cls = left<<1 | bottom. cut = round(p * 2^32) - 1; live separates
// p = 0 from the wrap-around of cut.
struct SiteThresholds {
    std::uint32_t cut[4];
    std::uint32_t live[4];

    static SiteThresholds from(const Params& p) {
        SiteThresholds t{};
        const double probs[4] = {0.0, p.beta, p.alpha, p.gamma};
        for (int i = 0; i < 4; ++i) {
            const auto scaled = static_cast<std::uint64_t>(
                std::llround(probs[i] * 4294967296.0));
            t.cut[i] = scaled ? static_cast<std::uint32_t>(scaled - 1) : 0u;
            t.live[i] = scaled ? 0xFFFFFFFFu : 0u;
        }
        return t;
    }
};

// Fill out[0 .. 4*nblocks) with uniform words for counter blocks
// 0..nblocks-1 of the stream keyed by (seed, replica, tag).
using FillFn = void (*)(std::uint64_t seed, std::uint64_t replica, std::uint32_t tag,
                        std::uint32_t nblocks, std::uint32_t* out);

// Advance one anti-diagonal: prev holds nsites-1 statuses (padding bits
// zero), next receives nsites statuses. u holds one word per site.
// left_edge / bottom_edge are the boundary statuses seen by the first
// and last site of the new diagonal.
using UpdateFn = void (*)(const std::uint64_t* prev, std::uint64_t* next,
                          std::uint32_t nsites, const std::uint32_t* u,
                          const SiteThresholds& th, bool left_edge, bool bottom_edge);

struct Kernels {
    FillFn fill;
    UpdateFn update;
    const char* name;
};

Kernels scalar_kernels();

// nullptr when the CPU lacks AVX2.
const Kernels* avx2_kernels();

// Best available implementation; override with PYROFIELD_FORCE_SCALAR=1.
const Kernels& active_kernels();

}  // namespace pyrofield
