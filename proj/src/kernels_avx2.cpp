#ifdef __AVX2__
#include <immintrin.h>

#include <cstring>

#include "pyrofield/kernels.hpp"
#include "pyrofield/rng.hpp"

namespace pyrofield {
namespace {

// One Philox round on 8 independent blocks held lane-wise.
// AVX2 has no mulhi_epu32, so the high halves come from the 64-bit
// products of the even and odd lanes.
inline void philox8_round(__m256i& c0, __m256i& c1, __m256i& c2, __m256i& c3,
                          __m256i k0, __m256i k1) {
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(philox::kMult0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(philox::kMult1));

    const __m256i p0e = _mm256_mul_epu32(c0, m0);
    const __m256i p0o = _mm256_mul_epu32(_mm256_srli_epi64(c0, 32), m0);
    const __m256i p1e = _mm256_mul_epu32(c2, m1);
    const __m256i p1o = _mm256_mul_epu32(_mm256_srli_epi64(c2, 32), m1);

    const __m256i lo0 = _mm256_blend_epi32(p0e, _mm256_slli_epi64(p0o, 32), 0xAA);
    const __m256i hi0 = _mm256_blend_epi32(_mm256_srli_epi64(p0e, 32), p0o, 0xAA);
    const __m256i lo1 = _mm256_blend_epi32(p1e, _mm256_slli_epi64(p1o, 32), 0xAA);
    const __m256i hi1 = _mm256_blend_epi32(_mm256_srli_epi64(p1e, 32), p1o, 0xAA);

    const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
    const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
    c0 = n0;
    c1 = lo1;
    c2 = n2;
    c3 = lo0;
}

void fill_avx2(std::uint64_t seed, std::uint64_t replica, std::uint32_t tag,
               std::uint32_t nblocks, std::uint32_t* out) {
    const __m256i key0 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(seed)));
    const __m256i key1 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(seed >> 32)));
    const __m256i w0 = _mm256_set1_epi32(static_cast<int>(philox::kWeyl0));
    const __m256i w1 = _mm256_set1_epi32(static_cast<int>(philox::kWeyl1));
    const __m256i tagv = _mm256_set1_epi32(static_cast<int>(tag));
    const __m256i repl = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(replica)));
    const __m256i reph = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(replica >> 32)));
    const __m256i ramp = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    std::uint32_t b = 0;
    for (; b + 8 <= nblocks; b += 8) {
        __m256i c0 = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(b)), ramp);
        __m256i c1 = tagv, c2 = repl, c3 = reph;
        __m256i k0 = key0, k1 = key1;
        philox8_round(c0, c1, c2, c3, k0, k1);
        for (int r = 1; r < 10; ++r) {
            k0 = _mm256_add_epi32(k0, w0);
            k1 = _mm256_add_epi32(k1, w1);
            philox8_round(c0, c1, c2, c3, k0, k1);
        }
        // 8x4 transpose into per-block word order.
        const __m256i t0 = _mm256_unpacklo_epi32(c0, c1);
        const __m256i t1 = _mm256_unpackhi_epi32(c0, c1);
        const __m256i t2 = _mm256_unpacklo_epi32(c2, c3);
        const __m256i t3 = _mm256_unpackhi_epi32(c2, c3);
        const __m256i u0 = _mm256_unpacklo_epi64(t0, t2);
        const __m256i u1 = _mm256_unpackhi_epi64(t0, t2);
        const __m256i u2 = _mm256_unpacklo_epi64(t1, t3);
        const __m256i u3 = _mm256_unpackhi_epi64(t1, t3);
        auto* dst = reinterpret_cast<__m256i*>(out + 4 * b);
        _mm256_storeu_si256(dst + 0, _mm256_permute2x128_si256(u0, u1, 0x20));
        _mm256_storeu_si256(dst + 1, _mm256_permute2x128_si256(u2, u3, 0x20));
        _mm256_storeu_si256(dst + 2, _mm256_permute2x128_si256(u0, u1, 0x31));
        _mm256_storeu_si256(dst + 3, _mm256_permute2x128_si256(u2, u3, 0x31));
    }
    // Remaining blocks: scalar reference, identical output.
    const philox::Key key{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
    for (; b < nblocks; ++b) {
        const auto w = philox::block({b, tag, static_cast<std::uint32_t>(replica),
                                      static_cast<std::uint32_t>(replica >> 32)},
                                     key);
        std::memcpy(out + 4 * b, w.data(), sizeof(w));
    }
}

inline bool get_bit(const std::uint64_t* w, std::uint32_t j) {
    return (w[j >> 6] >> (j & 63)) & 1u;
}

// Bits j0..j0+7 of a bit array with nbits valid bits (padding zero).
inline std::uint32_t byte_at(const std::uint64_t* w, std::uint32_t nbits, std::uint32_t j0) {
    if (j0 >= nbits) return 0;
    const std::uint32_t idx = j0 >> 6, off = j0 & 63;
    std::uint64_t v = w[idx] >> off;
    const std::uint32_t nwords = (nbits + 63) / 64;
    if (off > 56 && idx + 1 < nwords) v |= w[idx + 1] << (64 - off);
    return static_cast<std::uint32_t>(v & 0xFF);
}

void update_avx2(const std::uint64_t* prev, std::uint64_t* next,
                 std::uint32_t nsites, const std::uint32_t* u,
                 const SiteThresholds& th, bool left_edge, bool bottom_edge) {
    const std::uint32_t nwords = (nsites + 63) / 64;
    for (std::uint32_t w = 0; w < nwords; ++w) next[w] = 0;
    auto* out_bytes = reinterpret_cast<unsigned char*>(next);

    const std::uint32_t prev_bits = nsites - 1;
    const __m256i lanebit = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
    const __m256i sign = _mm256_set1_epi32(static_cast<int>(0x80000000u));
    const __m256i cut0 = _mm256_set1_epi32(static_cast<int>(th.cut[0]));
    const __m256i cut1 = _mm256_set1_epi32(static_cast<int>(th.cut[1]));
    const __m256i cut2 = _mm256_set1_epi32(static_cast<int>(th.cut[2]));
    const __m256i cut3 = _mm256_set1_epi32(static_cast<int>(th.cut[3]));
    const __m256i liv0 = _mm256_set1_epi32(static_cast<int>(th.live[0]));
    const __m256i liv1 = _mm256_set1_epi32(static_cast<int>(th.live[1]));
    const __m256i liv2 = _mm256_set1_epi32(static_cast<int>(th.live[2]));
    const __m256i liv3 = _mm256_set1_epi32(static_cast<int>(th.live[3]));

    std::uint32_t j0 = 0;
    // Full groups of 8 that do not contain the last site.
    for (; j0 + 8 < nsites; j0 += 8) {
        std::uint32_t lb;
        if (j0 == 0) {
            lb = (byte_at(prev, prev_bits, 0) << 1 | static_cast<std::uint32_t>(left_edge)) & 0xFF;
        } else {
            lb = byte_at(prev, prev_bits, j0 - 1);
        }
        const std::uint32_t bb = byte_at(prev, prev_bits, j0);

        const __m256i lv = _mm256_set1_epi32(static_cast<int>(lb));
        const __m256i bv = _mm256_set1_epi32(static_cast<int>(bb));
        const __m256i lmask = _mm256_cmpeq_epi32(_mm256_and_si256(lv, lanebit), lanebit);
        const __m256i bmask = _mm256_cmpeq_epi32(_mm256_and_si256(bv, lanebit), lanebit);

        const __m256i cutv = _mm256_blendv_epi8(_mm256_blendv_epi8(cut0, cut1, bmask),
                                                _mm256_blendv_epi8(cut2, cut3, bmask), lmask);
        const __m256i livv = _mm256_blendv_epi8(_mm256_blendv_epi8(liv0, liv1, bmask),
                                                _mm256_blendv_epi8(liv2, liv3, bmask), lmask);

        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + j0));
        const __m256i gt = _mm256_cmpgt_epi32(_mm256_xor_si256(x, sign),
                                              _mm256_xor_si256(cutv, sign));
        const __m256i burn = _mm256_andnot_si256(gt, livv);
        const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(burn));
        out_bytes[j0 >> 3] = static_cast<unsigned char>(mask);
    }
    // Tail sites (and the bottom-edge site): scalar reference formula.
    for (std::uint32_t j = j0; j < nsites; ++j) {
        const std::uint32_t left = (j == 0) ? static_cast<std::uint32_t>(left_edge)
                                            : static_cast<std::uint32_t>(get_bit(prev, j - 1));
        const std::uint32_t bottom = (j == nsites - 1)
                                         ? static_cast<std::uint32_t>(bottom_edge)
                                         : static_cast<std::uint32_t>(get_bit(prev, j));
        const std::uint32_t cls = (left << 1) | bottom;
        const std::uint32_t burn =
            th.live[cls] & static_cast<std::uint32_t>(-(u[j] <= th.cut[cls]));
        next[j >> 6] |= static_cast<std::uint64_t>(burn & 1u) << (j & 63);
    }
}

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels k{fill_avx2, update_avx2, "avx2"};
    return __builtin_cpu_supports("avx2") ? &k : nullptr;
}

}  // namespace pyrofield

#else

#include "pyrofield/kernels.hpp"

namespace pyrofield {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace pyrofield

#endif
