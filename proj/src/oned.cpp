#include "pyrofield/oned.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pyrofield/errors.hpp"
#include "pyrofield/kernels.hpp"
#include "pyrofield/mc.hpp"
#include "pyrofield/rng.hpp"

namespace pyrofield {

OneDParams validate_oned(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConstraintViolation("p must lie in [0,1]");
    return OneDParams{p};
}

double marginal_burn(const OneDParams& params, std::uint64_t j) {
    return std::pow(params.p, static_cast<double>(j + 1));
}

double y_tail(const OneDParams& params, std::uint64_t n) {
    if (n == 0) return 1.0;
    return std::pow(params.p, static_cast<double>(n - 1));
}

std::pair<double, double> y_moments(const OneDParams& params) {
    if (params.p >= 1.0)
        throw DivergentMoments("moments diverge at p = 1 (the whole forest burns)");
    const double q = 1.0 - params.p;
    return {1.0 / q, params.p / (q * q)};
}

double OneDEmpirical::mean() const {
    double s = 0.0;
    for (std::size_t y = 0; y < counts.size(); ++y)
        s += static_cast<double>(y) * static_cast<double>(counts[y]);
    return s / static_cast<double>(replicas);
}

double OneDEmpirical::variance() const {
    const double m = mean();
    double s = 0.0;
    for (std::size_t y = 0; y < counts.size(); ++y) {
        const double d = static_cast<double>(y) - m;
        s += d * d * static_cast<double>(counts[y]);
    }
    return s / static_cast<double>(replicas);
}

double OneDEmpirical::tail_frequency(std::uint64_t n) const {
    std::uint64_t c = 0;
    for (std::size_t y = std::max<std::uint64_t>(n, 0); y < counts.size(); ++y)
        c += counts[y];
    return static_cast<double>(c) / static_cast<double>(replicas);
}

OneDEmpirical simulate_1d(const OneDParams& params, std::uint64_t replicas,
                          std::uint64_t seed, unsigned threads) {
    if (params.p >= 1.0)
        throw DivergentMoments("simulation does not terminate at p = 1");

    const auto scaled =
        static_cast<std::uint64_t>(std::llround(params.p * 4294967296.0));
    const std::uint32_t cut = scaled ? static_cast<std::uint32_t>(scaled - 1) : 0u;
    const bool live = scaled != 0;

    const unsigned nw = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(replicas, 1)));
    std::vector<std::vector<std::uint64_t>> local(nw);

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nw; ++t) {
        const std::uint64_t lo = replicas * t / nw;
        const std::uint64_t hi = replicas * (t + 1) / nw;
        auto work = [&, t, lo, hi] {
            auto& counts = local[t];
            for (std::uint64_t r = lo; r < hi; ++r) {
                std::uint64_t y = 1;  // the tree at -1
                if (live) {
                    std::uint32_t j = 0;
                    while (site_uniform_u32(seed, r, kTagOneDim, j) <= cut) {
                        ++y;
                        ++j;
                    }
                }
                if (counts.size() <= y) counts.resize(y + 1, 0);
                ++counts[y];
            }
        };
        if (nw == 1) work();
        else pool.emplace_back(work);
    }
    for (auto& th : pool) th.join();

    OneDEmpirical out;
    out.replicas = replicas;
    for (const auto& c : local) {
        if (out.counts.size() < c.size()) out.counts.resize(c.size(), 0);
        for (std::size_t y = 0; y < c.size(); ++y) out.counts[y] += c[y];
    }
    return out;
}

}  // namespace pyrofield
