#include "pyrofield/mc.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "pyrofield/errors.hpp"
#include "pyrofield/rng.hpp"

namespace pyrofield {

namespace {

struct DiagonalBuffers {
    std::vector<std::uint64_t> prev;
    std::vector<std::uint64_t> next;
    std::vector<std::uint32_t> uniforms;

    explicit DiagonalBuffers(std::uint32_t n_max) {
        const std::size_t words = (static_cast<std::size_t>(n_max) + 1 + 63) / 64;
        prev.assign(words, 0);
        next.assign(words, 0);
        // fill() writes whole 4-word blocks; round up.
        uniforms.assign(((static_cast<std::size_t>(n_max) + 1 + 3) / 4) * 4, 0);
    }
};

std::uint32_t popcount_words(const std::uint64_t* w, std::uint32_t nsites) {
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < (nsites + 63) / 64; ++i)
        c += static_cast<std::uint32_t>(std::popcount(w[i]));
    return c;
}

// Drives one replica to n_max, calling sink per diagonal. Generic over
// the per-diagonal body so the coupled simulation can share the loop.
std::uint64_t run_replica(const SimConfig& config, std::uint64_t replica_id,
                          const Kernels& kernels, DiagonalBuffers& buf,
                          const DiagonalObserver& observe) {
    const SiteThresholds th = SiteThresholds::from(config.params);
    const std::int64_t max_ignition = config.boundary.max_ignition();
    std::uint64_t updates = 0;

    for (std::uint32_t n = 0; n <= config.n_max; ++n) {
        const std::uint32_t nsites = n + 1;
        kernels.fill(config.master_seed, replica_id, n, (nsites + 3) / 4,
                     buf.uniforms.data());
        kernels.update(buf.prev.data(), buf.next.data(), nsites, buf.uniforms.data(), th,
                       config.boundary.in_fire_y(n), config.boundary.in_fire_x(n));
        updates += nsites;
        const std::uint32_t y = popcount_words(buf.next.data(), nsites);
        observe(n, y, buf.next.data());
        if (y == 0 && static_cast<std::int64_t>(n) > max_ignition &&
            config.stop_on_extinction) {
            // Absorbed: extend with exact zeros, no further sampling.
            std::fill(buf.next.begin(), buf.next.end(), 0);
            for (std::uint32_t m = n + 1; m <= config.n_max; ++m)
                observe(m, 0, buf.next.data());
            return updates;
        }
        std::swap(buf.prev, buf.next);
    }
    return updates;
}

}  // namespace

std::uint64_t simulate_replica_observe(const SimConfig& config, std::uint64_t replica_id,
                                       const Kernels& kernels,
                                       const DiagonalObserver& observe) {
    DiagonalBuffers buf(config.n_max);
    return run_replica(config, replica_id, kernels, buf, observe);
}

ReplicaTrace simulate_replica(const SimConfig& config, std::uint64_t replica_id,
                              const Kernels& kernels) {
    ReplicaTrace trace;
    trace.replica_id = replica_id;
    trace.y.resize(config.n_max + 1);
    const std::int64_t max_ignition = config.boundary.max_ignition();
    simulate_replica_observe(config, replica_id, kernels,
                             [&](std::uint32_t n, std::uint32_t y, const std::uint64_t*) {
                                 trace.y[n] = y;
                                 if (!trace.extinction_n && y == 0 &&
                                     static_cast<std::int64_t>(n) > max_ignition)
                                     trace.extinction_n = n;
                             });
    return trace;
}

void validate_coupling(const SimConfig& lo, const SimConfig& hi) {
    if (lo.params.alpha > hi.params.alpha || lo.params.beta > hi.params.beta ||
        lo.params.gamma > hi.params.gamma)
        throw CouplingOrderViolation("lo parameters must not exceed hi parameters");
    for (std::uint32_t j : lo.boundary.fire_x())
        if (!hi.boundary.in_fire_x(j))
            throw CouplingOrderViolation("lo fire_x must be a subset of hi fire_x");
    for (std::uint32_t k : lo.boundary.fire_y())
        if (!hi.boundary.in_fire_y(k))
            throw CouplingOrderViolation("lo fire_y must be a subset of hi fire_y");
    if (lo.master_seed != hi.master_seed)
        throw CouplingOrderViolation("coupled configs must share the master seed");
    if (lo.n_max != hi.n_max)
        throw CouplingOrderViolation("coupled configs must share n_max");
    validate_params(lo.params.alpha, lo.params.beta, lo.params.gamma);
    validate_params(hi.params.alpha, hi.params.beta, hi.params.gamma);
}

CoupledTrace simulate_coupled(const SimConfig& config_lo, const SimConfig& config_hi,
                              std::uint64_t replica_id, const Kernels& kernels) {
    validate_coupling(config_lo, config_hi);

    const SiteThresholds th_lo = SiteThresholds::from(config_lo.params);
    const SiteThresholds th_hi = SiteThresholds::from(config_hi.params);
    const std::uint32_t n_max = config_lo.n_max;
    DiagonalBuffers lo(n_max), hi(n_max);

    CoupledTrace out;
    out.lo.replica_id = out.hi.replica_id = replica_id;
    out.lo.y.resize(n_max + 1);
    out.hi.y.resize(n_max + 1);
    const std::int64_t mi_lo = config_lo.boundary.max_ignition();
    const std::int64_t mi_hi = config_hi.boundary.max_ignition();

    const std::size_t nwords = lo.prev.size();
    bool absorbed = false;
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        const std::uint32_t nsites = n + 1;
        std::uint32_t y_lo = 0, y_hi = 0;
        if (!absorbed) {
            kernels.fill(config_lo.master_seed, replica_id, n, (nsites + 3) / 4,
                         lo.uniforms.data());
            kernels.update(lo.prev.data(), lo.next.data(), nsites, lo.uniforms.data(), th_lo,
                           config_lo.boundary.in_fire_y(n), config_lo.boundary.in_fire_x(n));
            kernels.update(hi.prev.data(), hi.next.data(), nsites, lo.uniforms.data(), th_hi,
                           config_hi.boundary.in_fire_y(n), config_hi.boundary.in_fire_x(n));
            y_lo = popcount_words(lo.next.data(), nsites);
            y_hi = popcount_words(hi.next.data(), nsites);
            for (std::size_t w = 0; w < nwords; ++w)
                out.domination_violations +=
                    std::popcount(lo.next.data()[w] & ~hi.next.data()[w]);
            std::swap(lo.prev, lo.next);
            std::swap(hi.prev, hi.next);
            // hi extinct past both ignition horizons forces lo extinct too.
            if (y_hi == 0 && y_lo == 0 && static_cast<std::int64_t>(n) > mi_hi &&
                static_cast<std::int64_t>(n) > mi_lo &&
                config_lo.stop_on_extinction && config_hi.stop_on_extinction)
                absorbed = true;
        }
        out.lo.y[n] = y_lo;
        out.hi.y[n] = y_hi;
        if (!out.lo.extinction_n && y_lo == 0 && static_cast<std::int64_t>(n) > mi_lo)
            out.lo.extinction_n = n;
        if (!out.hi.extinction_n && y_hi == 0 && static_cast<std::int64_t>(n) > mi_hi)
            out.hi.extinction_n = n;
    }
    return out;
}

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("PYROFIELD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_replicas(std::uint64_t replicas, unsigned threads,
                       const std::function<void(std::uint64_t)>& f) {
    if (threads <= 1 || replicas <= 1) {
        for (std::uint64_t r = 0; r < replicas; ++r) f(r);
        return;
    }
    const unsigned nw = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, replicas));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned t = 0; t < nw; ++t) {
        const std::uint64_t lo = replicas * t / nw;
        const std::uint64_t hi = replicas * (t + 1) / nw;
        pool.emplace_back([&f, lo, hi] {
            for (std::uint64_t r = lo; r < hi; ++r) f(r);
        });
    }
    for (auto& th : pool) th.join();
}

BurnGrid burn_frequency(const SimConfig& config, const Kernels& kernels, unsigned threads) {
    if (!config.record_sites)
        throw std::invalid_argument("burn_frequency requires record_sites");
    const RecordWindow w = *config.record_sites;
    if (w.j1 < w.j0 || w.k1 < w.k0)
        throw std::invalid_argument("record window is empty");
    if (w.j1 + w.k1 > config.n_max)
        throw std::invalid_argument("record window exceeds n_max");

    const std::size_t cols = w.k1 - w.k0 + 1;
    const std::size_t cells = (static_cast<std::size_t>(w.j1 - w.j0) + 1) * cols;
    const unsigned nw = static_cast<unsigned>(std::min<std::uint64_t>(
        std::max(1u, threads), config.replicas));
    std::vector<std::vector<std::uint64_t>> counts(nw,
                                                   std::vector<std::uint64_t>(cells, 0));

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nw; ++t) {
        const std::uint64_t lo = config.replicas * t / nw;
        const std::uint64_t hi = config.replicas * (t + 1) / nw;
        auto work = [&, t, lo, hi] {
            auto& local = counts[t];
            for (std::uint64_t r = lo; r < hi; ++r) {
                simulate_replica_observe(
                    config, r, kernels,
                    [&](std::uint32_t n, std::uint32_t y, const std::uint64_t* bits) {
                        if (y == 0 || n < w.j0 + w.k0 || n > w.j1 + w.k1) return;
                        // sites (j, n-j) inside the window
                        const std::uint32_t jlo =
                            std::max(w.j0, n >= w.k1 ? n - w.k1 : 0u);
                        const std::uint32_t jhi = std::min(w.j1, n - w.k0);
                        for (std::uint32_t j = jlo; j <= jhi && j <= n; ++j) {
                            if ((bits[j >> 6] >> (j & 63)) & 1u)
                                ++local[(j - w.j0) * cols + (n - j - w.k0)];
                        }
                    });
            }
        };
        if (nw == 1) work();
        else pool.emplace_back(work);
    }
    for (auto& th : pool) th.join();

    BurnGrid grid;
    grid.window = w;
    grid.replicas = config.replicas;
    grid.freq.assign(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        std::uint64_t total = 0;
        for (unsigned t = 0; t < nw; ++t) total += counts[t][c];
        grid.freq[c] = static_cast<double>(total) / static_cast<double>(config.replicas);
    }
    return grid;
}

}  // namespace pyrofield
