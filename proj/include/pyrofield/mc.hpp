#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pyrofield/kernels.hpp"
#include "pyrofield/model.hpp"

namespace pyrofield {

// Inclusive rectangular window of sites for burn-frequency accumulation.
struct RecordWindow {
    std::uint32_t j0 = 0, j1 = 0;
    std::uint32_t k0 = 0, k1 = 0;
};

struct SimConfig {
    Params params;
    Boundary boundary = Boundary::delta();
    std::uint32_t n_max = 0;
    std::uint64_t replicas = 1;
    std::uint64_t master_seed = 0;
    bool stop_on_extinction = true;
    std::optional<RecordWindow> record_sites;
};

struct ReplicaTrace {
    std::uint64_t replica_id = 0;
    std::vector<std::uint32_t> y;  // Y_n for n = 0..n_max
    std::optional<std::uint32_t> extinction_n;

    double z(std::uint32_t n) const { return static_cast<double>(y[n]) / (n + 1); }
};

// Per-diagonal observer: diagonal index, burnt count, and the n+1 status
// bits (padding bits zero). The pointer is only valid during the call.
using DiagonalObserver =
    std::function<void(std::uint32_t n, std::uint32_t y, const std::uint64_t* bits)>;

// Streaming simulation of one replica, two diagonals resident. Returns
// the number of site updates actually performed (extinct tails are
// extended analytically with zeros and not counted).
std::uint64_t simulate_replica_observe(const SimConfig& config, std::uint64_t replica_id,
                                       const Kernels& kernels, const DiagonalObserver& observe);

ReplicaTrace simulate_replica(const SimConfig& config, std::uint64_t replica_id,
                              const Kernels& kernels = active_kernels());

struct CoupledTrace {
    ReplicaTrace lo;
    ReplicaTrace hi;
    std::uint64_t domination_violations = 0;  // sites where lo burnt but hi did not
};

// Throws CouplingOrderViolation unless params are ordered componentwise,
// lo's ignition sets are subsets of hi's, and seed/n_max agree.
void validate_coupling(const SimConfig& lo, const SimConfig& hi);

// Both fields driven by the same per-site uniforms.
CoupledTrace simulate_coupled(const SimConfig& config_lo, const SimConfig& config_hi,
                              std::uint64_t replica_id,
                              const Kernels& kernels = active_kernels());

// Resolve a worker count: flag value wins, else PYROFIELD_THREADS, else
// hardware concurrency.
unsigned resolve_threads(unsigned flag_value);

// Run f(replica_id) for replica_id = 0..replicas-1 over `threads`
// workers in contiguous chunks. f must only touch per-replica state.
void parallel_replicas(std::uint64_t replicas, unsigned threads,
                       const std::function<void(std::uint64_t)>& f);

struct BurnGrid {
    RecordWindow window;
    std::uint64_t replicas = 0;
    std::vector<double> freq;  // row-major over (j, k) within the window

    double at(std::uint32_t j, std::uint32_t k) const {
        return freq[static_cast<std::size_t>(j - window.j0) * (window.k1 - window.k0 + 1) +
                    (k - window.k0)];
    }
};

// Per-site burn frequencies over config.record_sites across all replicas.
BurnGrid burn_frequency(const SimConfig& config, const Kernels& kernels = active_kernels(),
                        unsigned threads = 1);

}  // namespace pyrofield
