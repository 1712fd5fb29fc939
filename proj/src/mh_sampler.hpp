#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cumulants.hpp"
#include "ising.hpp"

namespace aaudit {

// Chain schedule for Metropolis-Hastings sampling.
struct MhConfig {
    double beta_mh = 1.0;        // inverse temperature, >= 0
    std::int64_t num_samples = 1000;
    std::int64_t burn_in_sweeps = 1000;
    // Sweeps between recorded energies; 0 selects the default of one
    // record every num_spins sweeps.
    std::int64_t thinning_sweeps = 0;
    std::uint64_t seed = 0;
    // Propose spins in index order (default) or uniformly at random.
    bool random_order = false;
    // Optional fixed start; otherwise spins are drawn uniformly from the seed.
    std::optional<SpinConfig> start;
    bool record_configs = false;
};

struct ChainResult {
    EnergySample sample;
    SpinConfig final_config;
    // Populated only when MhConfig::record_configs is set.
    std::vector<SpinConfig> configs;
};

// Metropolis acceptance rule: 1 when the move lowers the energy, otherwise
// exp(-beta_mh * delta_energy).
double acceptance_probability(double delta_energy, double beta_mh);

// Runs one chain: burn-in, then one recorded energy every thinning
// interval until num_samples energies are collected. Energies are tracked
// incrementally through local flip deltas with a periodic from-scratch
// recomputation guard. Deterministic given the seed.
ChainResult run_chain(const IsingInstance& instance, const MhConfig& config);

// One independent chain per grid point; chain i uses seed = template seed
// + i, so a single-point grid reproduces run_chain verbatim. Chains may
// run in parallel; outputs are in grid order and scheduling-independent.
std::vector<std::pair<double, ChainResult>> sweep_beta(const IsingInstance& instance,
                                                       const std::vector<double>& beta_grid,
                                                       const MhConfig& config_template);

} // namespace aaudit
