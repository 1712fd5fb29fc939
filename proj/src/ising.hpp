#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aaudit {

// One spin configuration; entries are +1 or -1.
struct SpinConfig {
    std::vector<std::int8_t> spins;

    bool operator==(const SpinConfig&) const = default;
};

// Coupling term J * s_i * s_j. Stored with i < j.
struct Coupling {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

// Local field term h * s_i.
struct FieldTerm {
    int index = 0;
    double value = 0.0;
};

// Immutable Ising problem: H(s) = sum_{(i,j)} J_ij s_i s_j + sum_i h_i s_i.
// Couplings are normalized to i < j and sorted; duplicate pairs and
// out-of-range or self-coupling indices are rejected at construction.
class IsingInstance {
public:
    IsingInstance(int num_spins,
                  std::vector<Coupling> couplings,
                  std::vector<FieldTerm> fields);

    int num_spins() const noexcept { return num_spins_; }
    const std::vector<Coupling>& couplings() const noexcept { return couplings_; }
    const std::vector<FieldTerm>& fields() const noexcept { return fields_; }

    // Full Hamiltonian, summed over stored entries in their stored order.
    double energy(const SpinConfig& config) const;

    // Energy change from flipping spin k in `config`.
    double flip_delta(const SpinConfig& config, int k) const;

    // Field on spin k (0 when absent).
    double field_on(int k) const noexcept { return field_by_spin_[static_cast<std::size_t>(k)]; }

    // Coupled partners of spin k as (partner index, J value).
    const std::vector<std::pair<int, double>>& neighbors(int k) const noexcept {
        return adjacency_[static_cast<std::size_t>(k)];
    }

private:
    int num_spins_;
    std::vector<Coupling> couplings_;
    std::vector<FieldTerm> fields_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<double> field_by_spin_;
};

// QUBO problem min x^T Q x over binary x. Entries may address either
// triangle; construction folds everything to the upper triangle.
class QuboInstance {
public:
    struct Entry {
        int i = 0;
        int j = 0;
        double value = 0.0;
    };

    QuboInstance(int dimension, std::vector<Entry> entries);

    int dimension() const noexcept { return dimension_; }
    // Folded upper-triangular entries (i <= j), sorted.
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    double evaluate(const std::vector<int>& x) const;

private:
    int dimension_;
    std::vector<Entry> entries_;
};

// Ising equivalent of a QUBO under x = (s + 1) / 2:
// x^T Q x = energy(instance, s) + offset for every configuration.
struct IsingWithOffset {
    IsingInstance instance;
    double offset = 0.0;
};

IsingWithOffset qubo_to_ising(const QuboInstance& qubo);

// Exhaustive ground-state search result.
struct GroundResult {
    double e0 = 0.0;
    // Every minimizing configuration, ordered by configuration index
    // (spin k = bit k, bit set meaning +1).
    std::vector<SpinConfig> minimizers;
};

inline constexpr int kBruteForceCapDefault = 24;

// Exact minimum over all 2^N configurations. Refuses instances above
// `cap` spins. May split the search across threads; the result does not
// depend on the partitioning.
GroundResult brute_force_ground(const IsingInstance& instance,
                                int cap = kBruteForceCapDefault);

enum class Topology {
    full,      // every pair coupled
    grid,      // rectangular grid, rows x cols = N, no wraparound
    edge_list, // caller-provided edges
};

// Random instance with couplings J0 + eps, eps uniform on
// [-noise_scale, noise_scale], and fields uniform on
// [-field_scale, field_scale]. Deterministic for a given seed.
// `edges` is required for (and only used by) the edge_list topology.
IsingInstance random_instance(int num_spins,
                              Topology topology,
                              double base_coupling,
                              double noise_scale,
                              double field_scale,
                              std::uint64_t seed,
                              const std::vector<std::pair<int, int>>* edges = nullptr);

Topology topology_from_name(const std::string& name);
const char* topology_name(Topology topology);

} // namespace aaudit
