#include "ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace aaudit {

namespace {

SpinConfig config_from_index(int num_spins, std::uint64_t index) {
    SpinConfig config;
    config.spins.resize(static_cast<std::size_t>(num_spins));
    for (int k = 0; k < num_spins; ++k) {
        config.spins[static_cast<std::size_t>(k)] =
            ((index >> k) & 1u) ? std::int8_t{1} : std::int8_t{-1};
    }
    return config;
}

} // namespace

IsingInstance::IsingInstance(int num_spins,
                             std::vector<Coupling> couplings,
                             std::vector<FieldTerm> fields)
    : num_spins_(num_spins),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)) {
    if (num_spins_ < 1) {
        fail(errc::invalid_argument, "num_spins must be at least 1");
    }
    for (auto& c : couplings_) {
        if (c.i == c.j) {
            fail(errc::invalid_argument,
                 "self-coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") is not allowed");
        }
        if (c.i > c.j) std::swap(c.i, c.j);
        if (c.i < 0 || c.j >= num_spins_) {
            fail(errc::invalid_argument,
                 "coupling index pair (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                     ") out of range for " + std::to_string(num_spins_) + " spins");
        }
    }
    std::sort(couplings_.begin(), couplings_.end(), [](const Coupling& a, const Coupling& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < couplings_.size(); ++k) {
        if (couplings_[k - 1].i == couplings_[k].i && couplings_[k - 1].j == couplings_[k].j) {
            fail(errc::invalid_argument,
                 "duplicate coupling pair (" + std::to_string(couplings_[k].i) + "," +
                     std::to_string(couplings_[k].j) + ")");
        }
    }
    for (const auto& f : fields_) {
        if (f.index < 0 || f.index >= num_spins_) {
            fail(errc::invalid_argument,
                 "field index " + std::to_string(f.index) + " out of range for " +
                     std::to_string(num_spins_) + " spins");
        }
    }
    std::sort(fields_.begin(), fields_.end(),
              [](const FieldTerm& a, const FieldTerm& b) { return a.index < b.index; });
    for (std::size_t k = 1; k < fields_.size(); ++k) {
        if (fields_[k - 1].index == fields_[k].index) {
            fail(errc::invalid_argument,
                 "duplicate field index " + std::to_string(fields_[k].index));
        }
    }

    adjacency_.assign(static_cast<std::size_t>(num_spins_), {});
    for (const auto& c : couplings_) {
        adjacency_[static_cast<std::size_t>(c.i)].emplace_back(c.j, c.value);
        adjacency_[static_cast<std::size_t>(c.j)].emplace_back(c.i, c.value);
    }
    field_by_spin_.assign(static_cast<std::size_t>(num_spins_), 0.0);
    for (const auto& f : fields_) {
        field_by_spin_[static_cast<std::size_t>(f.index)] = f.value;
    }
}

double IsingInstance::energy(const SpinConfig& config) const {
    if (static_cast<int>(config.spins.size()) != num_spins_) {
        fail(errc::dimension_mismatch,
             "configuration has " + std::to_string(config.spins.size()) + " spins, instance has " +
                 std::to_string(num_spins_));
    }
    double total = 0.0;
    for (const auto& c : couplings_) {
        total += c.value * config.spins[static_cast<std::size_t>(c.i)] *
                 config.spins[static_cast<std::size_t>(c.j)];
    }
    for (const auto& f : fields_) {
        total += f.value * config.spins[static_cast<std::size_t>(f.index)];
    }
    return total;
}

double IsingInstance::flip_delta(const SpinConfig& config, int k) const {
    const double s = config.spins[static_cast<std::size_t>(k)];
    double local = field_by_spin_[static_cast<std::size_t>(k)];
    for (const auto& [other, value] : adjacency_[static_cast<std::size_t>(k)]) {
        local += value * config.spins[static_cast<std::size_t>(other)];
    }
    return -2.0 * s * local;
}

QuboInstance::QuboInstance(int dimension, std::vector<Entry> entries)
    : dimension_(dimension) {
    if (dimension_ < 1) {
        fail(errc::invalid_argument, "QUBO dimension must be at least 1");
    }
    // Fold to the upper triangle: Q[i][j] and Q[j][i] contribute identically
    // to x^T Q x because x_i x_j = x_j x_i.
    std::vector<Entry> folded;
    folded.reserve(entries.size());
    for (auto e : entries) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i < 0 || e.j >= dimension_) {
            fail(errc::invalid_argument,
                 "QUBO entry (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                     ") out of range for dimension " + std::to_string(dimension_));
        }
        folded.push_back(e);
    }
    std::sort(folded.begin(), folded.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (const auto& e : folded) {
        if (!entries_.empty() && entries_.back().i == e.i && entries_.back().j == e.j) {
            entries_.back().value += e.value;
        } else {
            entries_.push_back(e);
        }
    }
}

double QuboInstance::evaluate(const std::vector<int>& x) const {
    if (static_cast<int>(x.size()) != dimension_) {
        fail(errc::dimension_mismatch, "binary vector length does not match QUBO dimension");
    }
    double total = 0.0;
    for (const auto& e : entries_) {
        total += e.value * x[static_cast<std::size_t>(e.i)] * x[static_cast<std::size_t>(e.j)];
    }
    return total;
}

IsingWithOffset qubo_to_ising(const QuboInstance& qubo) {
    // With x = (s + 1) / 2:
    //   off-diagonal q x_i x_j = q/4 s_i s_j + q/4 s_i + q/4 s_j + q/4
    //   diagonal     q x_i^2   = q x_i       = q/2 s_i + q/2
    const int n = qubo.dimension();
    std::vector<double> h(static_cast<std::size_t>(n), 0.0);
    std::vector<Coupling> couplings;
    double offset = 0.0;
    for (const auto& e : qubo.entries()) {
        if (e.i == e.j) {
            h[static_cast<std::size_t>(e.i)] += e.value / 2.0;
            offset += e.value / 2.0;
        } else {
            couplings.push_back({e.i, e.j, e.value / 4.0});
            h[static_cast<std::size_t>(e.i)] += e.value / 4.0;
            h[static_cast<std::size_t>(e.j)] += e.value / 4.0;
            offset += e.value / 4.0;
        }
    }
    std::vector<FieldTerm> fields;
    for (int i = 0; i < n; ++i) {
        if (h[static_cast<std::size_t>(i)] != 0.0) {
            fields.push_back({i, h[static_cast<std::size_t>(i)]});
        }
    }
    return {IsingInstance(n, std::move(couplings), std::move(fields)), offset};
}

GroundResult brute_force_ground(const IsingInstance& instance, int cap) {
    const int n = instance.num_spins();
    if (cap < 1) {
        fail(errc::invalid_argument, "brute-force cap must be at least 1");
    }
    if (n > cap) {
        fail(errc::size_cap_exceeded,
             "instance has " + std::to_string(n) + " spins, exhaustive search capped at " +
                 std::to_string(cap));
    }
    const std::uint64_t total = std::uint64_t{1} << n;

    struct PartialResult {
        double e0 = std::numeric_limits<double>::infinity();
        std::vector<std::uint64_t> minimizers;
    };

    const unsigned workers = worker_count(static_cast<std::size_t>(total));
    std::vector<PartialResult> partials(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;

    // Walk each range in Gray-code order so consecutive configurations
    // differ by one spin and the energy updates are O(degree). The
    // incremental value only screens candidates; minima are confirmed with
    // a from-scratch evaluation so the result is bit-identical to naive
    // re-enumeration regardless of partitioning.
    parallel_ranges(workers, [&](std::size_t wbegin, std::size_t wend) {
        for (std::size_t w = wbegin; w < wend; ++w) {
            const std::uint64_t begin = std::min(static_cast<std::uint64_t>(w) * chunk, total);
            const std::uint64_t end = std::min(begin + chunk, total);
            if (begin >= end) continue;
            PartialResult& out = partials[w];

            auto gray = [](std::uint64_t v) { return v ^ (v >> 1); };
            SpinConfig config = config_from_index(n, gray(begin));
            double running = instance.energy(config);
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                const std::uint64_t code = gray(idx);
                if (idx != begin) {
                    const std::uint64_t prev = gray(idx - 1);
                    const int flipped = std::countr_zero(code ^ prev);
                    running += instance.flip_delta(config, flipped);
                    config.spins[static_cast<std::size_t>(flipped)] =
                        static_cast<std::int8_t>(-config.spins[static_cast<std::size_t>(flipped)]);
                }
                const double margin = 1e-9 * (1.0 + std::abs(out.e0));
                if (running <= out.e0 + margin) {
                    const double exact = instance.energy(config);
                    running = exact;
                    if (exact < out.e0) {
                        out.e0 = exact;
                        out.minimizers.clear();
                        out.minimizers.push_back(code);
                    } else if (exact == out.e0) {
                        out.minimizers.push_back(code);
                    }
                }
            }
        }
    });

    double e0 = std::numeric_limits<double>::infinity();
    for (const auto& p : partials) e0 = std::min(e0, p.e0);
    std::vector<std::uint64_t> indices;
    for (const auto& p : partials) {
        if (p.e0 == e0) {
            indices.insert(indices.end(), p.minimizers.begin(), p.minimizers.end());
        }
    }
    std::sort(indices.begin(), indices.end());

    GroundResult result;
    result.e0 = e0;
    result.minimizers.reserve(indices.size());
    for (const auto idx : indices) {
        result.minimizers.push_back(config_from_index(n, idx));
    }
    return result;
}

IsingInstance random_instance(int num_spins,
                              Topology topology,
                              double base_coupling,
                              double noise_scale,
                              double field_scale,
                              std::uint64_t seed,
                              const std::vector<std::pair<int, int>>* edges) {
    if (num_spins < 1) {
        fail(errc::invalid_argument, "num_spins must be at least 1");
    }
    if (noise_scale < 0.0 || field_scale < 0.0) {
        fail(errc::invalid_argument, "noise_scale and field_scale must be nonnegative");
    }

    std::vector<std::pair<int, int>> pairs;
    switch (topology) {
    case Topology::full:
        for (int i = 0; i < num_spins; ++i) {
            for (int j = i + 1; j < num_spins; ++j) pairs.emplace_back(i, j);
        }
        break;
    case Topology::grid: {
        // Rows = largest divisor of N not exceeding sqrt(N); prime N
        // degenerates to a 1 x N chain.
        int rows = 1;
        for (int r = 1; static_cast<long long>(r) * r <= num_spins; ++r) {
            if (num_spins % r == 0) rows = r;
        }
        const int cols = num_spins / rows;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const int site = r * cols + c;
                if (c + 1 < cols) pairs.emplace_back(site, site + 1);
                if (r + 1 < rows) pairs.emplace_back(site, site + cols);
            }
        }
        break;
    }
    case Topology::edge_list:
        if (edges == nullptr) {
            fail(errc::invalid_argument, "edge-list topology requires an edge list");
        }
        pairs = *edges;
        break;
    }
    std::sort(pairs.begin(), pairs.end());

    rng gen(seed);
    std::vector<Coupling> couplings;
    couplings.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        const double noise = noise_scale > 0.0 ? gen.uniform(-noise_scale, noise_scale) : 0.0;
        couplings.push_back({i, j, base_coupling + noise});
    }
    std::vector<FieldTerm> fields;
    if (field_scale > 0.0) {
        fields.reserve(static_cast<std::size_t>(num_spins));
        for (int i = 0; i < num_spins; ++i) {
            fields.push_back({i, gen.uniform(-field_scale, field_scale)});
        }
    }
    return IsingInstance(num_spins, std::move(couplings), std::move(fields));
}

Topology topology_from_name(const std::string& name) {
    if (name == "full") return Topology::full;
    if (name == "grid") return Topology::grid;
    if (name == "edge-list") return Topology::edge_list;
    fail(errc::invalid_argument, "unknown topology '" + name + "' (expected full, grid, or edge-list)");
}

const char* topology_name(Topology topology) {
    switch (topology) {
    case Topology::full: return "full";
    case Topology::grid: return "grid";
    case Topology::edge_list: return "edge-list";
    }
    return "unknown";
}

} // namespace aaudit
