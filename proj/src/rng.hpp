#pragma once

#include <cstdint>
#include <random>

namespace aaudit {

// splitmix64 step; used only to derive decorrelated child seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Child seed for stream `index` of a base seed. Adjacent indices and
// adjacent base seeds both yield unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t state = base;
    std::uint64_t mixed = splitmix64_next(state);
    state = mixed ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64_next(state);
}

// Deterministic uniform generator. All randomness in the library flows
// through this class so outputs are identical across platforms and across
// serial/parallel execution of the same seeded work item.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Unbiased uniform integer in [0, n); n must be nonzero.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    // Fair sign, +1 or -1.
    int sign() { return (engine_() & 1u) ? 1 : -1; }

private:
    std::mt19937_64 engine_;
};

} // namespace aaudit
