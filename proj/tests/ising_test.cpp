#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "errors.hpp"
#include "ising.hpp"
#include "rng.hpp"

using namespace aaudit;

namespace {

SpinConfig config_of(std::vector<int> spins) {
    SpinConfig config;
    for (int s : spins) config.spins.push_back(static_cast<std::int8_t>(s));
    return config;
}

// Configuration from an index, bit k set meaning spin k = +1. Matches the
// ordering contract of brute_force_ground.
SpinConfig config_from_index(int num_spins, std::uint64_t index) {
    SpinConfig config;
    config.spins.resize(static_cast<std::size_t>(num_spins));
    for (int k = 0; k < num_spins; ++k) {
        config.spins[static_cast<std::size_t>(k)] =
            ((index >> k) & 1u) != 0 ? std::int8_t{1} : std::int8_t{-1};
    }
    return config;
}

} // namespace

TEST_CASE("energy of a coupled pair") {
    IsingInstance instance(2, {{0, 1, 1.0}}, {});
    CHECK(instance.energy(config_of({1, 1})) == 1.0);
    CHECK(instance.energy(config_of({1, -1})) == -1.0);
    CHECK(instance.energy(config_of({-1, -1})) == 1.0);
}

TEST_CASE("energy of a single field term") {
    IsingInstance instance(1, {}, {{0, 2.0}});
    CHECK(instance.energy(config_of({-1})) == -2.0);
    CHECK(instance.energy(config_of({1})) == 2.0);
}

TEST_CASE("energy rejects mismatched configuration length") {
    IsingInstance instance(2, {{0, 1, 1.0}}, {});
    CHECK_THROWS_AS(instance.energy(config_of({1})), error);
    try {
        instance.energy(config_of({1, 1, 1}));
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::dimension_mismatch);
    }
}

TEST_CASE("instance construction validates terms") {
    CHECK_THROWS_AS(IsingInstance(2, {{0, 2, 1.0}}, {}), error);     // index range
    CHECK_THROWS_AS(IsingInstance(2, {{1, 1, 1.0}}, {}), error);     // self-coupling
    CHECK_THROWS_AS(IsingInstance(3, {{0, 1, 1.0}, {1, 0, 2.0}}, {}), error); // dup pair
    CHECK_THROWS_AS(IsingInstance(2, {}, {{5, 1.0}}), error);        // field range
    CHECK_THROWS_AS(IsingInstance(0, {}, {}), error);
}

TEST_CASE("couplings normalize to i < j and sort") {
    IsingInstance instance(3, {{2, 0, 0.5}, {1, 0, -0.25}}, {});
    REQUIRE(instance.couplings().size() == 2);
    CHECK(instance.couplings()[0].i == 0);
    CHECK(instance.couplings()[0].j == 1);
    CHECK(instance.couplings()[0].value == -0.25);
    CHECK(instance.couplings()[1].i == 0);
    CHECK(instance.couplings()[1].j == 2);
    CHECK(instance.couplings()[1].value == 0.5);
}

TEST_CASE("flip_delta matches full recomputation") {
    IsingInstance instance = random_instance(9, Topology::full, 0.0, 1.0, 0.5, 123);
    rng gen(99);
    SpinConfig config;
    for (int k = 0; k < 9; ++k) config.spins.push_back(gen.sign());
    for (int k = 0; k < 9; ++k) {
        const double before = instance.energy(config);
        const double delta = instance.flip_delta(config, k);
        SpinConfig flipped = config;
        flipped.spins[static_cast<std::size_t>(k)] =
            static_cast<std::int8_t>(-flipped.spins[static_cast<std::size_t>(k)]);
        CHECK(instance.energy(flipped) - before == doctest::Approx(delta).epsilon(1e-12));
    }
}

TEST_CASE("global spin flip preserves energy when fields vanish") {
    IsingInstance instance = random_instance(8, Topology::full, 0.3, 1.0, 0.0, 42);
    REQUIRE(instance.fields().empty());
    rng gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        SpinConfig config;
        for (int k = 0; k < 8; ++k) config.spins.push_back(gen.sign());
        SpinConfig mirrored = config;
        for (auto& s : mirrored.spins) s = static_cast<std::int8_t>(-s);
        CHECK(instance.energy(config) == doctest::Approx(instance.energy(mirrored)).epsilon(1e-12));
    }
}

TEST_CASE("qubo with one diagonal entry") {
    QuboInstance qubo(1, {{0, 0, 1.0}});
    const IsingWithOffset result = qubo_to_ising(qubo);
    REQUIRE(result.instance.fields().size() == 1);
    CHECK(result.instance.fields()[0].value == 0.5);
    CHECK(result.instance.couplings().empty());
    CHECK(result.offset == 0.5);
    // x = 1 corresponds to s = +1: 1 = 1/2 + 1/2.
    CHECK(qubo.evaluate({1}) ==
          result.instance.energy(config_of({1})) + result.offset);
    CHECK(qubo.evaluate({0}) ==
          result.instance.energy(config_of({-1})) + result.offset);
}

TEST_CASE("zero qubo maps to the empty instance") {
    QuboInstance qubo(3, {});
    const IsingWithOffset result = qubo_to_ising(qubo);
    CHECK(result.instance.couplings().empty());
    CHECK(result.instance.fields().empty());
    CHECK(result.offset == 0.0);
}

TEST_CASE("qubo with one off-diagonal entry") {
    QuboInstance qubo(2, {{0, 1, 1.0}});
    const IsingWithOffset result = qubo_to_ising(qubo);
    REQUIRE(result.instance.couplings().size() == 1);
    CHECK(result.instance.couplings()[0].value == 0.25);
    REQUIRE(result.instance.fields().size() == 2);
    CHECK(result.instance.fields()[0].value == 0.25);
    CHECK(result.instance.fields()[1].value == 0.25);
    CHECK(result.offset == 0.25);
    for (std::uint64_t index = 0; index < 4; ++index) {
        std::vector<int> x = {static_cast<int>(index & 1), static_cast<int>((index >> 1) & 1)};
        const SpinConfig s = config_of({2 * x[0] - 1, 2 * x[1] - 1});
        CHECK(qubo.evaluate(x) ==
              doctest::Approx(result.instance.energy(s) + result.offset).epsilon(1e-12));
    }
}

TEST_CASE("qubo folds lower-triangle and duplicate entries") {
    // Symmetric input: both (0,1) and (1,0) carry half the weight.
    QuboInstance symmetric(2, {{0, 1, 0.5}, {1, 0, 0.5}});
    QuboInstance upper(2, {{0, 1, 1.0}});
    for (std::uint64_t index = 0; index < 4; ++index) {
        std::vector<int> x = {static_cast<int>(index & 1), static_cast<int>((index >> 1) & 1)};
        CHECK(symmetric.evaluate(x) == doctest::Approx(upper.evaluate(x)).epsilon(1e-12));
    }
}

TEST_CASE("qubo-to-ising identity holds on every configuration") {
    rng gen(2024);
    for (int num_vars : {1, 2, 3, 5, 8, 12}) {
        std::vector<QuboInstance::Entry> entries;
        for (int i = 0; i < num_vars; ++i) {
            for (int j = i; j < num_vars; ++j) {
                entries.push_back({i, j, gen.uniform(-2.0, 2.0)});
            }
        }
        QuboInstance qubo(num_vars, entries);
        const IsingWithOffset result = qubo_to_ising(qubo);
        for (std::uint64_t index = 0; index < (std::uint64_t{1} << num_vars); ++index) {
            std::vector<int> x(static_cast<std::size_t>(num_vars));
            SpinConfig s;
            for (int k = 0; k < num_vars; ++k) {
                x[static_cast<std::size_t>(k)] = static_cast<int>((index >> k) & 1u);
                s.spins.push_back(static_cast<std::int8_t>(2 * x[static_cast<std::size_t>(k)] - 1));
            }
            CHECK(qubo.evaluate(x) ==
                  doctest::Approx(result.instance.energy(s) + result.offset).epsilon(1e-9));
        }
    }
}

TEST_CASE("ground state of the two-spin ferromagnet") {
    IsingInstance instance(2, {{0, 1, -1.0}}, {});
    const GroundResult result = brute_force_ground(instance);
    CHECK(result.e0 == -1.0);
    REQUIRE(result.minimizers.size() == 2);
    CHECK(result.minimizers[0] == config_of({-1, -1}));
    CHECK(result.minimizers[1] == config_of({1, 1}));
}

TEST_CASE("frustrated triangle has six degenerate minima") {
    IsingInstance instance(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {});
    const GroundResult result = brute_force_ground(instance);
    CHECK(result.e0 == -1.0);
    CHECK(result.minimizers.size() == 6);
    for (const SpinConfig& config : result.minimizers) {
        CHECK(instance.energy(config) == -1.0);
    }
}

TEST_CASE("single spin in a field grounds at the opposing sign") {
    IsingInstance instance(1, {}, {{0, 1.0}});
    const GroundResult result = brute_force_ground(instance);
    CHECK(result.e0 == -1.0);
    REQUIRE(result.minimizers.size() == 1);
    CHECK(result.minimizers[0] == config_of({-1}));
}

TEST_CASE("ground energy lower-bounds random configurations") {
    IsingInstance instance = random_instance(11, Topology::full, 0.0, 1.0, 0.5, 314);
    const GroundResult result = brute_force_ground(instance);
    rng gen(1000);
    for (int trial = 0; trial < 200; ++trial) {
        SpinConfig config;
        for (int k = 0; k < 11; ++k) config.spins.push_back(gen.sign());
        CHECK(result.e0 <= instance.energy(config) + 1e-12);
    }
}

TEST_CASE("minimizer list is exhaustive") {
    // Every configuration at the minimum must appear, in index order.
    IsingInstance instance = random_instance(8, Topology::grid, 0.0, 1.0, 0.0, 55);
    const GroundResult result = brute_force_ground(instance);
    std::vector<SpinConfig> expected;
    for (std::uint64_t index = 0; index < 256; ++index) {
        const SpinConfig config = config_from_index(8, index);
        if (instance.energy(config) <= result.e0 + 1e-9 * (1.0 + std::abs(result.e0))) {
            expected.push_back(config);
        }
    }
    CHECK(result.minimizers == expected);
}

TEST_CASE("brute force refuses instances above the cap") {
    IsingInstance instance = random_instance(6, Topology::full, 0.0, 1.0, 0.5, 1);
    try {
        brute_force_ground(instance, 5);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::size_cap_exceeded);
    }
    CHECK_NOTHROW(brute_force_ground(instance, 6));
}

TEST_CASE("zero-noise generation produces exact couplings") {
    IsingInstance instance = random_instance(3, Topology::full, 1.0, 0.0, 0.0, 9);
    REQUIRE(instance.couplings().size() == 3);
    for (const Coupling& coupling : instance.couplings()) {
        CHECK(coupling.value == 1.0);
    }
    CHECK(instance.fields().empty());
}

TEST_CASE("generation is deterministic in the seed") {
    IsingInstance a = random_instance(10, Topology::full, 0.0, 1.0, 0.5, 77);
    IsingInstance b = random_instance(10, Topology::full, 0.0, 1.0, 0.5, 77);
    IsingInstance c = random_instance(10, Topology::full, 0.0, 1.0, 0.5, 78);
    REQUIRE(a.couplings().size() == b.couplings().size());
    bool all_equal = true;
    for (std::size_t k = 0; k < a.couplings().size(); ++k) {
        CHECK(a.couplings()[k].value == b.couplings()[k].value);
        if (a.couplings()[k].value != c.couplings()[k].value) all_equal = false;
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("coupling noise is centered on the base value") {
    // 45 couplings per instance, ~222 instances: >= 10^4 draws.
    const double j0 = 0.75;
    const double noise = 0.5;
    double sum = 0.0;
    std::int64_t count = 0;
    for (std::uint64_t seed = 0; count < 10000; ++seed) {
        IsingInstance instance = random_instance(10, Topology::full, j0, noise, 0.0, seed);
        for (const Coupling& coupling : instance.couplings()) {
            sum += coupling.value;
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    // Uniform on [j0 - noise, j0 + noise]: sd = noise / sqrt(3).
    const double standard_error = noise / std::sqrt(3.0) / std::sqrt(static_cast<double>(count));
    CHECK(std::abs(mean - j0) < 3.0 * standard_error);
}

TEST_CASE("grid topology connects rectangular neighbors only") {
    // 6 spins arrange as 2 x 3; edge count 2*2 + 1*3 = 7.
    IsingInstance instance = random_instance(6, Topology::grid, 0.0, 1.0, 0.0, 3);
    CHECK(instance.couplings().size() == 7);
    for (const Coupling& coupling : instance.couplings()) {
        const int ri = coupling.i / 3, ci = coupling.i % 3;
        const int rj = coupling.j / 3, cj = coupling.j % 3;
        CHECK(std::abs(ri - rj) + std::abs(ci - cj) == 1);
    }
}

TEST_CASE("edge-list topology uses exactly the given edges") {
    const std::vector<std::pair<int, int>> edges = {{0, 3}, {1, 2}};
    IsingInstance instance =
        random_instance(4, Topology::edge_list, 0.0, 1.0, 0.0, 5, &edges);
    REQUIRE(instance.couplings().size() == 2);
    CHECK(instance.couplings()[0].i == 0);
    CHECK(instance.couplings()[0].j == 3);
    CHECK(instance.couplings()[1].i == 1);
    CHECK(instance.couplings()[1].j == 2);
}

TEST_CASE("topology names round-trip") {
    CHECK(topology_from_name("full") == Topology::full);
    CHECK(topology_from_name("grid") == Topology::grid);
    CHECK(topology_name(Topology::full) == std::string("full"));
    CHECK_THROWS_AS(topology_from_name("torus"), error);
}

TEST_CASE("generation validates arguments") {
    CHECK_THROWS_AS(random_instance(0, Topology::full, 0.0, 1.0, 0.5, 1), error);
    CHECK_THROWS_AS(random_instance(4, Topology::full, 0.0, -1.0, 0.5, 1), error);
    CHECK_THROWS_AS(random_instance(4, Topology::full, 0.0, 1.0, -0.5, 1), error);
    CHECK_THROWS_AS(random_instance(4, Topology::edge_list, 0.0, 1.0, 0.5, 1), error);
}
