#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "errors.hpp"
#include "ising.hpp"
#include "mh_sampler.hpp"

using namespace aaudit;

namespace {

SpinConfig config_of(std::vector<int> spins) {
    SpinConfig config;
    for (int s : spins) config.spins.push_back(static_cast<std::int8_t>(s));
    return config;
}

} // namespace

TEST_CASE("acceptance rule") {
    CHECK(acceptance_probability(-3.0, 1.0) == 1.0);
    CHECK(acceptance_probability(-3.0, 0.0) == 1.0);
    CHECK(acceptance_probability(2.0, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(acceptance_probability(5.0, 0.0) == 1.0);
    CHECK(acceptance_probability(0.0, 2.0) == 1.0);
    CHECK_THROWS_AS(acceptance_probability(1.0, -0.1), error);
}

TEST_CASE("single spin matches the exact Gibbs marginal") {
    // One spin with h = 1 at beta 3: P(E = -1) = e^3 / (e^3 + e^-3).
    IsingInstance instance(1, {}, {{0, 1.0}});
    MhConfig config;
    config.beta_mh = 3.0;
    config.num_samples = 10000;
    config.seed = 11;
    const ChainResult result = run_chain(instance, config);
    std::int64_t hits = 0;
    for (double e : result.sample.energies) {
        if (e == -1.0) ++hits;
    }
    const double p = std::exp(3.0) / (std::exp(3.0) + std::exp(-3.0));
    const double fraction = static_cast<double>(hits) / 10000.0;
    const double sigma = std::sqrt(p * (1.0 - p) / 10000.0);
    CHECK(std::abs(fraction - p) < 3.0 * sigma);
}

TEST_CASE("infinite temperature sampling is uniform over configurations") {
    // At beta 0 every proposal is accepted. Random proposal order keeps
    // the walk aperiodic; the recorded mean must match the exhaustive
    // average over all configurations.
    IsingInstance instance = random_instance(6, Topology::full, 0.0, 1.0, 0.5, 21);
    double exhaustive_sum = 0.0;
    for (std::uint64_t index = 0; index < 64; ++index) {
        SpinConfig config;
        for (int k = 0; k < 6; ++k) {
            config.spins.push_back(((index >> k) & 1u) != 0 ? std::int8_t{1} : std::int8_t{-1});
        }
        exhaustive_sum += instance.energy(config);
    }
    const double exhaustive_mean = exhaustive_sum / 64.0;

    MhConfig config;
    config.beta_mh = 0.0;
    config.num_samples = 20000;
    config.seed = 4;
    config.random_order = true;
    const ChainResult result = run_chain(instance, config);
    double sum = 0.0, sq = 0.0;
    for (double e : result.sample.energies) {
        sum += e;
        sq += e * e;
    }
    const double mean = sum / 20000.0;
    const double var = sq / 20000.0 - mean * mean;
    const double sigma = std::sqrt(var / 20000.0);
    CHECK(std::abs(mean - exhaustive_mean) < 3.0 * sigma);
}

TEST_CASE("chains are deterministic in the seed") {
    IsingInstance instance = random_instance(8, Topology::full, 0.0, 1.0, 0.5, 33);
    MhConfig config;
    config.beta_mh = 1.2;
    config.num_samples = 300;
    config.seed = 99;
    const ChainResult a = run_chain(instance, config);
    const ChainResult b = run_chain(instance, config);
    CHECK(a.sample.energies == b.sample.energies);
    CHECK(a.final_config == b.final_config);
    config.seed = 100;
    const ChainResult c = run_chain(instance, config);
    CHECK(a.sample.energies != c.sample.energies);
}

TEST_CASE("two-spin chain satisfies detailed balance") {
    // Long-run state frequencies against exact Gibbs weights.
    IsingInstance instance(2, {{0, 1, 0.7}}, {{0, 0.3}, {1, -0.2}});
    const double beta = 0.9;
    std::array<double, 4> weight{};
    double z = 0.0;
    for (std::uint64_t index = 0; index < 4; ++index) {
        SpinConfig config;
        for (int k = 0; k < 2; ++k) {
            config.spins.push_back(((index >> k) & 1u) != 0 ? std::int8_t{1} : std::int8_t{-1});
        }
        weight[index] = std::exp(-beta * instance.energy(config));
        z += weight[index];
    }

    MhConfig config;
    config.beta_mh = beta;
    config.num_samples = 30000;
    config.thinning_sweeps = 8; // decorrelates successive records
    config.seed = 123;
    config.random_order = true;
    config.record_configs = true;
    const ChainResult result = run_chain(instance, config);
    REQUIRE(result.configs.size() == 30000);
    std::array<std::int64_t, 4> counts{};
    for (const SpinConfig& state : result.configs) {
        std::uint64_t index = 0;
        for (int k = 0; k < 2; ++k) {
            if (state.spins[static_cast<std::size_t>(k)] > 0) index |= (1u << k);
        }
        ++counts[index];
    }
    for (std::uint64_t index = 0; index < 4; ++index) {
        const double p = weight[index] / z;
        const double observed = static_cast<double>(counts[index]) / 30000.0;
        const double sigma = std::sqrt(p * (1.0 - p) / 30000.0);
        CHECK(std::abs(observed - p) < 3.0 * sigma);
    }
}

TEST_CASE("recorded energies equal from-scratch recomputation") {
    IsingInstance instance = random_instance(10, Topology::full, 0.0, 1.0, 0.5, 8);
    MhConfig config;
    config.beta_mh = 1.0;
    config.num_samples = 500;
    config.seed = 77;
    config.record_configs = true;
    const ChainResult result = run_chain(instance, config);
    REQUIRE(result.configs.size() == 500);
    for (std::size_t i = 0; i < 500; ++i) {
        const double scratch = instance.energy(result.configs[i]);
        CHECK(std::abs(result.sample.energies[i] - scratch) <= 1e-9);
    }
    CHECK(result.configs.back() == result.final_config);
}

TEST_CASE("cold chains concentrate on the ground state") {
    // Invariant: at beta 20 on a small instance the exact minimum is hit
    // with frequency above one half.
    IsingInstance instance = random_instance(10, Topology::full, 0.0, 1.0, 0.5, 61);
    const GroundResult ground = brute_force_ground(instance);
    MhConfig config;
    config.beta_mh = 20.0;
    config.num_samples = 400;
    config.seed = 5;
    const ChainResult result = run_chain(instance, config);
    std::int64_t hits = 0;
    for (double e : result.sample.energies) {
        if (std::abs(e - ground.e0) <= 1e-9 * (1.0 + std::abs(ground.e0))) ++hits;
    }
    CHECK(static_cast<double>(hits) / 400.0 > 0.5);
}

TEST_CASE("fixed start configuration is honored") {
    IsingInstance instance(3, {{0, 1, -1.0}, {1, 2, -1.0}}, {});
    MhConfig config;
    config.beta_mh = 50.0;
    config.num_samples = 5;
    config.burn_in_sweeps = 0;
    config.thinning_sweeps = 1;
    config.seed = 2;
    config.start = config_of({1, 1, 1});
    // Already in a ground state; at beta 50 no uphill move is taken.
    const ChainResult result = run_chain(instance, config);
    for (double e : result.sample.energies) CHECK(e == -2.0);
    CHECK_THROWS_AS(
        [&] {
            MhConfig bad = config;
            bad.start = config_of({1, 1});
            return run_chain(instance, bad);
        }(),
        error);
}

TEST_CASE("sampler validates its configuration") {
    IsingInstance instance(2, {{0, 1, 1.0}}, {});
    MhConfig config;
    config.num_samples = 0;
    CHECK_THROWS_AS(run_chain(instance, config), error);
    config.num_samples = 10;
    config.beta_mh = -1.0;
    CHECK_THROWS_AS(run_chain(instance, config), error);
    config.beta_mh = 1.0;
    config.burn_in_sweeps = -1;
    CHECK_THROWS_AS(run_chain(instance, config), error);
    config.burn_in_sweeps = 0;
    config.thinning_sweeps = -2;
    CHECK_THROWS_AS(run_chain(instance, config), error);
    config.start = config_of({1, -1, 1});
    config.thinning_sweeps = 0;
    CHECK_THROWS_AS(run_chain(instance, config), error);
}

TEST_CASE("grid of one reproduces a single chain") {
    IsingInstance instance = random_instance(7, Topology::full, 0.0, 1.0, 0.5, 12);
    MhConfig config;
    config.beta_mh = 0.0; // overwritten per grid point
    config.num_samples = 200;
    config.seed = 400;
    const auto sweep = sweep_beta(instance, {0.5}, config);
    REQUIRE(sweep.size() == 1);
    CHECK(sweep[0].first == 0.5);
    MhConfig single = config;
    single.beta_mh = 0.5;
    const ChainResult direct = run_chain(instance, single);
    CHECK(sweep[0].second.sample.energies == direct.sample.energies);
}

TEST_CASE("grid points use distinct streams") {
    IsingInstance instance = random_instance(7, Topology::full, 0.0, 1.0, 0.5, 13);
    MhConfig config;
    config.num_samples = 200;
    config.seed = 500;
    const auto sweep = sweep_beta(instance, {0.5, 0.5}, config);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].second.sample.energies != sweep[1].second.sample.energies);
}

TEST_CASE("mean energy falls as beta rises") {
    IsingInstance instance = random_instance(8, Topology::full, 0.0, 1.0, 0.5, 210);
    MhConfig config;
    config.num_samples = 4000;
    config.seed = 7;
    const auto sweep = sweep_beta(instance, {0.2, 1.0, 3.0}, config);
    std::vector<double> means;
    for (const auto& [beta, chain] : sweep) {
        double sum = 0.0;
        for (double e : chain.sample.energies) sum += e;
        means.push_back(sum / static_cast<double>(chain.sample.energies.size()));
    }
    CHECK(means[0] > means[1]);
    CHECK(means[1] > means[2]);
}

TEST_CASE("empty grid is rejected") {
    IsingInstance instance(2, {{0, 1, 1.0}}, {});
    MhConfig config;
    CHECK_THROWS_AS(sweep_beta(instance, {}, config), error);
}
