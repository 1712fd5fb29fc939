#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "bootstrap.hpp"
#include "cumulants.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "ising.hpp"
#include "rng.hpp"

using namespace aaudit;

TEST_CASE("doubles format and parse losslessly") {
    const std::vector<double> values = {0.0,      -0.0,   0.1,       1.0 / 3.0,
                                        -2.5e-17, 1e300,  -7.25,     3.141592653589793,
                                        1e-300,   123456789.123456789};
    for (double v : values) {
        const std::string text = format_double(v);
        const double back = parse_double(text);
        CHECK(back == v);
    }
}

TEST_CASE("double parsing tolerates surrounding whitespace only") {
    CHECK(parse_double(" 3.5 ") == 3.5);
    CHECK(parse_double("-1e4") == -10000.0);
    CHECK_THROWS_AS(parse_double("1e"), error);
    CHECK_THROWS_AS(parse_double("3.5x"), error);
    CHECK_THROWS_AS(parse_double(""), error);
    CHECK_THROWS_AS(parse_double("--2"), error);
}

TEST_CASE("instance serialization round-trips") {
    const IsingInstance original = random_instance(9, Topology::full, 0.0, 1.0, 0.5, 77);
    const std::string text = instance_to_json(original);
    const IsingInstance parsed = instance_from_json(text);
    CHECK(parsed.num_spins() == original.num_spins());
    REQUIRE(parsed.couplings().size() == original.couplings().size());
    for (std::size_t k = 0; k < parsed.couplings().size(); ++k) {
        CHECK(parsed.couplings()[k].i == original.couplings()[k].i);
        CHECK(parsed.couplings()[k].j == original.couplings()[k].j);
        CHECK(parsed.couplings()[k].value == original.couplings()[k].value);
    }
    REQUIRE(parsed.fields().size() == original.fields().size());
    for (std::size_t k = 0; k < parsed.fields().size(); ++k) {
        CHECK(parsed.fields()[k].index == original.fields()[k].index);
        CHECK(parsed.fields()[k].value == original.fields()[k].value);
    }
}

TEST_CASE("instance parsing accepts the documented schema") {
    const std::string text = R"({
        "num_spins": 3,
        "couplings": [[0, 1, -1.0], [1, 2, 0.5]],
        "fields": [[2, 0.25]],
        "comment": "unknown keys are ignored"
    })";
    const IsingInstance instance = instance_from_json(text);
    CHECK(instance.num_spins() == 3);
    CHECK(instance.couplings().size() == 2);
    REQUIRE(instance.fields().size() == 1);
    CHECK(instance.fields()[0].index == 2);
    CHECK(instance.fields()[0].value == 0.25);
}

TEST_CASE("malformed instance documents are parse errors") {
    const std::vector<std::string> bad = {
        "not json at all",
        "[1, 2, 3]",
        R"({"couplings": []})",                              // missing num_spins
        R"({"num_spins": "three"})",                         // wrong type
        R"({"num_spins": 2, "couplings": [[0, 1]]})",        // short entry
        R"({"num_spins": 2, "couplings": [[0, "x", 1.0]]})", // wrong element type
        R"({"num_spins": 2, "fields": [[0]]})",
    };
    for (const std::string& text : bad) {
        try {
            instance_from_json(text);
            CHECK_MESSAGE(false, text);
        } catch (const error& e) {
            CHECK(e.code() == errc::parse_error);
        }
    }
}

TEST_CASE("semantically invalid instances keep their own error code") {
    // Well-formed JSON, bad physics: self-coupling.
    const std::string text = R"({"num_spins": 2, "couplings": [[1, 1, 1.0]]})";
    try {
        instance_from_json(text);
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::invalid_argument);
    }
}

TEST_CASE("qubo documents parse and evaluate") {
    const std::string text = R"({"dimension": 2, "entries": [[0, 0, 1.0], [0, 1, -2.0]]})";
    const QuboInstance qubo = qubo_from_json(text);
    CHECK(qubo.dimension() == 2);
    CHECK(qubo.evaluate({1, 1}) == -1.0);
    CHECK(qubo.evaluate({1, 0}) == 1.0);
    CHECK_THROWS_AS(qubo_from_json(R"({"entries": []})"), error);
}

TEST_CASE("energy csv round-trips exactly") {
    rng gen(55);
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) values.push_back(gen.uniform(-1e6, 1e6));
    values.push_back(1.0 / 3.0);
    values.push_back(-0.1);
    const EnergySample original{values};
    const std::string text = energies_to_csv(original);
    const EnergySample parsed = energies_from_csv(text);
    CHECK(parsed.energies == original.energies);
}

TEST_CASE("energy csv validates header and rows") {
    CHECK_THROWS_AS(energies_from_csv(""), error);
    CHECK_THROWS_AS(energies_from_csv("power\n1.0\n"), error);
    try {
        energies_from_csv("energy\n1.0\nbroken\n2.0\n");
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(std::string(e.what()).find("3") != std::string::npos); // line number
    }
}

TEST_CASE("energy csv accepts an empty body") {
    const EnergySample parsed = energies_from_csv("energy\n");
    CHECK(parsed.energies.empty());
}

TEST_CASE("sweep csv exposes beta and eta columns") {
    const std::string text =
        "beta_mh,eta,beta_estimated,e0_estimated,e0_error\n"
        "0.5,0.9,0.4,-10.0,0.3\n"
        "1.0,1.2,0.9,-11.0,0.2\n";
    const auto points = beta_eta_from_csv(text);
    REQUIRE(points.size() == 2);
    CHECK(points[0].first == 0.5);
    CHECK(points[0].second == 0.9);
    CHECK(points[1].first == 1.0);
    CHECK(points[1].second == 1.2);
}

TEST_CASE("sweep csv works with two-column files and any column order") {
    const auto points = beta_eta_from_csv("eta,beta_mh\n2.0,0.25\n");
    REQUIRE(points.size() == 1);
    CHECK(points[0].first == 0.25);
    CHECK(points[0].second == 2.0);
    CHECK_THROWS_AS(beta_eta_from_csv("beta,eta\n1,2\n"), error);
}

TEST_CASE("sweep csv passes nan rows through for the fit to exclude") {
    const auto points = beta_eta_from_csv("beta_mh,eta\n0.5,nan\n1.0,1.5\n");
    REQUIRE(points.size() == 2);
    CHECK(std::isnan(points[0].second));
    CHECK(points[1].second == 1.5);
}

TEST_CASE("report serialization carries the full schema") {
    rng gen(70);
    std::vector<double> values;
    for (int i = 0; i < 100; ++i) values.push_back(-std::log(1.0 - gen.uniform()));
    AssessOptions options;
    options.seed = 19;
    options.num_replicates = 150;
    options.e0_true = -0.5;
    const AssessmentReport report = assess(EnergySample{values}, options);
    const std::string text = report_to_json(report);
    const nlohmann::json doc = nlohmann::json::parse(text);

    CHECK(doc.at("schema_version").get<int>() == kReportSchemaVersion);
    CHECK(doc.at("h_min").get<double>() == report.h_min);
    CHECK(doc.at("p_value").get<double>() == report.p_val);
    CHECK(doc.at("bootstrap").at("num_requested").get<std::int64_t>() == 150);
    CHECK(doc.at("bootstrap").at("histogram").is_array());
    CHECK(doc.at("direct_estimate").is_object());
    CHECK(doc.at("direct_estimate").at("beta").is_number());
    CHECK(doc.at("delta_h").is_number());
    CHECK(doc.at("model_flags").at("high_failure_rate").is_boolean());
    CHECK(doc.at("provenance").at("seed").get<std::uint64_t>() == 19);
    CHECK(doc.at("provenance").at("alpha").get<double>() == report.alpha);
    CHECK(doc.at("provenance").at("sample_hash").get<std::string>() == report.sample_hash);
    CHECK(text.back() == '\n');
}

TEST_CASE("reports without a reference serialize null gaps") {
    rng gen(71);
    std::vector<double> values;
    for (int i = 0; i < 80; ++i) values.push_back(-std::log(1.0 - gen.uniform()));
    AssessOptions options;
    options.seed = 20;
    options.num_replicates = 50;
    const AssessmentReport report = assess(EnergySample{values}, options);
    const nlohmann::json doc = nlohmann::json::parse(report_to_json(report));
    CHECK(doc.at("delta_h").is_null());
    CHECK_FALSE(doc.at("direct_estimate").contains("beta"));
}

TEST_CASE("report serialization is deterministic") {
    rng gen(72);
    std::vector<double> values;
    for (int i = 0; i < 60; ++i) values.push_back(-std::log(1.0 - gen.uniform()));
    AssessOptions options;
    options.seed = 21;
    options.num_replicates = 80;
    const AssessmentReport a = assess(EnergySample{values}, options);
    const AssessmentReport b = assess(EnergySample{values}, options);
    CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("bootstrap estimates export as a csv column") {
    BootstrapDistribution dist;
    dist.estimates = {1.5, -2.25, 1.0 / 3.0};
    dist.num_requested = 3;
    const std::string text = bootstrap_estimates_to_csv(dist);
    CHECK(text == "e0_estimate\n1.5\n-2.25\n" + format_double(1.0 / 3.0) + "\n");
}
