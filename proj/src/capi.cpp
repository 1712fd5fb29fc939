#include "annealer_audit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "bootstrap.hpp"
#include "cumulants.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "hash.hpp"
#include "io.hpp"
#include "ising.hpp"
#include "mh_sampler.hpp"

struct aa_instance {
    aaudit::IsingInstance value;
};

struct aa_summary {
    aaudit::CumulantSummary value;
};

namespace {

thread_local std::string tls_last_error;

aa_status status_from(aaudit::errc code) {
    using aaudit::errc;
    switch (code) {
    case errc::ok: return AA_STATUS_SUCCESS;
    case errc::invalid_argument: return AA_STATUS_INVALID_ARGUMENT;
    case errc::dimension_mismatch: return AA_STATUS_DIMENSION_MISMATCH;
    case errc::size_cap_exceeded: return AA_STATUS_SIZE_CAP_EXCEEDED;
    case errc::insufficient_data: return AA_STATUS_INSUFFICIENT_DATA;
    case errc::degenerate_sample: return AA_STATUS_DEGENERATE_SAMPLE;
    case errc::model_violation: return AA_STATUS_MODEL_VIOLATION;
    case errc::singularity: return AA_STATUS_SINGULARITY;
    case errc::empty_distribution: return AA_STATUS_EMPTY_DISTRIBUTION;
    case errc::parse_error: return AA_STATUS_PARSE_ERROR;
    case errc::io_error: return AA_STATUS_IO_ERROR;
    case errc::internal_error: return AA_STATUS_INTERNAL_ERROR;
    }
    return AA_STATUS_INTERNAL_ERROR;
}

// Exception boundary: the C ABI never propagates exceptions.
template <typename F>
aa_status try_(F&& body) noexcept {
    try {
        body();
        tls_last_error.clear();
        return AA_STATUS_SUCCESS;
    } catch (const aaudit::error& e) {
        tls_last_error = e.what();
        return status_from(e.code());
    } catch (const std::bad_alloc&) {
        tls_last_error = "allocation failed";
        return AA_STATUS_ALLOC_FAILED;
    } catch (const std::exception& e) {
        tls_last_error = e.what();
        return AA_STATUS_INTERNAL_ERROR;
    } catch (...) {
        tls_last_error = "unknown error";
        return AA_STATUS_INTERNAL_ERROR;
    }
}

void require(bool condition, const char* message) {
    if (!condition) aaudit::fail(aaudit::errc::invalid_argument, message);
}

// malloc-backed copy so aa_string_free pairs with free() across the ABI.
char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.data(), text.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* aa_status_string(aa_status status) {
    switch (status) {
    case AA_STATUS_SUCCESS: return "success";
    case AA_STATUS_INVALID_ARGUMENT: return "invalid argument";
    case AA_STATUS_DIMENSION_MISMATCH: return "dimension mismatch";
    case AA_STATUS_SIZE_CAP_EXCEEDED: return "size cap exceeded";
    case AA_STATUS_INSUFFICIENT_DATA: return "insufficient data";
    case AA_STATUS_DEGENERATE_SAMPLE: return "degenerate sample";
    case AA_STATUS_MODEL_VIOLATION: return "model violation";
    case AA_STATUS_SINGULARITY: return "singularity";
    case AA_STATUS_EMPTY_DISTRIBUTION: return "empty distribution";
    case AA_STATUS_PARSE_ERROR: return "parse error";
    case AA_STATUS_IO_ERROR: return "io error";
    case AA_STATUS_ALLOC_FAILED: return "allocation failed";
    case AA_STATUS_INTERNAL_ERROR: return "internal error";
    }
    return "unknown status";
}

const char* aa_last_error_message(void) {
    return tls_last_error.c_str();
}

void aa_version(int* major, int* minor, int* patch) {
    if (major != nullptr) *major = AA_VERSION_MAJOR;
    if (minor != nullptr) *minor = AA_VERSION_MINOR;
    if (patch != nullptr) *patch = AA_VERSION_PATCH;
}

void aa_string_free(char* text) {
    std::free(text);
}

aa_status aa_instance_from_json(const char* text, aa_instance** out_instance) {
    return try_([&] {
        require(text != nullptr, "text must not be NULL");
        require(out_instance != nullptr, "out_instance must not be NULL");
        *out_instance = new aa_instance{aaudit::instance_from_json(text)};
    });
}

aa_status aa_instance_to_json(const aa_instance* instance, char** out_text) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(out_text != nullptr, "out_text must not be NULL");
        *out_text = dup_string(aaudit::instance_to_json(instance->value));
    });
}

aa_status aa_instance_random(int32_t num_spins,
                             const char* topology,
                             double base_coupling,
                             double noise_scale,
                             double field_scale,
                             uint64_t seed,
                             aa_instance** out_instance) {
    return try_([&] {
        require(topology != nullptr, "topology must not be NULL");
        require(out_instance != nullptr, "out_instance must not be NULL");
        const aaudit::Topology top = aaudit::topology_from_name(topology);
        if (top == aaudit::Topology::edge_list) {
            aaudit::fail(aaudit::errc::invalid_argument,
                         "edge-list topology is not available through this entry point");
        }
        *out_instance = new aa_instance{aaudit::random_instance(
            num_spins, top, base_coupling, noise_scale, field_scale, seed)};
    });
}

aa_status aa_instance_from_qubo_json(const char* qubo_text,
                                     aa_instance** out_instance,
                                     double* out_offset) {
    return try_([&] {
        require(qubo_text != nullptr, "qubo_text must not be NULL");
        require(out_instance != nullptr, "out_instance must not be NULL");
        require(out_offset != nullptr, "out_offset must not be NULL");
        auto converted = aaudit::qubo_to_ising(aaudit::qubo_from_json(qubo_text));
        *out_offset = converted.offset;
        *out_instance = new aa_instance{std::move(converted.instance)};
    });
}

aa_status aa_instance_num_spins(const aa_instance* instance, int32_t* out_num_spins) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(out_num_spins != nullptr, "out_num_spins must not be NULL");
        *out_num_spins = instance->value.num_spins();
    });
}

aa_status aa_instance_energy(const aa_instance* instance,
                             const int8_t* spins,
                             size_t num_spins,
                             double* out_energy) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(spins != nullptr, "spins must not be NULL");
        require(out_energy != nullptr, "out_energy must not be NULL");
        aaudit::SpinConfig config;
        config.spins.assign(spins, spins + num_spins);
        for (const auto s : config.spins) {
            require(s == 1 || s == -1, "spins entries must be +1 or -1");
        }
        *out_energy = instance->value.energy(config);
    });
}

void aa_instance_destroy(aa_instance* instance) {
    delete instance;
}

aa_status aa_solve_exact_json(const aa_instance* instance, int32_t cap, char** out_json) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(out_json != nullptr, "out_json must not be NULL");
        const int effective_cap = cap > 0 ? cap : aaudit::kBruteForceCapDefault;
        const aaudit::GroundResult result =
            aaudit::brute_force_ground(instance->value, effective_cap);
        nlohmann::json doc;
        doc["e0"] = result.e0;
        nlohmann::json states = nlohmann::json::array();
        for (const auto& config : result.minimizers) {
            nlohmann::json state = nlohmann::json::array();
            for (const auto s : config.spins) state.push_back(static_cast<int>(s));
            states.push_back(std::move(state));
        }
        doc["ground_states"] = std::move(states);
        *out_json = dup_string(doc.dump(2) + "\n");
    });
}

aa_status aa_acceptance_probability(double delta_energy,
                                    double beta_mh,
                                    double* out_probability) {
    return try_([&] {
        require(out_probability != nullptr, "out_probability must not be NULL");
        *out_probability = aaudit::acceptance_probability(delta_energy, beta_mh);
    });
}

aa_status aa_sample_energies_csv(const aa_instance* instance,
                                 double beta_mh,
                                 int64_t num_samples,
                                 int64_t burn_in_sweeps,
                                 int64_t thinning_sweeps,
                                 uint64_t seed,
                                 int32_t random_order,
                                 char** out_csv) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(out_csv != nullptr, "out_csv must not be NULL");
        aaudit::MhConfig config;
        config.beta_mh = beta_mh;
        config.num_samples = num_samples;
        config.burn_in_sweeps = burn_in_sweeps;
        config.thinning_sweeps = thinning_sweeps;
        config.seed = seed;
        config.random_order = random_order != 0;
        const aaudit::ChainResult result = aaudit::run_chain(instance->value, config);
        *out_csv = dup_string(aaudit::energies_to_csv(result.sample));
    });
}

aa_status aa_summary_create(const double* energies, size_t n, aa_summary** out_summary) {
    return try_([&] {
        require(energies != nullptr, "energies must not be NULL");
        require(out_summary != nullptr, "out_summary must not be NULL");
        aaudit::EnergySample sample;
        sample.energies.assign(energies, energies + n);
        *out_summary = new aa_summary{aaudit::summarize(sample)};
    });
}

aa_status aa_summary_get(const aa_summary* summary,
                         aa_summary_field field,
                         double* out_value) {
    return try_([&] {
        require(summary != nullptr, "summary must not be NULL");
        require(out_value != nullptr, "out_value must not be NULL");
        const aaudit::CumulantSummary& s = summary->value;
        switch (field) {
        case AA_SUMMARY_N: *out_value = static_cast<double>(s.n); return;
        case AA_SUMMARY_MEAN: *out_value = s.mean; return;
        case AA_SUMMARY_K2: *out_value = s.k2; return;
        case AA_SUMMARY_K3: *out_value = s.k3; return;
        case AA_SUMMARY_M4: *out_value = s.m4; return;
        case AA_SUMMARY_M6: *out_value = s.m6; return;
        case AA_SUMMARY_C4: *out_value = s.c4_hat; return;
        case AA_SUMMARY_C6: *out_value = s.c6_hat; return;
        case AA_SUMMARY_ETA: *out_value = aaudit::skewness(s); return;
        case AA_SUMMARY_SMALL_N: *out_value = s.small_n ? 1.0 : 0.0; return;
        }
        aaudit::fail(aaudit::errc::invalid_argument, "unknown summary field");
    });
}

void aa_summary_destroy(aa_summary* summary) {
    delete summary;
}

aa_status aa_estimate_e0(const aa_summary* summary, double alpha, double* out_e0) {
    return try_([&] {
        require(summary != nullptr, "summary must not be NULL");
        require(out_e0 != nullptr, "out_e0 must not be NULL");
        *out_e0 = aaudit::estimate_e0(summary->value, {alpha});
    });
}

aa_status aa_estimate_beta(const aa_summary* summary,
                           double e0_reference,
                           double* out_beta) {
    return try_([&] {
        require(summary != nullptr, "summary must not be NULL");
        require(out_beta != nullptr, "out_beta must not be NULL");
        *out_beta = aaudit::estimate_beta(summary->value, e0_reference);
    });
}

aa_status aa_error_e0(const aa_summary* summary,
                      double alpha,
                      double* out_delta_e0,
                      double* out_from_c3,
                      double* out_from_var,
                      int32_t* out_clamped) {
    return try_([&] {
        require(summary != nullptr, "summary must not be NULL");
        require(out_delta_e0 != nullptr, "out_delta_e0 must not be NULL");
        const aaudit::ErrorBreakdown err = aaudit::error_e0(summary->value, {alpha});
        *out_delta_e0 = err.delta_e0;
        if (out_from_c3 != nullptr) *out_from_c3 = err.from_c3;
        if (out_from_var != nullptr) *out_from_var = err.from_var;
        if (out_clamped != nullptr) *out_clamped = err.clamped ? 1 : 0;
    });
}

aa_status aa_fit_alpha_json(const char* beta_eta_csv,
                            int32_t has_threshold,
                            double threshold,
                            double r2_floor,
                            char** out_json) {
    return try_([&] {
        require(beta_eta_csv != nullptr, "beta_eta_csv must not be NULL");
        require(out_json != nullptr, "out_json must not be NULL");
        const auto points = aaudit::beta_eta_from_csv(beta_eta_csv);
        const double floor_value = r2_floor > 0.0 ? r2_floor : 0.95;
        const aaudit::AlphaFit fit = aaudit::fit_alpha(
            points,
            has_threshold != 0 ? std::optional<double>(threshold) : std::nullopt,
            floor_value);
        nlohmann::json doc;
        doc["alpha"] = fit.alpha;
        doc["intercept"] = fit.intercept;
        doc["r2"] = fit.r2;
        doc["threshold_used"] = fit.threshold_used;
        doc["threshold_auto"] = fit.threshold_auto;
        doc["points_used"] = fit.points_used;
        doc["points_excluded"] = fit.points_excluded;
        *out_json = dup_string(doc.dump(2) + "\n");
    });
}

aa_status aa_assess_json(const char* energies_csv,
                         double alpha,
                         int64_t num_replicates,
                         uint64_t seed,
                         int32_t has_e0_true,
                         double e0_true,
                         int32_t absolute_delta,
                         char** out_report_json,
                         char** out_estimates_csv) {
    return try_([&] {
        require(energies_csv != nullptr, "energies_csv must not be NULL");
        require(out_report_json != nullptr, "out_report_json must not be NULL");
        const aaudit::EnergySample sample = aaudit::energies_from_csv(energies_csv);
        aaudit::AssessOptions options;
        options.params.alpha = alpha;
        options.num_replicates =
            num_replicates > 0 ? num_replicates : aaudit::kBootstrapReplicatesDefault;
        options.seed = seed;
        if (has_e0_true != 0) options.e0_true = e0_true;
        options.absolute_delta = absolute_delta != 0;
        const aaudit::AssessmentReport report = aaudit::assess(sample, options);
        *out_report_json = dup_string(aaudit::report_to_json(report));
        if (out_estimates_csv != nullptr) {
            *out_estimates_csv = dup_string(aaudit::bootstrap_estimates_to_csv(report.bootstrap));
        }
    });
}

aa_status aa_delta_h(double h_min,
                     double e0_reference,
                     int32_t relative,
                     double* out_delta) {
    return try_([&] {
        require(out_delta != nullptr, "out_delta must not be NULL");
        *out_delta = aaudit::delta_h(h_min, e0_reference, relative != 0);
    });
}

aa_status aa_beta_recovery_csv(const aa_instance* instance,
                               const double* beta_grid,
                               size_t grid_size,
                               double alpha,
                               int64_t num_samples,
                               int64_t burn_in_sweeps,
                               int64_t thinning_sweeps,
                               uint64_t seed,
                               int32_t cap,
                               char** out_csv) {
    return try_([&] {
        require(instance != nullptr, "instance must not be NULL");
        require(beta_grid != nullptr, "beta_grid must not be NULL");
        require(grid_size > 0, "beta grid must be nonempty");
        require(out_csv != nullptr, "out_csv must not be NULL");

        const int effective_cap = cap > 0 ? cap : aaudit::kBruteForceCapDefault;
        const double e0_true =
            aaudit::brute_force_ground(instance->value, effective_cap).e0;

        aaudit::MhConfig config_template;
        config_template.num_samples = num_samples;
        config_template.burn_in_sweeps = burn_in_sweeps;
        config_template.thinning_sweeps = thinning_sweeps;
        config_template.seed = seed;

        const std::vector<double> grid(beta_grid, beta_grid + grid_size);
        const auto runs = aaudit::sweep_beta(instance->value, grid, config_template);

        const double nan = std::nan("");
        std::string csv = "beta_mh,eta,beta_estimated,e0_estimated,e0_error\n";
        for (const auto& [beta_mh, chain] : runs) {
            double eta = nan, beta_est = nan, e0_est = nan, e0_err = nan;
            const aaudit::CumulantSummary summary = aaudit::summarize(chain.sample);
            if (summary.eta_defined) eta = summary.eta;
            try {
                beta_est = aaudit::estimate_beta(summary, e0_true);
            } catch (const aaudit::error&) {
            }
            try {
                e0_est = aaudit::estimate_e0(summary, {alpha});
                e0_err = aaudit::error_e0(summary, {alpha}).delta_e0;
            } catch (const aaudit::error&) {
            }
            csv += aaudit::format_double(beta_mh);
            csv += ',';
            csv += aaudit::format_double(eta);
            csv += ',';
            csv += aaudit::format_double(beta_est);
            csv += ',';
            csv += aaudit::format_double(e0_est);
            csv += ',';
            csv += aaudit::format_double(e0_err);
            csv += '\n';
        }
        *out_csv = dup_string(csv);
    });
}

aa_status aa_content_hash_hex(const void* data, size_t size, char** out_hex) {
    return try_([&] {
        require(data != nullptr || size == 0, "data must not be NULL for nonzero size");
        require(out_hex != nullptr, "out_hex must not be NULL");
        *out_hex = dup_string(aaudit::hash_hex(aaudit::fnv1a64(data, size)));
    });
}

} // extern "C"
