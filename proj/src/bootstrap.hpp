#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cumulants.hpp"
#include "estimators.hpp"

namespace aaudit {

inline constexpr std::int64_t kBootstrapReplicatesDefault = 1000;
inline constexpr double kFailureWarnFractionDefault = 0.10;

// Empirical distribution of per-replicate ground-state estimates.
// Replicates whose resample violates the model preconditions (zero
// variance or non-positive skewness) are tallied, never silently dropped.
struct BootstrapDistribution {
    std::vector<double> estimates; // in replicate order, failures skipped
    std::int64_t num_requested = 0;
    std::int64_t num_failed = 0;
    std::uint64_t seed = 0;

    double mean() const;
    double stddev() const; // population form over the estimates
};

// Draws `num_replicates` resamples (n indices with replacement each) from
// the canonically sorted sample and estimates E0 on each. Replicate j uses
// an RNG stream derived from (seed, j), so results are identical whether
// replicates run serially or in parallel. Errors only when every
// replicate failed.
BootstrapDistribution bootstrap_e0(const EnergySample& sample,
                                   const ModelParams& params,
                                   std::int64_t num_replicates,
                                   std::uint64_t seed);

// Fraction of estimates strictly greater than h_min; ties count as
// not-greater, the direction that disfavors ground-state presence.
double p_value(const BootstrapDistribution& dist, double h_min);

// Gap between the best sampled energy and a reference ground state.
// Relative mode divides by |e0_reference| and demands it be nonzero.
double delta_h(double h_min, double e0_reference, bool relative);

struct HistogramBin {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t count = 0;
};

// Freedman-Diaconis histogram; degenerate spreads collapse to one bin.
std::vector<HistogramBin> fd_histogram(std::vector<double> values);

struct GroundStateEstimate {
    double e0 = 0.0;
    double delta_e0 = 0.0;
    double delta_e0_from_c3 = 0.0;
    double delta_e0_from_var = 0.0;
    bool error_clamped = false;
    // Present only when a reference ground state was supplied.
    std::optional<double> beta;
    bool beta_physical = false;
    double alpha_used = 0.0;
};

struct ModelFlags {
    double replicate_failure_fraction = 0.0;
    bool high_failure_rate = false; // fraction above the warn threshold
    bool direct_estimate_failed = false;
    std::string direct_estimate_error;
    bool nonphysical_beta = false;
    bool small_n = false;
    bool error_clamped = false;
};

struct AssessOptions {
    ModelParams params;
    std::int64_t num_replicates = kBootstrapReplicatesDefault;
    std::uint64_t seed = 0;
    std::optional<double> e0_true;
    bool absolute_delta = false;
    double failure_warn_fraction = kFailureWarnFractionDefault;
};

struct AssessmentReport {
    double h_min = 0.0;
    double p_val = 0.0;
    BootstrapDistribution bootstrap;
    double bootstrap_mean = 0.0;
    double bootstrap_std = 0.0;
    std::vector<HistogramBin> histogram;
    std::optional<GroundStateEstimate> direct_estimate;
    std::optional<double> delta_h_value;
    bool delta_relative = true;
    ModelFlags flags;
    // Provenance fields mirrored into the serialized report.
    double alpha = 0.0;
    std::int64_t num_replicates = 0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::string sample_hash;
};

// Full assessment: h_min, bootstrap distribution, p-value, direct
// estimate with analytic error, and model-validity flags; beta and the
// energy gap are included when a reference ground state is supplied.
// The direct estimate failing is reported in flags, not thrown, as long
// as at least one bootstrap replicate succeeded.
AssessmentReport assess(const EnergySample& sample, const AssessOptions& options);

} // namespace aaudit
