#include "bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "hash.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace aaudit {

double BootstrapDistribution::mean() const {
    if (estimates.empty()) {
        fail(errc::empty_distribution, "bootstrap distribution has no estimates");
    }
    double sum = 0.0;
    for (const double e : estimates) sum += e;
    return sum / static_cast<double>(estimates.size());
}

double BootstrapDistribution::stddev() const {
    const double m = mean();
    double ss = 0.0;
    for (const double e : estimates) ss += (e - m) * (e - m);
    return std::sqrt(ss / static_cast<double>(estimates.size()));
}

BootstrapDistribution bootstrap_e0(const EnergySample& sample,
                                   const ModelParams& params,
                                   std::int64_t num_replicates,
                                   std::uint64_t seed) {
    const std::size_t n = sample.size();
    if (n < 3) {
        fail(errc::insufficient_data,
             "bootstrap requires at least 3 energies, got " + std::to_string(n));
    }
    if (num_replicates < 1) {
        fail(errc::invalid_argument, "number of bootstrap replicates must be at least 1");
    }

    // Canonical sort makes the index->value mapping, and therefore every
    // replicate, invariant to the input order.
    std::vector<double> sorted = sample.energies;
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> values(static_cast<std::size_t>(num_replicates), 0.0);
    std::vector<unsigned char> failed(static_cast<std::size_t>(num_replicates), 0);

    parallel_ranges(static_cast<std::size_t>(num_replicates),
                    [&](std::size_t begin, std::size_t end) {
                        EnergySample resample;
                        resample.energies.resize(n);
                        for (std::size_t j = begin; j < end; ++j) {
                            rng draw(derive_seed(seed, static_cast<std::uint64_t>(j)));
                            for (std::size_t i = 0; i < n; ++i) {
                                resample.energies[i] =
                                    sorted[static_cast<std::size_t>(draw.uniform_index(n))];
                            }
                            try {
                                values[j] = estimate_e0(summarize(resample), params);
                            } catch (const error& e) {
                                if (e.code() == errc::model_violation ||
                                    e.code() == errc::degenerate_sample) {
                                    failed[j] = 1;
                                } else {
                                    throw;
                                }
                            }
                        }
                    });

    BootstrapDistribution dist;
    dist.num_requested = num_replicates;
    dist.seed = seed;
    dist.estimates.reserve(static_cast<std::size_t>(num_replicates));
    for (std::size_t j = 0; j < static_cast<std::size_t>(num_replicates); ++j) {
        if (failed[j]) {
            ++dist.num_failed;
        } else {
            dist.estimates.push_back(values[j]);
        }
    }
    if (dist.estimates.empty()) {
        fail(errc::empty_distribution,
             "all " + std::to_string(num_replicates) +
                 " bootstrap replicates violated model preconditions");
    }
    return dist;
}

double p_value(const BootstrapDistribution& dist, double h_min) {
    if (dist.estimates.empty()) {
        fail(errc::empty_distribution, "p-value undefined for empty distribution");
    }
    std::int64_t greater = 0;
    for (const double e : dist.estimates) {
        if (e > h_min) ++greater;
    }
    return static_cast<double>(greater) / static_cast<double>(dist.estimates.size());
}

double delta_h(double h_min, double e0_reference, bool relative) {
    if (!relative) return h_min - e0_reference;
    if (e0_reference == 0.0) {
        fail(errc::singularity,
             "relative gap undefined for zero reference energy; use the absolute gap");
    }
    return (h_min - e0_reference) / std::abs(e0_reference);
}

std::vector<HistogramBin> fd_histogram(std::vector<double> values) {
    std::vector<HistogramBin> bins;
    if (values.empty()) return bins;
    std::sort(values.begin(), values.end());
    const double lo = values.front();
    const double hi = values.back();
    const auto m = values.size();

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(m - 1);
        const std::size_t base = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(base);
        if (base + 1 >= m) return values[base];
        return values[base] * (1.0 - frac) + values[base + 1] * frac;
    };

    const double iqr = quantile(0.75) - quantile(0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(m));
    std::size_t num_bins = 1;
    if (width > 0.0 && hi > lo) {
        num_bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
        num_bins = std::clamp<std::size_t>(num_bins, 1, 512);
    }
    const double step = (hi - lo) / static_cast<double>(num_bins);
    bins.resize(num_bins);
    for (std::size_t b = 0; b < num_bins; ++b) {
        bins[b].lower = lo + static_cast<double>(b) * step;
        bins[b].upper = b + 1 == num_bins ? hi : lo + static_cast<double>(b + 1) * step;
    }
    for (const double v : values) {
        std::size_t idx = num_bins - 1;
        if (step > 0.0 && v < hi) {
            idx = std::min(static_cast<std::size_t>((v - lo) / step), num_bins - 1);
        }
        ++bins[idx].count;
    }
    return bins;
}

AssessmentReport assess(const EnergySample& sample, const AssessOptions& options) {
    AssessmentReport report;
    report.h_min = sample.h_min();
    report.n = static_cast<std::int64_t>(sample.size());
    report.alpha = options.params.alpha;
    report.num_replicates = options.num_replicates;
    report.seed = options.seed;
    report.delta_relative = !options.absolute_delta;

    {
        std::vector<double> sorted = sample.energies;
        std::sort(sorted.begin(), sorted.end());
        report.sample_hash = hash_doubles_hex(sorted);
    }

    report.bootstrap = bootstrap_e0(sample, options.params, options.num_replicates, options.seed);
    report.bootstrap_mean = report.bootstrap.mean();
    report.bootstrap_std = report.bootstrap.stddev();
    report.histogram = fd_histogram(report.bootstrap.estimates);
    report.p_val = p_value(report.bootstrap, report.h_min);

    report.flags.replicate_failure_fraction =
        static_cast<double>(report.bootstrap.num_failed) /
        static_cast<double>(report.bootstrap.num_requested);
    report.flags.high_failure_rate =
        report.flags.replicate_failure_fraction > options.failure_warn_fraction;

    const CumulantSummary summary = summarize(sample);
    report.flags.small_n = summary.small_n;

    try {
        GroundStateEstimate direct;
        direct.alpha_used = options.params.alpha;
        direct.e0 = estimate_e0(summary, options.params);
        const ErrorBreakdown err = error_e0(summary, options.params);
        direct.delta_e0 = err.delta_e0;
        direct.delta_e0_from_c3 = err.from_c3;
        direct.delta_e0_from_var = err.from_var;
        direct.error_clamped = err.clamped;
        report.flags.error_clamped = err.clamped;

        if (options.e0_true) {
            direct.beta = estimate_beta(summary, *options.e0_true);
            direct.beta_physical = *direct.beta > 0.0;
            report.flags.nonphysical_beta = !direct.beta_physical;
        }
        report.direct_estimate = direct;
    } catch (const error& e) {
        if (e.code() == errc::model_violation || e.code() == errc::degenerate_sample ||
            e.code() == errc::singularity) {
            report.flags.direct_estimate_failed = true;
            report.flags.direct_estimate_error = e.what();
        } else {
            throw;
        }
    }

    if (options.e0_true) {
        report.delta_h_value = delta_h(report.h_min, *options.e0_true, !options.absolute_delta);
    }
    return report;
}

} // namespace aaudit
