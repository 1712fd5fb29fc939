#pragma once

#include <cstdint>
#include <vector>

namespace aaudit {

// Ordered energy sample from independent runs.
struct EnergySample {
    std::vector<double> energies;

    std::size_t size() const noexcept { return energies.size(); }
    double h_min() const;
};

// Sample statistics of one energy sample. k2 and k3 are the unbiased
// k-statistics for the second and third cumulant; orders 4 and 6 are
// plug-in estimates from central moments (they only enter 1/sqrt(n) error
// bounds, where their bias is second order).
struct CumulantSummary {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0; // central moments
    double m3 = 0.0;
    double m4 = 0.0;
    double m6 = 0.0;
    double k2 = 0.0; // n m2 / (n-1)
    double k3 = 0.0; // n^2 m3 / ((n-1)(n-2))
    double c4_hat = 0.0; // m4 - 3 m2^2
    double c6_hat = 0.0; // m6 - 15 m4 m2 - 10 m3^2 + 30 m2^3
    double eta = 0.0; // k3 / k2^(3/2); meaningful only when eta_defined
    bool eta_defined = false;
    bool small_n = false; // n below the large-sample threshold
};

// Sample size below which the error calculus is flagged unreliable.
inline constexpr std::int64_t kMinLargeSample = 30;

// Mean, k-statistics, central moments and skewness of a sample.
// Requires n >= 3. A zero-variance sample yields k2 = 0 with skewness
// marked undefined rather than an error.
CumulantSummary summarize(const EnergySample& sample);

// Normalized skewness k3 / k2^(3/2); errors when k2 = 0.
double skewness(const CumulantSummary& summary);

} // namespace aaudit
