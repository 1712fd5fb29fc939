#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cumulants.hpp"

namespace aaudit {

// Scaling-model parameter. alpha is the specific-heat exponent; the
// estimator factor (alpha+2)/(alpha+1) requires alpha > -1.
struct ModelParams {
    double alpha = 0.19;
};

inline constexpr double kAlphaDefault = 0.19;
inline constexpr double kAlphaAlternative = 0.38;

// Ground-state energy estimate: mean - ((alpha+2)/(alpha+1)) * k2^2 / k3.
// Requires positive variance and positive skewness; a right-skewed energy
// distribution is a model assumption, not a numerical nicety.
double estimate_e0(const CumulantSummary& summary, const ModelParams& params);

// Effective inverse temperature from a summary and a reference ground
// state: (e0 - mean) / (sigma * eta * (e0 - mean) + sigma^2). Negative
// values are nonphysical; the sign is the caller's validity signal.
double estimate_beta(const CumulantSummary& summary, double e0_reference);

// Analytic standard error of estimate_e0 via first-order propagation of
// the k-statistic sampling errors of c3 and sigma^2, combined in
// quadrature under an independence approximation.
struct ErrorBreakdown {
    double delta_e0 = 0.0;
    double from_c3 = 0.0;
    double from_var = 0.0;
    // Set when a variance radicand came out negative (possible because
    // orders 4 and 6 are plug-in estimates) and was clamped to zero.
    bool clamped = false;
};

ErrorBreakdown error_e0(const CumulantSummary& summary, const ModelParams& params);

// Least-squares fit of log(eta) against log(beta_mh); the model
// eta = C * beta^(alpha/2) makes alpha twice the slope.
struct AlphaFit {
    double alpha = 0.0;
    double intercept = 0.0; // log C
    double r2 = 0.0;
    double threshold_used = 0.0; // largest beta_mh admitted to the fit
    bool threshold_auto = false; // threshold chosen by the R^2 scan
    int points_used = 0;
    int points_excluded = 0; // non-positive beta or eta
};

// Fits on points with beta_mh <= threshold. Without an explicit
// threshold, scans prefixes of the beta-sorted grid from the full grid
// downward and keeps the largest prefix whose R^2 meets `r2_floor`
// (a heuristic stand-in for choosing the validity region by eye).
AlphaFit fit_alpha(const std::vector<std::pair<double, double>>& points,
                   std::optional<double> threshold = std::nullopt,
                   double r2_floor = 0.95);

} // namespace aaudit
