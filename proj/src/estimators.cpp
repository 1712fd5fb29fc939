#include "estimators.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace aaudit {

namespace {

void require_valid_alpha(const ModelParams& params) {
    if (!(params.alpha > -1.0)) {
        fail(errc::invalid_argument, "alpha must be greater than -1");
    }
}

double alpha_factor(const ModelParams& params) {
    return (params.alpha + 2.0) / (params.alpha + 1.0);
}

} // namespace

double estimate_e0(const CumulantSummary& summary, const ModelParams& params) {
    require_valid_alpha(params);
    if (summary.k2 <= 0.0) {
        fail(errc::degenerate_sample, "ground-state estimate requires positive variance");
    }
    if (!summary.eta_defined || summary.eta <= 0.0) {
        fail(errc::model_violation,
             "non-positive skewness: sample violates the right-skew model assumption");
    }
    return summary.mean - alpha_factor(params) * summary.k2 * summary.k2 / summary.k3;
}

double estimate_beta(const CumulantSummary& summary, double e0_reference) {
    if (summary.k2 <= 0.0) {
        fail(errc::degenerate_sample, "beta estimate requires positive variance");
    }
    const double sigma = std::sqrt(summary.k2);
    const double eta = summary.eta_defined ? summary.eta : 0.0;
    const double depth = e0_reference - summary.mean;
    const double denominator = sigma * eta * depth + summary.k2;
    if (denominator == 0.0) {
        fail(errc::singularity, "beta estimate denominator is zero");
    }
    return depth / denominator;
}

ErrorBreakdown error_e0(const CumulantSummary& summary, const ModelParams& params) {
    require_valid_alpha(params);
    if (summary.n < 3) {
        fail(errc::insufficient_data, "error propagation requires at least 3 energies");
    }
    if (summary.k3 == 0.0) {
        fail(errc::singularity, "error propagation requires nonzero third cumulant");
    }
    const double factor = alpha_factor(params);
    const double n = static_cast<double>(summary.n);
    const double var = summary.k2;
    const double c3 = summary.k3;

    ErrorBreakdown out;
    // Sampling variances of the k-statistics, large-n forms. The plug-in
    // fourth and sixth cumulants can push a radicand below zero; clamp and
    // report rather than emit NaN.
    double var_c3 = (summary.c6_hat + 9.0 * var * summary.c4_hat + 9.0 * c3 * c3 +
                     6.0 * var * var * var) /
                    n;
    double var_var = (summary.c4_hat + 2.0 * var * var) / n;
    if (var_c3 < 0.0) {
        var_c3 = 0.0;
        out.clamped = true;
    }
    if (var_var < 0.0) {
        var_var = 0.0;
        out.clamped = true;
    }
    const double delta_c3 = std::sqrt(var_c3);
    const double delta_var = std::sqrt(var_var);

    // |dE0/dc3| = factor * sigma^4 / c3^2, |dE0/dvar| = factor * 2 var / |c3|.
    const double de0_dc3 = factor * var * var / (c3 * c3);
    const double de0_dvar = factor * 2.0 * var / std::abs(c3);

    out.from_c3 = de0_dc3 * delta_c3;
    out.from_var = de0_dvar * delta_var;
    out.delta_e0 = std::hypot(out.from_c3, out.from_var);
    return out;
}

AlphaFit fit_alpha(const std::vector<std::pair<double, double>>& points,
                   std::optional<double> threshold,
                   double r2_floor) {
    AlphaFit out;

    std::vector<std::pair<double, double>> usable;
    usable.reserve(points.size());
    for (const auto& [beta, eta] : points) {
        if (beta > 0.0 && eta > 0.0) {
            usable.emplace_back(beta, eta);
        } else {
            ++out.points_excluded;
        }
    }
    std::sort(usable.begin(), usable.end());

    auto ols = [](const std::vector<std::pair<double, double>>& pts, std::size_t count,
                  AlphaFit& fit) {
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            sx += std::log(pts[i].first);
            sy += std::log(pts[i].second);
        }
        const double mx = sx / static_cast<double>(count);
        const double my = sy / static_cast<double>(count);
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double dx = std::log(pts[i].first) - mx;
            const double dy = std::log(pts[i].second) - my;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        if (sxx == 0.0) {
            fail(errc::invalid_argument, "alpha fit needs at least two distinct beta values");
        }
        const double slope = sxy / sxx;
        const double ss_res = syy - slope * sxy;
        fit.alpha = 2.0 * slope;
        fit.intercept = my - slope * mx;
        // All-equal eta values fit a flat line exactly.
        fit.r2 = syy > 0.0 ? 1.0 - std::max(ss_res, 0.0) / syy : 1.0;
        fit.points_used = static_cast<int>(count);
        fit.threshold_used = pts[count - 1].first;
    };

    if (threshold) {
        std::size_t count = 0;
        while (count < usable.size() && usable[count].first <= *threshold) ++count;
        if (count < 2) {
            fail(errc::insufficient_data,
                 "alpha fit needs at least 2 usable points at or below the threshold");
        }
        ols(usable, count, out);
        return out;
    }

    if (usable.size() < 2) {
        fail(errc::insufficient_data, "alpha fit needs at least 2 usable points");
    }
    // Auto threshold: the largest beta-sorted prefix meeting the R^2
    // floor. A two-point prefix fits exactly, so the scan always lands.
    out.threshold_auto = true;
    for (std::size_t count = usable.size(); count >= 2; --count) {
        AlphaFit candidate;
        candidate.threshold_auto = true;
        candidate.points_excluded = out.points_excluded;
        ols(usable, count, candidate);
        if (candidate.r2 >= r2_floor || count == 2) {
            return candidate;
        }
    }
    fail(errc::internal_error, "alpha fit scan exhausted unexpectedly");
}

} // namespace aaudit
