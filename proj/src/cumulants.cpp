#include "cumulants.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace aaudit {

namespace {

// Neumaier compensated accumulator; keeps two-pass moments stable even
// when energies sit on a huge common offset.
class CompensatedSum {
public:
    void add(double value) noexcept {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

double EnergySample::h_min() const {
    if (energies.empty()) {
        fail(errc::insufficient_data, "empty sample has no minimum");
    }
    return *std::min_element(energies.begin(), energies.end());
}

CumulantSummary summarize(const EnergySample& sample) {
    const std::int64_t n = static_cast<std::int64_t>(sample.size());
    if (n < 3) {
        fail(errc::insufficient_data,
             "need at least 3 energies for cumulant estimation, got " + std::to_string(n));
    }
    for (const double e : sample.energies) {
        if (!std::isfinite(e)) {
            fail(errc::invalid_argument, "sample contains a non-finite energy");
        }
    }

    CumulantSummary out;
    out.n = n;
    out.small_n = n < kMinLargeSample;

    const auto [lo, hi] = std::minmax_element(sample.energies.begin(), sample.energies.end());
    if (*lo == *hi) {
        // Exactly constant sample: all central moments vanish by
        // definition; computing them in floating point would produce
        // rounding dust and a garbage skewness.
        out.mean = *lo;
        out.eta_defined = false;
        return out;
    }

    CompensatedSum mean_acc;
    for (const double e : sample.energies) mean_acc.add(e);
    out.mean = mean_acc.value() / static_cast<double>(n);

    CompensatedSum s2, s3, s4, s6;
    for (const double e : sample.energies) {
        const double d = e - out.mean;
        const double d2 = d * d;
        const double d3 = d2 * d;
        s2.add(d2);
        s3.add(d3);
        s4.add(d2 * d2);
        s6.add(d3 * d3);
    }
    const double dn = static_cast<double>(n);
    out.m2 = s2.value() / dn;
    out.m3 = s3.value() / dn;
    out.m4 = s4.value() / dn;
    out.m6 = s6.value() / dn;

    out.k2 = dn * out.m2 / (dn - 1.0);
    out.k3 = dn * dn * out.m3 / ((dn - 1.0) * (dn - 2.0));
    out.c4_hat = out.m4 - 3.0 * out.m2 * out.m2;
    out.c6_hat = out.m6 - 15.0 * out.m4 * out.m2 - 10.0 * out.m3 * out.m3 +
                 30.0 * out.m2 * out.m2 * out.m2;

    if (out.k2 > 0.0) {
        out.eta = out.k3 / std::pow(out.k2, 1.5);
        out.eta_defined = true;
    }
    return out;
}

double skewness(const CumulantSummary& summary) {
    if (!summary.eta_defined || summary.k2 <= 0.0) {
        fail(errc::degenerate_sample, "skewness undefined for zero-variance sample");
    }
    return summary.eta;
}

} // namespace aaudit
