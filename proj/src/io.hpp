#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bootstrap.hpp"
#include "cumulants.hpp"
#include "ising.hpp"

namespace aaudit {

inline constexpr int kReportSchemaVersion = 1;

// Shortest decimal form that parses back to the identical double, so text
// outputs never lose precision and repeated runs are byte-stable.
std::string format_double(double value);
double parse_double(const std::string& text);

// Instance JSON: {"num_spins": N, "couplings": [[i, j, J]...],
// "fields": [[i, h]...]}. Unknown keys are ignored on load.
IsingInstance instance_from_json(const std::string& text);
std::string instance_to_json(const IsingInstance& instance);

// QUBO JSON: {"dimension": N, "entries": [[i, j, q]...]}.
QuboInstance qubo_from_json(const std::string& text);

// Energies CSV: header line "energy", one value per row.
EnergySample energies_from_csv(const std::string& text);
std::string energies_to_csv(const EnergySample& sample);

// Any CSV with beta_mh and eta columns (by header name), e.g. the
// beta-recovery sweep output; rows with unparseable fields error.
std::vector<std::pair<double, double>> beta_eta_from_csv(const std::string& text);

// Assessment report as a versioned JSON document (sorted keys).
std::string report_to_json(const AssessmentReport& report);

// Raw bootstrap estimates as CSV (header "e0_estimate").
std::string bootstrap_estimates_to_csv(const BootstrapDistribution& dist);

} // namespace aaudit
