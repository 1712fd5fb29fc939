#include "io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <json.hpp>

#include "errors.hpp"

namespace aaudit {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        fail(errc::parse_error, std::string("malformed JSON in ") + what);
    }
    return parsed;
}

double json_number(const json& value, const char* context) {
    if (!value.is_number()) {
        fail(errc::parse_error, std::string(context) + " must be a number");
    }
    return value.get<double>();
}

int json_index(const json& value, const char* context) {
    if (!value.is_number_integer()) {
        fail(errc::parse_error, std::string(context) + " must be an integer index");
    }
    return value.get<int>();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    return lines;
}

json histogram_to_json(const std::vector<HistogramBin>& bins) {
    json out = json::array();
    for (const auto& bin : bins) {
        out.push_back({{"lower", bin.lower}, {"upper", bin.upper}, {"count", bin.count}});
    }
    return out;
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{}) {
        fail(errc::parse_error, "cannot parse number from '" + text + "'");
    }
    for (const char* p = result.ptr; p < end; ++p) {
        if (*p != ' ' && *p != '\t') {
            fail(errc::parse_error, "trailing characters after number in '" + text + "'");
        }
    }
    return value;
}

IsingInstance instance_from_json(const std::string& text) {
    const json doc = parse_json(text, "instance file");
    if (!doc.is_object() || !doc.contains("num_spins")) {
        fail(errc::parse_error, "instance JSON must be an object with num_spins");
    }
    if (!doc["num_spins"].is_number_integer()) {
        fail(errc::parse_error, "num_spins must be an integer");
    }
    const int num_spins = doc["num_spins"].get<int>();

    std::vector<Coupling> couplings;
    if (doc.contains("couplings")) {
        if (!doc["couplings"].is_array()) {
            fail(errc::parse_error, "couplings must be an array of [i, j, J] triples");
        }
        for (const auto& entry : doc["couplings"]) {
            if (!entry.is_array() || entry.size() != 3) {
                fail(errc::parse_error, "each coupling must be an [i, j, J] triple");
            }
            couplings.push_back({json_index(entry[0], "coupling index"),
                                 json_index(entry[1], "coupling index"),
                                 json_number(entry[2], "coupling value")});
        }
    }
    std::vector<FieldTerm> fields;
    if (doc.contains("fields")) {
        if (!doc["fields"].is_array()) {
            fail(errc::parse_error, "fields must be an array of [i, h] pairs");
        }
        for (const auto& entry : doc["fields"]) {
            if (!entry.is_array() || entry.size() != 2) {
                fail(errc::parse_error, "each field must be an [i, h] pair");
            }
            fields.push_back({json_index(entry[0], "field index"),
                              json_number(entry[1], "field value")});
        }
    }
    return IsingInstance(num_spins, std::move(couplings), std::move(fields));
}

std::string instance_to_json(const IsingInstance& instance) {
    json doc;
    doc["num_spins"] = instance.num_spins();
    json couplings = json::array();
    for (const auto& c : instance.couplings()) {
        couplings.push_back({c.i, c.j, c.value});
    }
    doc["couplings"] = std::move(couplings);
    json fields = json::array();
    for (const auto& f : instance.fields()) {
        fields.push_back({f.index, f.value});
    }
    doc["fields"] = std::move(fields);
    return doc.dump(2) + "\n";
}

QuboInstance qubo_from_json(const std::string& text) {
    const json doc = parse_json(text, "QUBO file");
    if (!doc.is_object() || !doc.contains("dimension")) {
        fail(errc::parse_error, "QUBO JSON must be an object with dimension");
    }
    if (!doc["dimension"].is_number_integer()) {
        fail(errc::parse_error, "dimension must be an integer");
    }
    std::vector<QuboInstance::Entry> entries;
    if (doc.contains("entries")) {
        if (!doc["entries"].is_array()) {
            fail(errc::parse_error, "entries must be an array of [i, j, q] triples");
        }
        for (const auto& entry : doc["entries"]) {
            if (!entry.is_array() || entry.size() != 3) {
                fail(errc::parse_error, "each entry must be an [i, j, q] triple");
            }
            entries.push_back({json_index(entry[0], "entry index"),
                               json_index(entry[1], "entry index"),
                               json_number(entry[2], "entry value")});
        }
    }
    return QuboInstance(doc["dimension"].get<int>(), std::move(entries));
}

EnergySample energies_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "energy") {
        fail(errc::parse_error, "energies CSV must start with the header line 'energy'");
    }
    EnergySample sample;
    sample.energies.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            sample.energies.push_back(parse_double(lines[i]));
        } catch (const error&) {
            fail(errc::parse_error,
                 "bad energy value on line " + std::to_string(i + 1) + ": '" + lines[i] + "'");
        }
    }
    return sample;
}

std::string energies_to_csv(const EnergySample& sample) {
    std::string out = "energy\n";
    for (const double e : sample.energies) {
        out += format_double(e);
        out += '\n';
    }
    return out;
}

std::vector<std::pair<double, double>> beta_eta_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) {
        fail(errc::parse_error, "empty CSV, expected a header with beta_mh and eta columns");
    }
    const auto header = split_fields(lines[0]);
    std::size_t beta_col = header.size(), eta_col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "beta_mh") beta_col = c;
        if (header[c] == "eta") eta_col = c;
    }
    if (beta_col == header.size() || eta_col == header.size()) {
        fail(errc::parse_error, "CSV header must contain beta_mh and eta columns");
    }
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_fields(lines[i]);
        if (fields.size() != header.size()) {
            fail(errc::parse_error,
                 "line " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                     " fields, header has " + std::to_string(header.size()));
        }
        try {
            points.emplace_back(parse_double(fields[beta_col]), parse_double(fields[eta_col]));
        } catch (const error&) {
            fail(errc::parse_error, "bad numeric field on line " + std::to_string(i + 1));
        }
    }
    return points;
}

std::string report_to_json(const AssessmentReport& report) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["h_min"] = report.h_min;
    doc["p_value"] = report.p_val;

    json bootstrap;
    bootstrap["num_requested"] = report.bootstrap.num_requested;
    bootstrap["num_failed"] = report.bootstrap.num_failed;
    bootstrap["mean"] = report.bootstrap_mean;
    bootstrap["std"] = report.bootstrap_std;
    bootstrap["histogram"] = histogram_to_json(report.histogram);
    doc["bootstrap"] = std::move(bootstrap);

    if (report.direct_estimate) {
        const auto& direct = *report.direct_estimate;
        json estimate;
        estimate["e0"] = direct.e0;
        estimate["delta_e0"] = direct.delta_e0;
        estimate["delta_e0_from_c3"] = direct.delta_e0_from_c3;
        estimate["delta_e0_from_var"] = direct.delta_e0_from_var;
        estimate["error_clamped"] = direct.error_clamped;
        estimate["alpha_used"] = direct.alpha_used;
        if (direct.beta) {
            estimate["beta"] = *direct.beta;
            estimate["beta_physical"] = direct.beta_physical;
        }
        doc["direct_estimate"] = std::move(estimate);
    } else {
        doc["direct_estimate"] = nullptr;
    }

    if (report.delta_h_value) {
        doc["delta_h"] = *report.delta_h_value;
        doc["delta_h_mode"] = report.delta_relative ? "relative" : "absolute";
    } else {
        doc["delta_h"] = nullptr;
    }

    json flags;
    flags["replicate_failure_fraction"] = report.flags.replicate_failure_fraction;
    flags["high_failure_rate"] = report.flags.high_failure_rate;
    flags["direct_estimate_failed"] = report.flags.direct_estimate_failed;
    if (report.flags.direct_estimate_failed) {
        flags["direct_estimate_error"] = report.flags.direct_estimate_error;
    }
    flags["nonphysical_beta"] = report.flags.nonphysical_beta;
    flags["small_n"] = report.flags.small_n;
    flags["error_clamped"] = report.flags.error_clamped;
    doc["model_flags"] = std::move(flags);

    json provenance;
    provenance["alpha"] = report.alpha;
    provenance["num_replicates"] = report.num_replicates;
    provenance["n"] = report.n;
    provenance["seed"] = report.seed;
    provenance["sample_hash"] = report.sample_hash;
    doc["provenance"] = std::move(provenance);

    return doc.dump(2) + "\n";
}

std::string bootstrap_estimates_to_csv(const BootstrapDistribution& dist) {
    std::string out = "e0_estimate\n";
    for (const double e : dist.estimates) {
        out += format_double(e);
        out += '\n';
    }
    return out;
}

} // namespace aaudit
