// annealer-audit: command-line front end for the annealer_audit library.
//
// Subcommands: generate-instance, solve-exact, sample, assess, fit-alpha,
// beta-recovery. Every output document embeds (JSON) or sidecars (CSV) a
// run manifest with the resolved parameters, tool version, and input
// content hashes, so any run can be replayed bit-identically.
//
// Exit codes: 0 success, 1 input/parse error, 2 precondition/model error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "annealer_audit.h"

namespace {

using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitInputError = 1;
constexpr int kExitModelError = 2;

class CliError : public std::runtime_error {
public:
    CliError(int exit_code, const std::string& message)
        : std::runtime_error(message), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

int exit_code_for(aa_status status) {
    switch (status) {
    case AA_STATUS_SUCCESS:
        return kExitSuccess;
    case AA_STATUS_PARSE_ERROR:
    case AA_STATUS_IO_ERROR:
        return kExitInputError;
    default:
        return kExitModelError;
    }
}

// Wraps a C API call: non-success becomes a CliError with the library's
// last error message.
void check(aa_status status, const std::string& context) {
    if (status != AA_STATUS_SUCCESS) {
        throw CliError(exit_code_for(status),
                       context + ": " + aa_status_string(status) + ": " +
                           aa_last_error_message());
    }
}

// Owned string from the C API.
class ApiString {
public:
    ApiString() = default;
    ~ApiString() { aa_string_free(text_); }
    ApiString(const ApiString&) = delete;
    ApiString& operator=(const ApiString&) = delete;

    char** out() { return &text_; }
    std::string str() const { return text_ != nullptr ? std::string(text_) : std::string(); }

private:
    char* text_ = nullptr;
};

class InstanceHandle {
public:
    InstanceHandle() = default;
    ~InstanceHandle() { aa_instance_destroy(instance_); }
    InstanceHandle(const InstanceHandle&) = delete;
    InstanceHandle& operator=(const InstanceHandle&) = delete;

    aa_instance** out() { return &instance_; }
    aa_instance* get() const { return instance_; }

private:
    aa_instance* instance_ = nullptr;
};

std::string tool_version() {
    int major = 0, minor = 0, patch = 0;
    aa_version(&major, &minor, &patch);
    return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw CliError(kExitInputError, "cannot read file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) {
        throw CliError(kExitInputError, "cannot write file '" + path + "'");
    }
    stream << content;
    if (!stream) {
        throw CliError(kExitInputError, "failed while writing '" + path + "'");
    }
}

std::string content_hash(const std::string& content) {
    ApiString hex;
    check(aa_content_hash_hex(content.data(), content.size(), hex.out()), "hashing input");
    return hex.str();
}

// Seed resolution: an explicit --seed wins; otherwise a fresh seed is
// generated and printed so the run stays reproducible.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    std::random_device device;
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(device()) << 32) ^ static_cast<std::uint64_t>(device());
    std::cerr << "generated seed: " << seed << "\n";
    return seed;
}

json make_manifest(const std::string& command,
                   json parameters,
                   json input_hashes) {
    json manifest;
    manifest["command"] = command;
    manifest["parameters"] = std::move(parameters);
    manifest["tool_version"] = tool_version();
    manifest["input_hashes"] = std::move(input_hashes);
    return manifest;
}

// Inserts the manifest into a JSON document produced by the library.
std::string with_manifest(const std::string& document_text, const json& manifest) {
    json doc = json::parse(document_text);
    doc["manifest"] = manifest;
    return doc.dump(2) + "\n";
}

void emit_json(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path) {
        write_file(*out_path, text);
    } else {
        std::cout << text;
    }
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            const double value = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
                ++used;
            }
            if (used != item.size()) throw std::invalid_argument(item);
            grid.push_back(value);
        } catch (const std::exception&) {
            throw CliError(kExitInputError, "bad beta grid entry '" + item + "'");
        }
    }
    if (grid.empty()) {
        throw CliError(kExitInputError, "beta grid must contain at least one value");
    }
    return grid;
}

// ------------------------------------------------------------------
// Subcommand implementations
// ------------------------------------------------------------------

struct GenerateArgs {
    int num_spins = 0;
    std::string topology = "full";
    double base_coupling = 0.0;
    double noise_scale = 1.0;
    double field_scale = 0.5;
    std::optional<std::uint64_t> seed;
    std::string from_qubo;
    std::string out_path;
};

int run_generate(const GenerateArgs& args) {
    InstanceHandle instance;
    json parameters;
    json input_hashes = json::object();

    if (!args.from_qubo.empty()) {
        const std::string qubo_text = read_file(args.from_qubo);
        double offset = 0.0;
        check(aa_instance_from_qubo_json(qubo_text.c_str(), instance.out(), &offset),
              "converting QUBO");
        parameters["from_qubo"] = args.from_qubo;
        parameters["qubo_offset"] = offset;
        input_hashes[args.from_qubo] = content_hash(qubo_text);
        std::cerr << "qubo offset: " << offset << "\n";
    } else {
        if (args.num_spins < 1) {
            throw CliError(kExitInputError,
                           "--num-spins is required unless --from-qubo is given");
        }
        const std::uint64_t seed = resolve_seed(args.seed);
        check(aa_instance_random(args.num_spins, args.topology.c_str(), args.base_coupling,
                                 args.noise_scale, args.field_scale, seed, instance.out()),
              "generating instance");
        parameters["num_spins"] = args.num_spins;
        parameters["topology"] = args.topology;
        parameters["base_coupling"] = args.base_coupling;
        parameters["noise_scale"] = args.noise_scale;
        parameters["field_scale"] = args.field_scale;
        parameters["seed"] = seed;
    }

    ApiString instance_json;
    check(aa_instance_to_json(instance.get(), instance_json.out()), "serializing instance");
    const json manifest = make_manifest("generate-instance", parameters, input_hashes);
    emit_json(args.out_path.empty() ? std::nullopt : std::optional<std::string>(args.out_path),
              with_manifest(instance_json.str(), manifest));
    return kExitSuccess;
}

struct SolveExactArgs {
    std::string instance_path;
    int cap = AA_BRUTE_FORCE_CAP_DEFAULT;
    std::optional<std::string> out_path;
};

int run_solve_exact(const SolveExactArgs& args) {
    const std::string instance_text = read_file(args.instance_path);
    InstanceHandle instance;
    check(aa_instance_from_json(instance_text.c_str(), instance.out()), "loading instance");

    ApiString result;
    check(aa_solve_exact_json(instance.get(), args.cap, result.out()), "exhaustive search");

    json parameters;
    parameters["instance"] = args.instance_path;
    parameters["cap"] = args.cap;
    json input_hashes;
    input_hashes[args.instance_path] = content_hash(instance_text);
    emit_json(args.out_path,
              with_manifest(result.str(), make_manifest("solve-exact", parameters, input_hashes)));
    return kExitSuccess;
}

struct SampleArgs {
    std::string instance_path;
    double beta_mh = 1.0;
    std::int64_t num_samples = 1000;
    std::int64_t burn_in = 1000;
    std::int64_t thinning = 0;
    std::optional<std::uint64_t> seed;
    bool random_order = false;
    std::string out_path;
};

int run_sample(const SampleArgs& args) {
    const std::string instance_text = read_file(args.instance_path);
    InstanceHandle instance;
    check(aa_instance_from_json(instance_text.c_str(), instance.out()), "loading instance");
    const std::uint64_t seed = resolve_seed(args.seed);

    ApiString csv;
    check(aa_sample_energies_csv(instance.get(), args.beta_mh, args.num_samples, args.burn_in,
                                 args.thinning, seed, args.random_order ? 1 : 0, csv.out()),
          "sampling");
    write_file(args.out_path, csv.str());

    // Sidecar metadata: the chain schedule and instance fingerprint.
    json parameters;
    parameters["instance"] = args.instance_path;
    parameters["beta_mh"] = args.beta_mh;
    parameters["n"] = args.num_samples;
    parameters["burn_in_sweeps"] = args.burn_in;
    parameters["thinning_sweeps"] = args.thinning;
    parameters["seed"] = seed;
    parameters["random_order"] = args.random_order;
    parameters["out"] = args.out_path;
    json input_hashes;
    input_hashes[args.instance_path] = content_hash(instance_text);
    json meta;
    meta["manifest"] = make_manifest("sample", parameters, input_hashes);
    meta["instance_hash"] = input_hashes[args.instance_path];
    meta["beta_mh"] = args.beta_mh;
    meta["n"] = args.num_samples;
    meta["burn_in_sweeps"] = args.burn_in;
    meta["thinning_sweeps"] = args.thinning;
    meta["seed"] = seed;
    write_file(args.out_path + ".meta.json", meta.dump(2) + "\n");
    return kExitSuccess;
}

struct AssessArgs {
    std::string energies_path;
    double alpha = AA_ALPHA_DEFAULT;
    std::int64_t num_replicates = AA_BOOTSTRAP_REPLICATES_DEFAULT;
    std::optional<std::uint64_t> seed;
    std::optional<double> e0_true;
    bool absolute_delta = false;
    std::optional<std::string> out_path;
    std::string estimates_csv_path;
};

int run_assess(const AssessArgs& args) {
    const std::string energies_text = read_file(args.energies_path);
    const std::uint64_t seed = resolve_seed(args.seed);

    ApiString report;
    ApiString estimates;
    check(aa_assess_json(energies_text.c_str(), args.alpha, args.num_replicates, seed,
                         args.e0_true ? 1 : 0, args.e0_true.value_or(0.0),
                         args.absolute_delta ? 1 : 0, report.out(),
                         args.estimates_csv_path.empty() ? nullptr : estimates.out()),
          "assessment");

    json parameters;
    parameters["energies"] = args.energies_path;
    parameters["alpha"] = args.alpha;
    parameters["S"] = args.num_replicates;
    parameters["seed"] = seed;
    if (args.e0_true) parameters["e0_true"] = *args.e0_true;
    parameters["absolute_delta"] = args.absolute_delta;
    json input_hashes;
    input_hashes[args.energies_path] = content_hash(energies_text);

    emit_json(args.out_path,
              with_manifest(report.str(), make_manifest("assess", parameters, input_hashes)));
    if (!args.estimates_csv_path.empty()) {
        write_file(args.estimates_csv_path, estimates.str());
    }
    return kExitSuccess;
}

struct FitAlphaArgs {
    std::string sweep_path;
    std::optional<double> threshold;
    double r2_floor = 0.95;
    std::optional<std::string> out_path;
};

int run_fit_alpha(const FitAlphaArgs& args) {
    const std::string sweep_text = read_file(args.sweep_path);

    ApiString result;
    check(aa_fit_alpha_json(sweep_text.c_str(), args.threshold ? 1 : 0,
                            args.threshold.value_or(0.0), args.r2_floor, result.out()),
          "alpha fit");

    json parameters;
    parameters["points"] = args.sweep_path;
    if (args.threshold) parameters["threshold"] = *args.threshold;
    parameters["r2_floor"] = args.r2_floor;
    json input_hashes;
    input_hashes[args.sweep_path] = content_hash(sweep_text);
    emit_json(args.out_path,
              with_manifest(result.str(), make_manifest("fit-alpha", parameters, input_hashes)));
    return kExitSuccess;
}

struct BetaRecoveryArgs {
    std::string instance_path;
    std::string grid_arg;
    double alpha = AA_ALPHA_DEFAULT;
    std::int64_t num_samples = 1000;
    std::int64_t burn_in = 1000;
    std::int64_t thinning = 0;
    std::optional<std::uint64_t> seed;
    int cap = AA_BRUTE_FORCE_CAP_DEFAULT;
    std::string out_path;
};

int run_beta_recovery(const BetaRecoveryArgs& args) {
    const std::string instance_text = read_file(args.instance_path);
    InstanceHandle instance;
    check(aa_instance_from_json(instance_text.c_str(), instance.out()), "loading instance");
    const std::vector<double> grid = parse_grid(args.grid_arg);
    const std::uint64_t seed = resolve_seed(args.seed);

    ApiString csv;
    check(aa_beta_recovery_csv(instance.get(), grid.data(), grid.size(), args.alpha,
                               args.num_samples, args.burn_in, args.thinning, seed, args.cap,
                               csv.out()),
          "beta recovery");
    write_file(args.out_path, csv.str());

    json parameters;
    parameters["instance"] = args.instance_path;
    parameters["beta_grid"] = grid;
    parameters["alpha"] = args.alpha;
    parameters["n"] = args.num_samples;
    parameters["burn_in_sweeps"] = args.burn_in;
    parameters["thinning_sweeps"] = args.thinning;
    parameters["seed"] = seed;
    parameters["cap"] = args.cap;
    parameters["out"] = args.out_path;
    json input_hashes;
    input_hashes[args.instance_path] = content_hash(instance_text);
    json meta;
    meta["manifest"] = make_manifest("beta-recovery", parameters, input_hashes);
    write_file(args.out_path + ".meta.json", meta.dump(2) + "\n");
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical audit of Ising-annealer output"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand(
        "generate-instance", "Generate a random instance or convert a QUBO");
    generate->add_option("--num-spins", generate_args.num_spins, "Number of spins");
    generate->add_option("--topology", generate_args.topology, "Coupling topology")
        ->check(CLI::IsMember({"full", "grid"}))
        ->capture_default_str();
    generate->add_option("--j0", generate_args.base_coupling, "Base coupling J0")
        ->capture_default_str();
    generate->add_option("--noise-scale", generate_args.noise_scale,
                         "Coupling noise half-width")
        ->capture_default_str();
    generate->add_option("--field-scale", generate_args.field_scale,
                         "Local field half-width")
        ->capture_default_str();
    generate->add_option("--seed", generate_args.seed, "RNG seed (generated if absent)");
    generate->add_option("--from-qubo", generate_args.from_qubo,
                         "Convert this QUBO JSON file instead of generating");
    generate->add_option("--out", generate_args.out_path, "Output file (stdout if absent)");

    SolveExactArgs solve_args;
    auto* solve = app.add_subcommand("solve-exact", "Exhaustive ground-state search");
    solve->add_option("instance", solve_args.instance_path, "Instance JSON file")->required();
    solve->add_option("--cap", solve_args.cap, "Spin-count cap")->capture_default_str();
    std::string solve_out;
    solve->add_option("--out", solve_out, "Output file (stdout if absent)");

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Metropolis-Hastings energy sampling");
    sample->add_option("instance", sample_args.instance_path, "Instance JSON file")->required();
    sample->add_option("--beta-mh", sample_args.beta_mh, "Inverse temperature")->required();
    sample->add_option("--n", sample_args.num_samples, "Number of recorded energies")
        ->capture_default_str();
    sample->add_option("--burn-in", sample_args.burn_in, "Burn-in sweeps")
        ->capture_default_str();
    sample->add_option("--thin", sample_args.thinning,
                       "Sweeps between records (0 = one per num_spins sweeps)")
        ->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "RNG seed (generated if absent)");
    sample->add_flag("--random-order", sample_args.random_order,
                     "Propose random spins instead of sequential order");
    sample->add_option("--out", sample_args.out_path, "Output CSV file")->required();

    AssessArgs assess_args;
    auto* assess = app.add_subcommand("assess", "Bootstrap ground-state assessment");
    assess->add_option("energies", assess_args.energies_path, "Energies CSV file")->required();
    assess->add_option("--alpha", assess_args.alpha, "Scaling exponent alpha")
        ->capture_default_str();
    assess->add_option("--S", assess_args.num_replicates, "Bootstrap replicates")
        ->capture_default_str();
    assess->add_option("--seed", assess_args.seed, "RNG seed (generated if absent)");
    assess->add_option("--e0-true", assess_args.e0_true,
                       "Reference ground-state energy for beta and the gap");
    assess->add_flag("--absolute-delta", assess_args.absolute_delta,
                     "Report the absolute instead of relative gap");
    std::string assess_out;
    assess->add_option("--out", assess_out, "Report file (stdout if absent)");
    assess->add_option("--estimates-csv", assess_args.estimates_csv_path,
                       "Also write raw bootstrap estimates to this CSV");

    FitAlphaArgs fit_args;
    auto* fit = app.add_subcommand("fit-alpha", "Fit the scaling exponent alpha");
    fit->add_option("points", fit_args.sweep_path,
                    "CSV with beta_mh and eta columns (e.g. beta-recovery output)")
        ->required();
    fit->add_option("--threshold", fit_args.threshold, "Largest beta_mh admitted to the fit");
    fit->add_option("--r2-floor", fit_args.r2_floor,
                    "R^2 floor for the automatic threshold scan")
        ->capture_default_str();
    std::string fit_out;
    fit->add_option("--out", fit_out, "Output file (stdout if absent)");

    BetaRecoveryArgs recovery_args;
    auto* recovery = app.add_subcommand(
        "beta-recovery", "Sample a beta_mh grid and estimate beta at each point");
    recovery->add_option("instance", recovery_args.instance_path, "Instance JSON file")
        ->required();
    recovery->add_option("--beta-grid", recovery_args.grid_arg,
                         "Comma-separated beta_mh values")
        ->required();
    recovery->add_option("--alpha", recovery_args.alpha, "Scaling exponent alpha")
        ->capture_default_str();
    recovery->add_option("--n", recovery_args.num_samples, "Recorded energies per grid point")
        ->capture_default_str();
    recovery->add_option("--burn-in", recovery_args.burn_in, "Burn-in sweeps")
        ->capture_default_str();
    recovery->add_option("--thin", recovery_args.thinning,
                         "Sweeps between records (0 = one per num_spins sweeps)")
        ->capture_default_str();
    recovery->add_option("--seed", recovery_args.seed, "RNG seed (generated if absent)");
    recovery->add_option("--cap", recovery_args.cap, "Exhaustive-search spin cap")
        ->capture_default_str();
    recovery->add_option("--out", recovery_args.out_path, "Output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitInputError;
    }

    try {
        if (generate->parsed()) return run_generate(generate_args);
        if (solve->parsed()) {
            solve_args.out_path =
                solve_out.empty() ? std::nullopt : std::optional<std::string>(solve_out);
            return run_solve_exact(solve_args);
        }
        if (sample->parsed()) return run_sample(sample_args);
        if (assess->parsed()) {
            assess_args.out_path =
                assess_out.empty() ? std::nullopt : std::optional<std::string>(assess_out);
            return run_assess(assess_args);
        }
        if (fit->parsed()) {
            fit_args.out_path =
                fit_out.empty() ? std::nullopt : std::optional<std::string>(fit_out);
            return run_fit_alpha(fit_args);
        }
        if (recovery->parsed()) return run_beta_recovery(recovery_args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModelError;
    }
    return kExitSuccess;
}
