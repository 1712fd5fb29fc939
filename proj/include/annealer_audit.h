/*
 * annealer_audit: statistical auditing of Ising-annealer output.
 *
 * C interface to the annealer_audit shared library. All functions return
 * an aa_status; outputs are written through pointers only on
 * AA_STATUS_SUCCESS. Strings returned through char** parameters are owned
 * by the caller and must be released with aa_string_free(). Handles are
 * opaque and must be released with their _destroy function. On failure,
 * aa_last_error_message() returns a human-readable description of the
 * most recent error on the calling thread.
 */

#ifndef ANNEALER_AUDIT_H
#define ANNEALER_AUDIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define AA_VERSION_MAJOR 1
#define AA_VERSION_MINOR 0
#define AA_VERSION_PATCH 0

/* Scaling exponent defaults for the ground-state estimator. */
#define AA_ALPHA_DEFAULT 0.19
#define AA_ALPHA_ALTERNATIVE 0.38

/* Default number of bootstrap replicates. */
#define AA_BOOTSTRAP_REPLICATES_DEFAULT 1000

/* Default spin-count cap for the exhaustive ground-state oracle. */
#define AA_BRUTE_FORCE_CAP_DEFAULT 24

typedef enum aa_status {
    AA_STATUS_SUCCESS = 0,
    AA_STATUS_INVALID_ARGUMENT = 1,
    AA_STATUS_DIMENSION_MISMATCH = 2,
    AA_STATUS_SIZE_CAP_EXCEEDED = 3,
    AA_STATUS_INSUFFICIENT_DATA = 4,
    AA_STATUS_DEGENERATE_SAMPLE = 5,
    AA_STATUS_MODEL_VIOLATION = 6,
    AA_STATUS_SINGULARITY = 7,
    AA_STATUS_EMPTY_DISTRIBUTION = 8,
    AA_STATUS_PARSE_ERROR = 9,
    AA_STATUS_IO_ERROR = 10,
    AA_STATUS_ALLOC_FAILED = 11,
    AA_STATUS_INTERNAL_ERROR = 12
} aa_status;

/* Static name of a status code. */
const char* aa_status_string(aa_status status);

/* Message of the last error on this thread; empty string if none. */
const char* aa_last_error_message(void);

/* Library version. Any pointer may be NULL. */
void aa_version(int* major, int* minor, int* patch);

/* Releases a string returned through a char** output. NULL is a no-op. */
void aa_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Problem instances                                                   */
/* ------------------------------------------------------------------ */

typedef struct aa_instance aa_instance;

/*
 * Parses an instance from JSON: {"num_spins": N,
 * "couplings": [[i, j, J], ...], "fields": [[i, h], ...]}.
 */
aa_status aa_instance_from_json(const char* text, aa_instance** out_instance);

/* Serializes an instance to the JSON schema above. */
aa_status aa_instance_to_json(const aa_instance* instance, char** out_text);

/*
 * Random instance: couplings base_coupling + eps with eps uniform on
 * [-noise_scale, noise_scale], fields uniform on
 * [-field_scale, field_scale]. topology is "full" or "grid".
 */
aa_status aa_instance_random(int32_t num_spins,
                             const char* topology,
                             double base_coupling,
                             double noise_scale,
                             double field_scale,
                             uint64_t seed,
                             aa_instance** out_instance);

/*
 * Converts a QUBO ({"dimension": N, "entries": [[i, j, q], ...]}) to the
 * equivalent Ising instance under x = (s + 1) / 2. For every binary x,
 * x^T Q x = ising_energy(s) + offset.
 */
aa_status aa_instance_from_qubo_json(const char* qubo_text,
                                     aa_instance** out_instance,
                                     double* out_offset);

aa_status aa_instance_num_spins(const aa_instance* instance, int32_t* out_num_spins);

/* Hamiltonian of one configuration; spins entries must be +1 or -1. */
aa_status aa_instance_energy(const aa_instance* instance,
                             const int8_t* spins,
                             size_t num_spins,
                             double* out_energy);

void aa_instance_destroy(aa_instance* instance);

/* ------------------------------------------------------------------ */
/* Exhaustive oracle                                                   */
/* ------------------------------------------------------------------ */

/*
 * Exact ground state by enumeration of all 2^N configurations:
 * {"e0": .., "ground_states": [[s_0, ..], ..]}. Refuses instances with
 * more than `cap` spins (pass 0 for the default cap).
 */
aa_status aa_solve_exact_json(const aa_instance* instance, int32_t cap, char** out_json);

/* ------------------------------------------------------------------ */
/* Metropolis-Hastings sampling                                        */
/* ------------------------------------------------------------------ */

/* 1 if delta_energy < 0, else exp(-beta_mh * delta_energy). */
aa_status aa_acceptance_probability(double delta_energy,
                                    double beta_mh,
                                    double* out_probability);

/*
 * Samples energies from one seeded chain and returns them as CSV with
 * header "energy". thinning_sweeps 0 selects the default of one record
 * every num_spins sweeps. random_order nonzero proposes uniformly random
 * spins instead of sequential index order.
 */
aa_status aa_sample_energies_csv(const aa_instance* instance,
                                 double beta_mh,
                                 int64_t num_samples,
                                 int64_t burn_in_sweeps,
                                 int64_t thinning_sweeps,
                                 uint64_t seed,
                                 int32_t random_order,
                                 char** out_csv);

/* ------------------------------------------------------------------ */
/* Cumulant summaries                                                  */
/* ------------------------------------------------------------------ */

typedef struct aa_summary aa_summary;

typedef enum aa_summary_field {
    AA_SUMMARY_N = 0,
    AA_SUMMARY_MEAN = 1,
    AA_SUMMARY_K2 = 2,      /* unbiased variance (second k-statistic) */
    AA_SUMMARY_K3 = 3,      /* unbiased third cumulant (third k-statistic) */
    AA_SUMMARY_M4 = 4,      /* fourth central moment */
    AA_SUMMARY_M6 = 5,      /* sixth central moment */
    AA_SUMMARY_C4 = 6,      /* plug-in fourth cumulant */
    AA_SUMMARY_C6 = 7,      /* plug-in sixth cumulant */
    AA_SUMMARY_ETA = 8,     /* skewness k3 / k2^(3/2); errors if undefined */
    AA_SUMMARY_SMALL_N = 9  /* 1.0 when n is below the large-sample threshold */
} aa_summary_field;

/* Cumulant summary of n energies; requires n >= 3. */
aa_status aa_summary_create(const double* energies, size_t n, aa_summary** out_summary);

aa_status aa_summary_get(const aa_summary* summary,
                         aa_summary_field field,
                         double* out_value);

void aa_summary_destroy(aa_summary* summary);

/* ------------------------------------------------------------------ */
/* Estimators                                                          */
/* ------------------------------------------------------------------ */

/*
 * Ground-state energy estimate
 *   E0 = mean - ((alpha + 2) / (alpha + 1)) * k2^2 / k3.
 * Requires positive variance and positive skewness.
 */
aa_status aa_estimate_e0(const aa_summary* summary, double alpha, double* out_e0);

/*
 * Effective inverse temperature against a reference ground state:
 *   beta = (e0 - mean) / (sigma * eta * (e0 - mean) + sigma^2).
 * Negative results are nonphysical; the sign is the caller's signal.
 */
aa_status aa_estimate_beta(const aa_summary* summary,
                           double e0_reference,
                           double* out_beta);

/*
 * First-order error propagation for the E0 estimate. out_clamped is set
 * to 1 when a negative variance radicand was clamped to zero. Any output
 * pointer except out_delta_e0 may be NULL.
 */
aa_status aa_error_e0(const aa_summary* summary,
                      double alpha,
                      double* out_delta_e0,
                      double* out_from_c3,
                      double* out_from_var,
                      int32_t* out_clamped);

/*
 * Fits eta = C * beta^(alpha/2) by least squares on logs. Input is CSV
 * text with beta_mh and eta columns. With has_threshold, only points with
 * beta_mh <= threshold enter the fit; otherwise the largest beta-sorted
 * prefix with R^2 >= r2_floor is chosen (pass r2_floor <= 0 for the
 * default 0.95). Returns JSON: {"alpha", "intercept", "r2",
 * "threshold_used", "threshold_auto", "points_used", "points_excluded"}.
 */
aa_status aa_fit_alpha_json(const char* beta_eta_csv,
                            int32_t has_threshold,
                            double threshold,
                            double r2_floor,
                            char** out_json);

/* ------------------------------------------------------------------ */
/* Bootstrap assessment                                                */
/* ------------------------------------------------------------------ */

/*
 * Runs the full assessment on an energies CSV (header "energy"): bootstrap
 * distribution of E0 estimates, p-value for ground-state presence, direct
 * estimate with analytic error, and model-validity flags. Pass
 * num_replicates 0 for the default. With has_e0_true, the report also
 * carries beta against that reference and the energy gap (relative unless
 * absolute_delta). out_estimates_csv may be NULL; when non-NULL it
 * receives the raw per-replicate estimates as CSV.
 */
aa_status aa_assess_json(const char* energies_csv,
                         double alpha,
                         int64_t num_replicates,
                         uint64_t seed,
                         int32_t has_e0_true,
                         double e0_true,
                         int32_t absolute_delta,
                         char** out_report_json,
                         char** out_estimates_csv);

/*
 * Gap between a sample minimum and a reference ground state; relative
 * nonzero divides by |e0_reference| (which must be nonzero).
 */
aa_status aa_delta_h(double h_min,
                     double e0_reference,
                     int32_t relative,
                     double* out_delta);

/* ------------------------------------------------------------------ */
/* Experiment pipeline                                                 */
/* ------------------------------------------------------------------ */

/*
 * For each grid point: sample a chain at that beta_mh (chain i seeded
 * with seed + i), summarize, and estimate. Emits CSV with header
 * "beta_mh,eta,beta_estimated,e0_estimated,e0_error"; estimates that are
 * undefined for a point (zero variance or non-positive skewness) are
 * written as nan. beta_estimated uses the exhaustive oracle's ground
 * state, so the instance must be within `cap` spins (0 for default).
 */
aa_status aa_beta_recovery_csv(const aa_instance* instance,
                               const double* beta_grid,
                               size_t grid_size,
                               double alpha,
                               int64_t num_samples,
                               int64_t burn_in_sweeps,
                               int64_t thinning_sweeps,
                               uint64_t seed,
                               int32_t cap,
                               char** out_csv);

/* ------------------------------------------------------------------ */
/* Content hashing                                                     */
/* ------------------------------------------------------------------ */

/* FNV-1a 64-bit hash of a byte buffer as a 16-digit hex string. */
aa_status aa_content_hash_hex(const void* data, size_t size, char** out_hex);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ANNEALER_AUDIT_H */
