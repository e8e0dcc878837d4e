#ifndef MOLSPEC_H
#define MOLSPEC_H

/* C interface to the molspec engine.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns an ms_status; on failure ms_last_error() holds a
 * message of the form "operation: detail" for the calling thread.
 * Results are immutable bags of named arrays, named scalars and flags. */

#include <stddef.h>

#if defined(MOLSPEC_BUILDING_LIBRARY)
#define MS_API __attribute__((visibility("default")))
#else
#define MS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ms_status {
  MS_OK = 0,
  MS_ERR_INVALID_ARGUMENT = 1,
  MS_ERR_UNSUPPORTED = 2,
  MS_ERR_LAYOUT = 3,
  MS_ERR_NUMERICAL = 4,
  MS_ERR_CONDITIONING = 5,
  MS_ERR_TRUNCATION = 6,
  MS_ERR_WINDOWING = 7,
  MS_ERR_STIFFNESS = 8,
  MS_ERR_RANK_DEFICIENT = 9,
  MS_ERR_POLE_PROXIMITY = 10,
  MS_ERR_FIT = 11,
  MS_ERR_NOT_FOUND = 12,
  MS_ERR_INTERNAL = 13
} ms_status;

typedef enum ms_drive_target { MS_DRIVE_MOLECULE = 0, MS_DRIVE_CAVITY = 1 } ms_drive_target;
typedef enum ms_relaxation { MS_RELAX_DISPLACED = 0, MS_RELAX_BARE = 1 } ms_relaxation;

typedef struct ms_policy {
  double epsilon;
  int max_order;
} ms_policy;

typedef struct ms_cavity {
  double omega_c;
  double kappa;
  double g;
} ms_cavity;

typedef struct ms_drive {
  ms_drive_target target;
  double omega_l;
  double eta;
} ms_drive;

typedef struct ms_fret_params {
  double omega_dd;
  double delta;
  int has_cavity;
  double kappa;
  double g_d;
  double g_a;
  double delta_c;
} ms_fret_params;

typedef struct ms_oracle_options {
  const int* vib_dims; /* one per mode, molecules in order; NULL for advisory sizes */
  size_t n_vib_dims;
  int cavity_dim;      /* 0 for the default */
  double dt;           /* 0 picks a step from the model */
  double tau_max;      /* 0 picks a window from the decay rates */
  ms_relaxation relaxation;
  int factorized;
} ms_oracle_options;

typedef struct ms_molecule ms_molecule;
typedef struct ms_result ms_result;

MS_API const char* ms_version(void);
MS_API const char* ms_status_name(ms_status status);
MS_API const char* ms_last_error(void);
MS_API void ms_set_max_jobs(unsigned jobs);
MS_API ms_policy ms_default_policy(void);
MS_API ms_oracle_options ms_default_oracle_options(void);

MS_API ms_status ms_molecule_create(double omega_e, double gamma_rad, ms_molecule** out);
MS_API ms_status ms_molecule_add_mode(ms_molecule* mol, double nu, double gamma_vib, double lambda);
MS_API size_t ms_molecule_mode_count(const ms_molecule* mol);
MS_API void ms_molecule_destroy(ms_molecule* mol);
/* Violations as flags "field: rule"; array "severity" holds 1 for errors and 0
 * for warnings, in flag order; scalar "errors" counts the errors. */
MS_API ms_status ms_molecule_validate(const ms_molecule* mol, ms_result** out);
MS_API ms_status ms_mode_validate(double nu, double gamma_vib, double lambda, ms_result** out);
MS_API ms_status ms_cavity_validate(ms_cavity cav, ms_result** out);
MS_API ms_status ms_drive_validate(ms_drive drive, double driven_linewidth, ms_result** out);
MS_API ms_status ms_fret_validate(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                                  ms_result** out);

MS_API ms_status ms_huang_rhys_from_geometry(double mu, double nu, double r_ge, double* out);
MS_API ms_status ms_truncation_report(const ms_molecule* mol, ms_policy policy, ms_result** out);
MS_API ms_status ms_displacement_correlation(double nu, double gamma_vib, double lambda, const double* taus,
                                             size_t n, ms_result** out);
MS_API ms_status ms_force_spectrum(double nu, double gamma_vib, double lambda, double nbar, const double* grid,
                                   size_t n, ms_result** out);

MS_API ms_status ms_absorption_population(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n,
                                          ms_policy policy, ms_result** out);
MS_API ms_status ms_emission_transient(const ms_molecule* mol, double p0, const double* grid, size_t n,
                                       ms_policy policy, ms_result** out);
MS_API ms_status ms_emission_steady(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n,
                                    ms_policy policy, ms_result** out);
MS_API ms_status ms_cavity_transmission(const ms_molecule* mol, ms_cavity cav, ms_drive drive, const double* grid,
                                        size_t n, ms_policy policy, ms_result** out);
MS_API ms_status ms_polariton_rates(const ms_molecule* mol, ms_cavity cav, ms_result** out);
MS_API ms_status ms_branching(const ms_molecule* mol, const ms_cavity* cav, ms_result** out);
MS_API ms_status ms_dephasing_estimate(const ms_molecule* mol, ms_result** out);

MS_API ms_status ms_fret_rate_direct(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                                     ms_policy policy, ms_result** out);
MS_API ms_status ms_fret_rate_cavity(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                                     ms_policy policy, ms_result** out);
MS_API ms_status ms_pump_probe(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                               double p_d0, const double* times, size_t n, ms_policy policy, ms_result** out);

MS_API ms_status ms_oracle_absorption(const ms_molecule* mol, double eta, const double* grid, size_t n,
                                      const ms_oracle_options* opt, ms_result** out);
MS_API ms_status ms_oracle_emission_transient(const ms_molecule* mol, double p0, const double* grid, size_t n,
                                              const ms_oracle_options* opt, ms_result** out);
MS_API ms_status ms_oracle_emission_steady(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n,
                                           const ms_oracle_options* opt, ms_result** out);
MS_API ms_status ms_oracle_transmission(const ms_molecule* mol, ms_cavity cav, const double* grid, size_t n,
                                        const ms_oracle_options* opt, ms_result** out);
MS_API ms_status ms_oracle_pump_probe(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                                      double p_d0, const double* times, size_t n, const ms_oracle_options* opt,
                                      ms_result** out);
MS_API ms_status ms_fit_lorentzian(const double* grid, const double* values, size_t n, double lo, double hi,
                                   ms_result** out);

MS_API size_t ms_result_array_count(const ms_result* r);
MS_API const char* ms_result_array_name(const ms_result* r, size_t i);
MS_API ms_status ms_result_array(const ms_result* r, const char* name, const double** data, size_t* len);
MS_API size_t ms_result_scalar_count(const ms_result* r);
MS_API const char* ms_result_scalar_name(const ms_result* r, size_t i);
MS_API ms_status ms_result_scalar(const ms_result* r, const char* name, double* value);
MS_API size_t ms_result_flag_count(const ms_result* r);
MS_API const char* ms_result_flag(const ms_result* r, size_t i);
MS_API void ms_result_destroy(ms_result* r);

#ifdef __cplusplus
}
#endif

#endif
