/* dwell - double-well lattice interferometry simulator: C API.
 *
 * Opaque handles plus integer status codes. Every function returns
 * DWELL_OK (0) on success; on failure it returns a nonzero code and leaves a
 * human-readable message retrievable with dwell_last_error() (thread-local).
 * Handles are created through dwell_*_create / builder functions and must be
 * released with the matching destroy function. All lengths are in units of
 * the well spacing L, energies in recoil energies E_r, times in hbar/E_r.
 */
#ifndef DWELL_H
#define DWELL_H

#ifdef __cplusplus
extern "C" {
#endif

#define DWELL_API_VERSION "0.1.0"

typedef struct dwell_grid dwell_grid;
typedef struct dwell_field dwell_field;

enum dwell_status {
  DWELL_OK = 0,
  DWELL_ERR_INVALID_ARGUMENT = 1,
  DWELL_ERR_OUT_OF_RANGE = 2,
  DWELL_ERR_CONVERGENCE = 3,
  DWELL_ERR_CONFIG = 4,
  DWELL_ERR_DOMAIN = 5,
  DWELL_ERR_IO = 6,
  DWELL_ERR_INTERNAL = 7
};

enum dwell_quadrature { DWELL_QUADRATURE_REAL = 0, DWELL_QUADRATURE_IMAGINARY = 1 };

/* Library version string (semver). */
const char* dwell_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
const char* dwell_last_error(void);

/* ---- grids and fields ---- */

/* Uniform periodic grid with n_points points on [x_min, x_max). */
int dwell_grid_create(int n_points, double x_min, double x_max, dwell_grid** out);
void dwell_grid_destroy(dwell_grid* grid);
int dwell_grid_size(const dwell_grid* grid, int* out);
int dwell_grid_spacing(const dwell_grid* grid, double* out);

/* Normalized Gaussian packet: center, width (ground-state size l0), carrier
 * momentum p0. */
int dwell_field_gaussian(const dwell_grid* grid, double center, double width, double p0,
                         dwell_field** out);
/* Equal two-packet superposition with packet width `width`, packet centers
 * -/+ separation/2 and relative phase theta. */
int dwell_field_two_packet(const dwell_grid* grid, double separation, double width, double theta,
                           dwell_field** out);
void dwell_field_destroy(dwell_field* field);
int dwell_field_norm_squared(const dwell_field* field, double* out);
/* Copies the field amplitudes into re[0..n), im[0..n); capacity must be at
 * least the grid size. */
int dwell_field_values(const dwell_field* field, double* re, double* im, int capacity);
/* Exact spectral translation by any real shift: out(x) = in(x + shift). */
int dwell_field_translate(const dwell_field* field, double shift, dwell_field** out);

/* ---- observables ---- */

/* <psi| exp(i p shift) |psi>. */
int dwell_displacement_expectation(const dwell_field* field, double shift, double* re,
                                   double* im);
/* Population difference P_down - P_up from the interferometric protocol;
 * equals the selected quadrature of the displacement expectation. */
int dwell_ramsey_difference(const dwell_field* field, double shift, int quadrature, double* out);

/* ---- experiment runner ---- */

/* Parses a key = value configuration and runs the selected experiment,
 * writing CSV artifacts and metadata.json into out_dir. seed_override < 0
 * keeps the configured seed. If summary_json is non-NULL it receives a
 * malloc'd copy of the metadata JSON; release it with dwell_string_destroy. */
int dwell_run_config_text(const char* config_text, const char* out_dir, long long seed_override,
                          char** summary_json);
int dwell_run_config_file(const char* config_path, const char* out_dir, long long seed_override,
                          char** summary_json);

/* Runs the built-in integrity suite. Returns DWELL_OK if every check passes.
 * If report is non-NULL it receives the pass/fail table (dwell_string_destroy
 * to release). */
int dwell_validate(char** report);

void dwell_string_destroy(char* str);

#ifdef __cplusplus
}
#endif

#endif /* DWELL_H */
