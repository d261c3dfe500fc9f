#include "dwell/dwell.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/observables.hpp"
#include "core/ramsey.hpp"
#include "core/runner.hpp"
#include "core/validate.hpp"
#include "core/version.hpp"

#if defined(__GNUC__)
#define DWELL_EXPORT __attribute__((visibility("default")))
#else
#define DWELL_EXPORT
#endif

struct dwell_grid {
  dwell::GridPtr grid;
};

struct dwell_field {
  dwell::ComplexField field;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Maps C++ failures onto status codes; the message lands in dwell_last_error.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DWELL_OK;
  } catch (const dwell::config_error& e) {
    set_error(e.what());
    return DWELL_ERR_CONFIG;
  } catch (const dwell::convergence_error& e) {
    set_error(e.what());
    return DWELL_ERR_CONVERGENCE;
  } catch (const dwell::domain_error& e) {
    set_error(e.what());
    return DWELL_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DWELL_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return DWELL_ERR_OUT_OF_RANGE;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return DWELL_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DWELL_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return DWELL_ERR_INTERNAL;
  }
}

int require(bool ok, const char* message) {
  if (ok) return DWELL_OK;
  set_error(message);
  return DWELL_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

DWELL_EXPORT const char* dwell_version(void) { return dwell::kVersion; }

DWELL_EXPORT const char* dwell_last_error(void) { return g_last_error.c_str(); }

DWELL_EXPORT int dwell_grid_create(int n_points, double x_min, double x_max, dwell_grid** out) {
  if (int rc = require(out != nullptr, "out must not be NULL")) return rc;
  return guarded([&] { *out = new dwell_grid{dwell::make_grid(n_points, x_min, x_max)}; });
}

DWELL_EXPORT void dwell_grid_destroy(dwell_grid* grid) { delete grid; }

DWELL_EXPORT int dwell_grid_size(const dwell_grid* grid, int* out) {
  if (int rc = require(grid && out, "grid and out must not be NULL")) return rc;
  *out = grid->grid->n_points;
  return DWELL_OK;
}

DWELL_EXPORT int dwell_grid_spacing(const dwell_grid* grid, double* out) {
  if (int rc = require(grid && out, "grid and out must not be NULL")) return rc;
  *out = grid->grid->dx;
  return DWELL_OK;
}

DWELL_EXPORT int dwell_field_gaussian(const dwell_grid* grid, double center, double width,
                                      double p0, dwell_field** out) {
  if (int rc = require(grid && out, "grid and out must not be NULL")) return rc;
  return guarded(
      [&] { *out = new dwell_field{dwell::gaussian_packet(grid->grid, center, width, p0)}; });
}

DWELL_EXPORT int dwell_field_two_packet(const dwell_grid* grid, double separation, double width,
                                        double theta, dwell_field** out) {
  if (int rc = require(grid && out, "grid and out must not be NULL")) return rc;
  return guarded([&] {
    const auto packet = dwell::gaussian_packet(grid->grid, 0.0, width);
    *out = new dwell_field{dwell::two_packet_state(packet, separation, theta)};
  });
}

DWELL_EXPORT void dwell_field_destroy(dwell_field* field) { delete field; }

DWELL_EXPORT int dwell_field_norm_squared(const dwell_field* field, double* out) {
  if (int rc = require(field && out, "field and out must not be NULL")) return rc;
  return guarded([&] { *out = dwell::norm_squared(field->field); });
}

DWELL_EXPORT int dwell_field_values(const dwell_field* field, double* re, double* im,
                                    int capacity) {
  if (int rc = require(field && re && im, "field, re and im must not be NULL")) return rc;
  if (int rc = require(capacity >= field->field.size(), "capacity below grid size")) return rc;
  for (int j = 0; j < field->field.size(); ++j) {
    re[j] = field->field.values[j].real();
    im[j] = field->field.values[j].imag();
  }
  return DWELL_OK;
}

DWELL_EXPORT int dwell_field_translate(const dwell_field* field, double shift,
                                       dwell_field** out) {
  if (int rc = require(field && out, "field and out must not be NULL")) return rc;
  return guarded([&] { *out = new dwell_field{dwell::translate(field->field, shift)}; });
}

DWELL_EXPORT int dwell_displacement_expectation(const dwell_field* field, double shift,
                                                double* re, double* im) {
  if (int rc = require(field && re && im, "field, re and im must not be NULL")) return rc;
  return guarded([&] {
    const auto d = dwell::displacement_expectation(field->field, shift);
    *re = d.real();
    *im = d.imag();
  });
}

DWELL_EXPORT int dwell_ramsey_difference(const dwell_field* field, double shift, int quadrature,
                                         double* out) {
  if (int rc = require(field && out, "field and out must not be NULL")) return rc;
  if (int rc = require(quadrature == DWELL_QUADRATURE_REAL || quadrature == DWELL_QUADRATURE_IMAGINARY,
                       "quadrature must be DWELL_QUADRATURE_REAL or DWELL_QUADRATURE_IMAGINARY"))
    return rc;
  return guarded([&] {
    const auto q = quadrature == DWELL_QUADRATURE_REAL ? dwell::Quadrature::real
                                                       : dwell::Quadrature::imaginary;
    *out = dwell::run_ramsey(field->field, shift, q).difference;
  });
}

DWELL_EXPORT int dwell_run_config_text(const char* config_text, const char* out_dir,
                                       long long seed_override, char** summary_json) {
  if (int rc = require(config_text && out_dir, "config_text and out_dir must not be NULL"))
    return rc;
  return guarded([&] {
    dwell::RunConfig cfg = dwell::RunConfig::parse(config_text);
    if (seed_override >= 0) {
      cfg.seed = static_cast<std::uint64_t>(seed_override);
      cfg.defaulted_keys.erase("seed");
    }
    const std::string summary = dwell::run_experiment(cfg, out_dir);
    if (summary_json) *summary_json = copy_string(summary);
  });
}

DWELL_EXPORT int dwell_run_config_file(const char* config_path, const char* out_dir,
                                       long long seed_override, char** summary_json) {
  if (int rc = require(config_path && out_dir, "config_path and out_dir must not be NULL"))
    return rc;
  std::ifstream in(config_path);
  if (!in) {
    set_error(std::string("cannot read config file ") + config_path);
    return DWELL_ERR_IO;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return dwell_run_config_text(text.str().c_str(), out_dir, seed_override, summary_json);
}

DWELL_EXPORT int dwell_validate(char** report) {
  bool all_pass = false;
  const int rc = guarded([&] {
    const auto results = dwell::run_validation_suite();
    all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.pass;
    if (report) *report = copy_string(dwell::format_validation_table(results));
  });
  if (rc != DWELL_OK) return rc;
  if (!all_pass) {
    set_error("validation suite reported failures");
    return DWELL_ERR_INTERNAL;
  }
  return DWELL_OK;
}

DWELL_EXPORT void dwell_string_destroy(char* str) { std::free(str); }

}  // extern "C"
