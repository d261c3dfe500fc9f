#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "dwell/dwell.h"

namespace fs = std::filesystem;

TEST_CASE("version string matches the header") {
  CHECK(std::string(dwell_version()) == DWELL_API_VERSION);
}

TEST_CASE("grid lifecycle and error reporting") {
  dwell_grid* grid = nullptr;
  CHECK(dwell_grid_create(256, -2.0, 2.0, &grid) == DWELL_OK);
  REQUIRE(grid != nullptr);
  int n = 0;
  double dx = 0.0;
  CHECK(dwell_grid_size(grid, &n) == DWELL_OK);
  CHECK(n == 256);
  CHECK(dwell_grid_spacing(grid, &dx) == DWELL_OK);
  CHECK(dx == doctest::Approx(4.0 / 256));
  dwell_grid_destroy(grid);

  dwell_grid* bad = nullptr;
  CHECK(dwell_grid_create(0, 0.0, 1.0, &bad) == DWELL_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::strlen(dwell_last_error()) > 0);
}

TEST_CASE("field construction, translation and displacement expectation") {
  dwell_grid* grid = nullptr;
  REQUIRE(dwell_grid_create(512, -3.0, 3.0, &grid) == DWELL_OK);

  dwell_field* packet = nullptr;
  REQUIRE(dwell_field_gaussian(grid, 0.0, 0.35, 0.0, &packet) == DWELL_OK);
  double norm2 = 0.0;
  CHECK(dwell_field_norm_squared(packet, &norm2) == DWELL_OK);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));

  // <D_L> of a Gaussian is exp(-L^2/(4 l0^2))
  double re = 0.0, im = 0.0;
  CHECK(dwell_displacement_expectation(packet, 1.0, &re, &im) == DWELL_OK);
  CHECK(re == doctest::Approx(std::exp(-1.0 / (4.0 * 0.35 * 0.35))).epsilon(1e-9));
  CHECK(std::abs(im) < 1e-12);

  dwell_field* shifted = nullptr;
  REQUIRE(dwell_field_translate(packet, 0.5, &shifted) == DWELL_OK);
  std::vector<double> re_vals(512), im_vals(512);
  CHECK(dwell_field_values(shifted, re_vals.data(), im_vals.data(), 512) == DWELL_OK);
  // peak moved to x = -0.5
  int jmax = 0;
  for (int j = 1; j < 512; ++j) {
    if (std::hypot(re_vals[j], im_vals[j]) > std::hypot(re_vals[jmax], im_vals[jmax])) jmax = j;
  }
  CHECK(-3.0 + jmax * (6.0 / 512) == doctest::Approx(-0.5).epsilon(0.05));
  CHECK(dwell_field_values(shifted, re_vals.data(), im_vals.data(), 10) ==
        DWELL_ERR_INVALID_ARGUMENT);

  dwell_field_destroy(shifted);
  dwell_field_destroy(packet);
  dwell_grid_destroy(grid);
}

TEST_CASE("protocol difference equals the displacement quadratures") {
  dwell_grid* grid = nullptr;
  REQUIRE(dwell_grid_create(1024, -1.5, 1.5, &grid) == DWELL_OK);
  dwell_field* psi = nullptr;
  REQUIRE(dwell_field_two_packet(grid, 1.0, 0.1309, 0.6, &psi) == DWELL_OK);

  double re = 0.0, im = 0.0;
  REQUIRE(dwell_displacement_expectation(psi, 1.0, &re, &im) == DWELL_OK);
  double protocol_re = 0.0, protocol_im = 0.0;
  CHECK(dwell_ramsey_difference(psi, 1.0, DWELL_QUADRATURE_REAL, &protocol_re) == DWELL_OK);
  CHECK(dwell_ramsey_difference(psi, 1.0, DWELL_QUADRATURE_IMAGINARY, &protocol_im) == DWELL_OK);
  CHECK(protocol_re == doctest::Approx(re).epsilon(1e-10));
  CHECK(protocol_im == doctest::Approx(im).epsilon(1e-10));
  CHECK(re == doctest::Approx(0.5 * std::cos(0.6)).epsilon(1e-3));
  CHECK(dwell_ramsey_difference(psi, 1.0, 42, &protocol_re) == DWELL_ERR_INVALID_ARGUMENT);

  dwell_field_destroy(psi);
  dwell_grid_destroy(grid);
}

TEST_CASE("config runner over the C boundary: artifacts, summary, error paths") {
  const fs::path dir = fs::temp_directory_path() / "dwell_capi_run";
  fs::remove_all(dir);
  const char* config =
      "experiment = track_displacement\n"
      "n_points = 256\n"
      "t_final = 2.0\n"
      "sample_dt = 0.5\n"
      "dt = 1e-3\n";
  char* summary = nullptr;
  CHECK(dwell_run_config_text(config, dir.string().c_str(), 7, &summary) == DWELL_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"seed\": 7") != std::string::npos);
  dwell_string_destroy(summary);
  CHECK(fs::exists(dir / "displacement.csv"));
  CHECK(fs::exists(dir / "metadata.json"));
  fs::remove_all(dir);

  CHECK(dwell_run_config_text("experiment = track_displacement\nDleta = 1\n",
                              dir.string().c_str(), -1, nullptr) == DWELL_ERR_CONFIG);
  CHECK(std::string(dwell_last_error()).find("Dleta") != std::string::npos);
  CHECK(dwell_run_config_file("/nonexistent/path.conf", dir.string().c_str(), -1, nullptr) ==
        DWELL_ERR_IO);
  fs::remove_all(dir);
}
