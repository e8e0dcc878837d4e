#include <cmath>

#include "doctest.h"
#include "molspec/error.hpp"
#include "molspec/spectra.hpp"

using namespace molspec;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

MoleculeSpec single_mode(double omega_e, double nu, double Gamma, double lambda) {
  MoleculeSpec mol;
  mol.omega_e = omega_e;
  mol.gamma_rad = 1.0;
  mol.modes = {{nu, Gamma, lambda}};
  return mol;
}

}  // namespace

TEST_CASE("absorption without modes is the two-level Lorentzian") {
  MoleculeSpec mol;
  mol.omega_e = 3.0;
  mol.gamma_rad = 0.7;
  const DriveSpec drive{DriveTarget::Molecule, 0.0, 0.03};
  const auto grid = linspace(-20.0, 20.0, 1001);
  const auto r = absorption_population(mol, drive, grid, {});
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - mol.omega_e;
    const double exact = 0.03 * 0.03 / (0.7 * 0.7 + d * d);
    worst = std::max(worst, std::abs(r.values[i] - exact) / exact);
  }
  CHECK(worst < 1e-12);
  CHECK(r.truncation_report.retained_weight == 1.0);
  CHECK(r.flags.empty());
}

TEST_CASE("absorption is invariant under a common frequency shift") {
  auto mol = single_mode(0.0, 20.0, 3.0, 1.0);
  const auto grid = linspace(-40.0, 100.0, 141);
  const auto base = absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.05}, grid, {});
  mol.omega_e = 1234.5;
  auto shifted = grid;
  for (auto& w : shifted) w += 1234.5;
  const auto moved = absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.05}, shifted, {});
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(moved.values[i] == doctest::Approx(base.values[i]).epsilon(1e-9));
}

TEST_CASE("absorption sidebands sit at omega_e + m nu") {
  const auto mol = single_mode(0.0, 20.0, 3.0, 1.0);
  const auto r = absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.05}, linspace(-10.0, 70.0, 8001), {});
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < r.values.size(); ++i)
    if (r.values[i] > r.values[i - 1] && r.values[i] > r.values[i + 1]) peaks.push_back(r.grid[i]);
  REQUIRE(peaks.size() >= 3);
  CHECK(peaks[0] == doctest::Approx(0.0).epsilon(0.02));
  CHECK(peaks[1] == doctest::Approx(20.0).epsilon(0.02));
  CHECK(peaks[2] == doctest::Approx(40.0).epsilon(0.02));
}

TEST_CASE("absorption input checks") {
  const auto mol = single_mode(0.0, 20.0, 3.0, 1.0);
  const std::vector<double> grid = {0.0, 1.0};
  CHECK_THROWS_AS(absorption_population(mol, {DriveTarget::Cavity, 0.0, 0.05}, grid, {}), Error);
  CHECK_THROWS_AS(absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.05}, {1.0, 0.0}, {}), Error);
  CHECK_THROWS_AS(absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.05}, {}, {}), Error);
  const auto r = absorption_population(mol, {DriveTarget::Molecule, 0.0, 0.5}, grid, {});
  REQUIRE(r.flags.size() == 1);
  CHECK(r.flags[0].find("weak-drive") != std::string::npos);
}

TEST_CASE("transient emission without modes: Lorentzian of height 2 / gamma") {
  MoleculeSpec mol;
  mol.omega_e = 5.0;
  mol.gamma_rad = 0.5;
  const auto grid = linspace(-5.0, 15.0, 401);
  const auto r = emission_spectrum_transient(mol, 1.0, grid, {});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - 5.0;
    CHECK(r.values[i] == doctest::Approx(2.0 * 0.5 / (0.25 + d * d)).epsilon(1e-13));
  }
  CHECK(r.values[200] == doctest::Approx(4.0));
}

TEST_CASE("transient emission sidebands sit at omega_e - m nu") {
  const auto mol = single_mode(0.0, 20.0, 3.0, 1.0);
  const auto r = emission_spectrum_transient(mol, 1.0, linspace(-70.0, 10.0, 8001), {});
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < r.values.size(); ++i)
    if (r.values[i] > r.values[i - 1] && r.values[i] > r.values[i + 1]) peaks.push_back(r.grid[i]);
  REQUIRE(peaks.size() >= 3);
  CHECK(peaks[peaks.size() - 1] == doctest::Approx(0.0).epsilon(0.02));
  CHECK(peaks[peaks.size() - 2] == doctest::Approx(-20.0).epsilon(0.02));
  CHECK(peaks[peaks.size() - 3] == doctest::Approx(-40.0).epsilon(0.02));
  CHECK_THROWS_AS(emission_spectrum_transient(mol, 1.5, r.grid, {}), Error);
}

TEST_CASE("transient emission scales linearly with p0") {
  const auto mol = single_mode(0.0, 10.0, 1.5, 0.7);
  const auto grid = linspace(-40.0, 10.0, 51);
  const auto full = emission_spectrum_transient(mol, 1.0, grid, {});
  const auto half = emission_spectrum_transient(mol, 0.5, grid, {});
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(half.values[i] == doctest::Approx(0.5 * full.values[i]));
}

TEST_CASE("branching ratios") {
  MoleculeSpec mol;
  CHECK(branching_ratio(mol) == 1.0);
  mol.modes = {{1.0, 0.1, 0.3}};
  CHECK(branching_ratio(mol) == doctest::Approx(0.91393118527122818675).epsilon(1e-15));
  mol.modes = {{1.0, 0.1, 1.0}, {2.0, 0.1, 1.0}};
  CHECK(branching_ratio(mol) == doctest::Approx(0.13533528323661269189).epsilon(1e-15));
  MoleculeSpec one;
  one.modes = {{1.0, 0.1, 1.0}};
  CHECK(branching_ratio(mol) == doctest::Approx(branching_ratio(one) * branching_ratio(one)).epsilon(1e-15));
}

TEST_CASE("cavity-modified branching ratio") {
  MoleculeSpec mol;
  mol.gamma_rad = 1.0;
  mol.modes = {{100.0, 1.0, 0.5}};
  const double alpha = std::exp(-0.25);

  const auto bare = purcell_branching_ratio(mol, {0.0, 1.0, 0.0});
  CHECK(bare.c00 == 0.0);
  CHECK(std::abs(bare.alpha_cav - alpha) < 1e-14);

  // C00 = g^2 e^{-lambda^2} / (kappa gamma) = 10
  const double g10 = std::sqrt(10.0 * 5.0 / alpha);
  const auto ten = purcell_branching_ratio(mol, {0.0, 5.0, g10});
  CHECK(ten.c00 == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(ten.alpha_cav == doctest::Approx(0.97482942423475035578).epsilon(1e-14));

  const double gbig = std::sqrt(1e6 * 5.0 / alpha);
  CHECK(std::abs(purcell_branching_ratio(mol, {0.0, 5.0, gbig}).alpha_cav - 1.0) < 1e-3);

  double last = 0.0;
  for (double c : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    const double a = purcell_branching_ratio(mol, {0.0, 5.0, std::sqrt(c * 5.0 / alpha)}).alpha_cav;
    CHECK(a >= last);
    last = a;
  }
}

TEST_CASE("Purcell regime advisories") {
  MoleculeSpec mol;
  mol.modes = {{2.0, 1.0, 0.5}};
  const auto r = purcell_branching_ratio(mol, {0.0, 1.0, 1.0});
  CHECK(r.flags.size() == 3);
}

TEST_CASE("dephasing estimate") {
  MoleculeSpec mol;
  CHECK(langevin_dephasing_estimate(mol).total == 0.0);
  mol.modes = {{250.0, 30.0, 0.5}};
  const auto d = langevin_dephasing_estimate(mol);
  CHECK(d.total == doctest::Approx(7.5));
  CHECK(d.brownian_total == 0.0);
  mol.modes.push_back({10.0, 2.0, 0.0});
  CHECK(langevin_dephasing_estimate(mol).per_mode == std::vector<double>{7.5, 0.0});
}
