#include <cmath>

#include "doctest.h"
#include "molspec/error.hpp"
#include "molspec/oracle.hpp"
#include "molspec/spectra.hpp"

using namespace molspec;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

MoleculeSpec molecule(double lambda) {
  MoleculeSpec mol;
  mol.gamma_rad = 1.0;
  mol.modes = {{20.0, 3.0, lambda}};
  return mol;
}

}  // namespace

TEST_CASE("steady emission without vibrations is purely elastic at second order") {
  MoleculeSpec mol;
  mol.gamma_rad = 1.0;
  for (double D : {0.0, 0.7, -3.0}) {
    const DriveSpec drive{DriveTarget::Molecule, D, 0.05};
    const auto r = emission_spectrum_steady_detail(mol, drive, linspace(-10.0, 10.0, 41), {});
    const double pe = 0.05 * 0.05 / (1.0 + D * D);
    CHECK(r.coherent_intensity == doctest::Approx(pe).epsilon(1e-13));
    CHECK(r.excited_population == doctest::Approx(pe).epsilon(1e-12));
    for (double v : r.spectrum.values) CHECK(std::abs(v) < 1e-15);
  }
}

TEST_CASE("steady emission conserves the excited population") {
  // G(0) + |<sigma>|^2 equals the absorption population at the laser frequency.
  const auto mol = molecule(0.5);
  for (double wl : {0.0, 5.0, 20.0}) {
    const DriveSpec drive{DriveTarget::Molecule, wl, 0.05};
    const auto r = emission_spectrum_steady_detail(mol, drive, {0.0}, {});
    const double pe = absorption_population(mol, drive, {wl}, {}).values[0];
    CHECK(r.excited_population == doctest::Approx(pe).epsilon(1e-8));
  }
}

TEST_CASE("steady emission spectrum is the transform of its correlation") {
  const auto mol = molecule(0.5);
  const DriveSpec drive{DriveTarget::Molecule, 0.0, 0.05};
  const auto grid = linspace(-50.0, 10.0, 61);
  const auto spec = emission_spectrum_steady(mol, drive, grid, {});
  std::vector<double> taus;
  for (int i = 0; i <= 40000; ++i) taus.push_back(i * 5e-4);
  const auto corr = steady_emission_correlation(mol, drive, taus, {});
  CHECK(corr[0].real() > 0.0);
  const auto num = oracle::spectrum_from_correlation(corr, taus, grid, drive.omega_l);
  double peak = 0.0;
  for (double v : spec.values) peak = std::max(peak, v);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(num.values[i] - spec.values[i]) < 1e-5 * peak);
}

TEST_CASE("steady emission scales as eta squared") {
  const auto mol = molecule(0.5);
  const auto grid = linspace(-45.0, 5.0, 11);
  const auto a = emission_spectrum_steady(mol, {DriveTarget::Molecule, 0.0, 0.01}, grid, {});
  const auto b = emission_spectrum_steady(mol, {DriveTarget::Molecule, 0.0, 0.02}, grid, {});
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(b.values[i] == doctest::Approx(4.0 * a.values[i]));
}

TEST_CASE("steady emission rejects multiple modes and cavity drives") {
  auto mol = molecule(0.5);
  mol.modes.push_back({10.0, 1.0, 0.2});
  CHECK_THROWS_AS(emission_spectrum_steady(mol, {DriveTarget::Molecule, 0.0, 0.05}, {0.0}, {}), Error);
  try {
    emission_spectrum_steady(mol, {DriveTarget::Molecule, 0.0, 0.05}, {0.0}, {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK_THROWS_AS(emission_spectrum_steady(molecule(0.5), {DriveTarget::Cavity, 0.0, 0.05}, {0.0}, {}), Error);
}

TEST_CASE("steady emission reports its truncation") {
  const auto r = emission_spectrum_steady(molecule(0.5), {DriveTarget::Molecule, 0.0, 0.5}, {0.0}, {});
  CHECK(r.truncation_report.retained_weight >= 1.0 - 1e-10);
  CHECK(r.truncation_report.terms > 0);
  REQUIRE(r.flags.size() == 1);
  CHECK(r.flags[0].find("weak-drive") != std::string::npos);
}
