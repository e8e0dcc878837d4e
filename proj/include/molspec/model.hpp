#pragma once

// Domain types. All frequencies and rates share one caller-chosen unit
// (hbar = k_B = 1); nothing here knows about physical units.

#include <optional>
#include <string>
#include <vector>

namespace molspec {

struct VibrationalMode {
  double nu = 1.0;         // vibration frequency
  double gamma_vib = 0.1;  // relaxation rate Gamma_k
  double lambda = 0.0;     // sqrt of the Huang-Rhys factor

  double huang_rhys() const { return lambda * lambda; }
};

struct MoleculeSpec {
  double omega_e = 0.0;    // electronic transition frequency
  double gamma_rad = 1.0;  // radiative decay rate
  std::vector<VibrationalMode> modes;

  // omega_e + sum_k lambda_k^2 nu_k, the bare excited-level energy in h0.
  double polaron_shifted_frequency() const;
  // sum_k lambda_k^2 nu_k
  double reorganization_energy() const;
  double total_huang_rhys() const;
};

struct CavitySpec {
  double omega_c = 0.0;
  double kappa = 1.0;
  double g = 0.0;
};

enum class DriveTarget { Molecule, Cavity };

struct DriveSpec {
  DriveTarget target = DriveTarget::Molecule;
  double omega_l = 0.0;
  double eta = 0.0;
};

struct ThermalBath {
  double nbar = 0.0;

  static ThermalBath from_temperature(double temperature, double nu);
  // Temperature reproducing nbar for a mode of frequency nu; zero when nbar == 0.
  double temperature(double nu) const;
};

struct GeometrySpec {
  double mu = 1.0;
  double nu = 1.0;
  double r_ge = 0.0;

  double r_zpm() const;
};

// Cavity attached to a donor-acceptor pair. delta_c = omega_D - omega_c.
struct FretCavity {
  double kappa = 1.0;
  double g_d = 0.0;
  double g_a = 0.0;
  double delta_c = 0.0;
};

struct FretSpec {
  MoleculeSpec donor;
  MoleculeSpec acceptor;
  double omega_dd = 0.0;  // dipole-dipole exchange rate Omega(r)
  double delta = 0.0;     // omega_D - omega_A
  std::optional<FretCavity> cavity;
};

enum class Severity { Error, Warning };

struct Violation {
  std::string field;
  std::string rule;
  Severity severity = Severity::Error;
};

using Violations = std::vector<Violation>;

Violations validate(const VibrationalMode& mode, const std::string& prefix = "VibrationalMode");
Violations validate(const MoleculeSpec& mol, const std::string& prefix = "MoleculeSpec");
Violations validate(const CavitySpec& cav, const std::string& prefix = "CavitySpec");
// The weak-drive check needs the linewidth of whatever is being driven.
Violations validate(const DriveSpec& drive, double driven_linewidth,
                    const std::string& prefix = "DriveSpec");
Violations validate(const ThermalBath& bath, const std::string& prefix = "ThermalBath");
Violations validate(const GeometrySpec& geom, const std::string& prefix = "GeometrySpec");
Violations validate(const FretSpec& spec, const std::string& prefix = "FretSpec");

bool has_errors(const Violations& v);
// Throws InvalidArgument naming the first error-severity violation.
void require_valid(const Violations& v, const char* operation);

// lambda = mu nu R_ge r_zpm = R_ge sqrt(mu nu / 2)
double huang_rhys_from_geometry(const GeometrySpec& geom);

}  // namespace molspec
