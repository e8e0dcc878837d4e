#include "molspec/model.hpp"

#include <cmath>

#include "molspec/error.hpp"

namespace molspec {

double MoleculeSpec::reorganization_energy() const {
  double s = 0.0;
  for (const auto& m : modes) s += m.lambda * m.lambda * m.nu;
  return s;
}

double MoleculeSpec::polaron_shifted_frequency() const { return omega_e + reorganization_energy(); }

double MoleculeSpec::total_huang_rhys() const {
  double s = 0.0;
  for (const auto& m : modes) s += m.lambda * m.lambda;
  return s;
}

ThermalBath ThermalBath::from_temperature(double temperature, double nu) {
  if (!(temperature >= 0.0) || !(nu > 0.0))
    fail(ErrorCode::InvalidArgument, "ThermalBath::from_temperature",
         "temperature must be >= 0 and nu > 0");
  if (temperature == 0.0) return {0.0};
  return {1.0 / std::expm1(nu / temperature)};
}

double ThermalBath::temperature(double nu) const {
  if (nbar <= 0.0) return 0.0;
  return nu / std::log1p(1.0 / nbar);
}

double GeometrySpec::r_zpm() const { return std::sqrt(1.0 / (2.0 * mu * nu)); }

namespace {

void push(Violations& out, const std::string& prefix, const char* field, const char* rule,
          Severity sev = Severity::Error) {
  out.push_back({prefix + "." + field, rule, sev});
}

void append(Violations& out, Violations more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

}  // namespace

Violations validate(const VibrationalMode& mode, const std::string& prefix) {
  Violations v;
  if (!(mode.nu > 0.0)) push(v, prefix, "nu", "nu must be positive");
  if (!(mode.gamma_vib > 0.0)) push(v, prefix, "gamma_vib", "gamma_vib must be positive");
  if (!(mode.lambda >= 0.0)) push(v, prefix, "lambda", "lambda must be non-negative");
  return v;
}

Violations validate(const MoleculeSpec& mol, const std::string& prefix) {
  Violations v;
  if (!std::isfinite(mol.omega_e)) push(v, prefix, "omega_e", "omega_e must be finite");
  if (!(mol.gamma_rad > 0.0)) push(v, prefix, "gamma_rad", "gamma_rad must be positive");
  for (std::size_t k = 0; k < mol.modes.size(); ++k)
    append(v, validate(mol.modes[k], prefix + ".modes[" + std::to_string(k) + "]"));
  return v;
}

Violations validate(const CavitySpec& cav, const std::string& prefix) {
  Violations v;
  if (!std::isfinite(cav.omega_c)) push(v, prefix, "omega_c", "omega_c must be finite");
  if (!(cav.kappa > 0.0)) push(v, prefix, "kappa", "kappa must be positive");
  if (!(cav.g >= 0.0)) push(v, prefix, "g", "g must be non-negative");
  return v;
}

Violations validate(const DriveSpec& drive, double driven_linewidth, const std::string& prefix) {
  Violations v;
  if (!std::isfinite(drive.omega_l)) push(v, prefix, "omega_l", "omega_l must be finite");
  if (!(drive.eta >= 0.0)) {
    push(v, prefix, "eta", "eta must be non-negative");
  } else if (drive.eta > 0.1 * driven_linewidth) {
    push(v, prefix, "eta", "weak-drive warning: eta exceeds 10% of the driven linewidth",
         Severity::Warning);
  }
  return v;
}

Violations validate(const ThermalBath& bath, const std::string& prefix) {
  Violations v;
  if (!(bath.nbar >= 0.0)) push(v, prefix, "nbar", "nbar must be non-negative");
  return v;
}

Violations validate(const GeometrySpec& geom, const std::string& prefix) {
  Violations v;
  if (!(geom.mu > 0.0)) push(v, prefix, "mu", "mu must be positive");
  if (!(geom.nu > 0.0)) push(v, prefix, "nu", "nu must be positive");
  if (!std::isfinite(geom.r_ge)) push(v, prefix, "r_ge", "r_ge must be finite");
  return v;
}

Violations validate(const FretSpec& spec, const std::string& prefix) {
  Violations v;
  append(v, validate(spec.donor, prefix + ".donor"));
  append(v, validate(spec.acceptor, prefix + ".acceptor"));
  if (!(spec.delta > 0.0)) push(v, prefix, "delta", "delta must be positive (donor above acceptor)");
  if (!(spec.omega_dd >= 0.0)) push(v, prefix, "omega_dd", "omega_dd must be non-negative");
  double min_gamma_a = INFINITY;
  for (const auto& m : spec.acceptor.modes) min_gamma_a = std::min(min_gamma_a, m.gamma_vib);
  if (spec.omega_dd >= min_gamma_a)
    push(v, prefix, "omega_dd",
         "perturbative-regime warning: omega_dd not small against acceptor gamma_vib",
         Severity::Warning);
  if (spec.cavity) {
    const auto& c = *spec.cavity;
    if (!(c.kappa > 0.0)) push(v, prefix, "cavity.kappa", "kappa must be positive");
    if (!(c.g_d >= 0.0)) push(v, prefix, "cavity.g_d", "g_d must be non-negative");
    if (!(c.g_a >= 0.0)) push(v, prefix, "cavity.g_a", "g_a must be non-negative");
    if (!std::isfinite(c.delta_c)) push(v, prefix, "cavity.delta_c", "delta_c must be finite");
  }
  return v;
}

bool has_errors(const Violations& v) {
  for (const auto& x : v)
    if (x.severity == Severity::Error) return true;
  return false;
}

void require_valid(const Violations& v, const char* operation) {
  for (const auto& x : v)
    if (x.severity == Severity::Error) fail(ErrorCode::InvalidArgument, operation, x.field + ": " + x.rule);
}

double huang_rhys_from_geometry(const GeometrySpec& geom) {
  require_valid(validate(geom), "huang_rhys_from_geometry");
  return geom.mu * geom.nu * geom.r_ge * geom.r_zpm();
}

}  // namespace molspec
