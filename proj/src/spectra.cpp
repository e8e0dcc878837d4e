#include "molspec/spectra.hpp"

#include <cmath>

#include "molspec/error.hpp"
#include "molspec/parallel.hpp"

namespace molspec {

void require_grid(const std::vector<double>& grid, const char* operation) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, operation, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) fail(ErrorCode::InvalidArgument, operation, "grid contains a non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      fail(ErrorCode::InvalidArgument, operation, "grid must be strictly increasing");
  }
}

namespace {

void add_flags(std::vector<std::string>& flags, const Violations& v) {
  for (const auto& x : v)
    if (x.severity == Severity::Warning) flags.push_back(x.field + ": " + x.rule);
}

}  // namespace

SpectrumResult absorption_population(const MoleculeSpec& mol, const DriveSpec& drive,
                                     const std::vector<double>& grid, const TruncationPolicy& policy) {
  static const char* op = "absorption_population";
  require_valid(validate(mol), op);
  const Violations dv = validate(drive, mol.gamma_rad);
  require_valid(dv, op);
  if (drive.target != DriveTarget::Molecule)
    fail(ErrorCode::InvalidArgument, op, "drive must target the molecule");
  require_grid(grid, op);

  SpectrumResult out;
  out.grid = grid;
  add_flags(out.flags, dv);
  const IndexSet set = enumerate_indices(mol.modes, policy);
  out.truncation_report = set.report;

  const double g = mol.gamma_rad;
  const double eta2 = drive.eta * drive.eta;
  out.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double det = grid[i] - mol.omega_e;
    double sum = 0.0;
    for (const auto& t : set.terms) {
      const double w = g + t.gamma_sum;
      const double d = det - t.nu_sum;
      sum += t.weight * (w / g) / (w * w + d * d);
    }
    out.values[i] = eta2 * sum;
  });
  return out;
}

SpectrumResult emission_spectrum_transient(const MoleculeSpec& mol, double p0, const std::vector<double>& grid,
                                           const TruncationPolicy& policy) {
  static const char* op = "emission_spectrum_transient";
  require_valid(validate(mol), op);
  if (!(p0 >= 0.0 && p0 <= 1.0)) fail(ErrorCode::InvalidArgument, op, "p0 must lie in [0, 1]");
  require_grid(grid, op);

  SpectrumResult out;
  out.grid = grid;
  const IndexSet set = enumerate_indices(mol.modes, policy);
  out.truncation_report = set.report;

  const double g = mol.gamma_rad;
  out.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double det = grid[i] - mol.omega_e;
    double sum = 0.0;
    for (const auto& t : set.terms) {
      const double w = g + t.gamma_sum;
      const double d = det + t.nu_sum;
      sum += t.weight * 2.0 * p0 * w / (w * w + d * d);
    }
    out.values[i] = sum;
  });
  return out;
}

double branching_ratio(const MoleculeSpec& mol) { return std::exp(-mol.total_huang_rhys()); }

PurcellBranching purcell_branching_ratio(const MoleculeSpec& mol, const CavitySpec& cav) {
  static const char* op = "purcell_branching_ratio";
  require_valid(validate(mol), op);
  require_valid(validate(cav), op);
  PurcellBranching r;
  const double S = mol.total_huang_rhys();
  const double alpha = std::exp(-S);
  r.g00 = cav.g * std::exp(-0.5 * S);
  r.c00 = r.g00 * r.g00 / (cav.kappa * mol.gamma_rad);
  r.alpha_cav = (1.0 + r.c00) * alpha / (1.0 + r.c00 * alpha);
  if (!(cav.kappa > 10.0 * r.g00)) r.flags.push_back("purcell-regime: kappa is not much larger than g00");
  if (!(r.g00 > 10.0 * mol.gamma_rad)) r.flags.push_back("purcell-regime: g00 is not much larger than gamma_rad");
  for (const auto& m : mol.modes) {
    if (!(10.0 * cav.kappa < m.nu)) {
      r.flags.push_back("purcell-regime: kappa is not much smaller than every nu");
      break;
    }
  }
  return r;
}

DephasingEstimate langevin_dephasing_estimate(const MoleculeSpec& mol) {
  DephasingEstimate d;
  for (const auto& m : mol.modes) {
    d.per_mode.push_back(m.lambda * m.lambda * m.gamma_vib);
    d.total += d.per_mode.back();
  }
  return d;
}

}  // namespace molspec
