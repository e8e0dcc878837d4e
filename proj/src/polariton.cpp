#include <cmath>

#include "molspec/error.hpp"
#include "molspec/parallel.hpp"
#include "molspec/spectra.hpp"

namespace molspec {

namespace {

struct Drift {
  cplx a, d;  // diagonal entries of M; off-diagonals are +g and -g
  double g;
};

Drift drift_matrix(const MoleculeSpec& mol, const CavitySpec& cav, double omega_l) {
  const double omega_c_bar = cav.omega_c - mol.reorganization_energy();
  return {-cplx(mol.gamma_rad, -(omega_l - mol.omega_e)), -cplx(cav.kappa, -(omega_l - omega_c_bar)), cav.g};
}

bool is_exceptional(const MoleculeSpec& mol, const CavitySpec& cav) {
  const cplx diff(cav.kappa - mol.gamma_rad, cav.omega_c - mol.reorganization_energy() - mol.omega_e);
  const double scale = std::max({cav.kappa, mol.gamma_rad, cav.g});
  return std::abs(4.0 * cav.g * cav.g - diff * diff) < 1e-12 * scale * scale;
}

// Unit eigenvector of [[a, g], [-g, d]] for eigenvalue e, from whichever of the
// two null-space candidates is better conditioned.
void eigenvector(const Drift& M, cplx e, cplx& v1, cplx& v2) {
  const cplx p1 = M.g, p2 = e - M.a;
  const cplx q1 = e - M.d, q2 = -M.g;
  if (std::norm(p1) + std::norm(p2) >= std::norm(q1) + std::norm(q2)) {
    v1 = p1;
    v2 = p2;
  } else {
    v1 = q1;
    v2 = q2;
  }
  const double n = std::sqrt(std::norm(v1) + std::norm(v2));
  v1 /= n;
  v2 /= n;
}

}  // namespace

PolaritonModes polariton_modes(const MoleculeSpec& mol, const CavitySpec& cav, double omega_l) {
  static const char* op = "polariton_modes";
  require_valid(validate(mol), op);
  require_valid(validate(cav), op);
  const Drift M = drift_matrix(mol, cav, omega_l);

  PolaritonModes pm;
  pm.drift[0][0] = M.a;
  pm.drift[0][1] = M.g;
  pm.drift[1][0] = -M.g;
  pm.drift[1][1] = M.d;

  const cplx mean = 0.5 * (M.a + M.d);
  const cplx half = 0.5 * (M.a - M.d);
  const cplx root = std::sqrt(half * half - M.g * M.g);
  cplx e1 = mean + root, e2 = mean - root;
  // "+" is the mode with the larger lab frequency omega_l - Im(eps), i.e. the smaller Im(eps).
  const double tie = 1e-14 * std::max({std::abs(e1), std::abs(e2), 1.0});
  const bool swap = std::abs(e1.imag() - e2.imag()) <= tie ? (e2.real() < e1.real()) : (e2.imag() < e1.imag());
  if (swap) std::swap(e1, e2);
  pm.eps_plus = e1;
  pm.eps_minus = e2;
  pm.omega_plus = omega_l - e1.imag();
  pm.omega_minus = omega_l - e2.imag();
  pm.gamma_plus = -e1.real();
  pm.gamma_minus = -e2.real();
  pm.exceptional = is_exceptional(mol, cav);

  cplx t11, t21, t12, t22;
  eigenvector(M, e1, t11, t21);
  if (pm.exceptional) {
    // Jordan chain: (M - e) w = v, solved in the least-squares sense and made orthogonal to v.
    const cplx e = mean;
    eigenvector(M, e, t11, t21);
    const cplx m11 = M.a - e, m12 = M.g, m21 = -M.g, m22 = M.d - e;
    // Solve via the row with the larger norm; the system is rank one.
    if (std::norm(m11) + std::norm(m12) >= std::norm(m21) + std::norm(m22)) {
      const double n2 = std::norm(m11) + std::norm(m12);
      t12 = std::conj(m11) * t11 / n2;
      t22 = std::conj(m12) * t11 / n2;
    } else {
      const double n2 = std::norm(m21) + std::norm(m22);
      t12 = std::conj(m21) * t21 / n2;
      t22 = std::conj(m22) * t21 / n2;
    }
    const cplx proj = std::conj(t11) * t12 + std::conj(t21) * t22;
    t12 -= proj * t11;
    t22 -= proj * t21;
  } else {
    eigenvector(M, e2, t12, t22);
  }
  pm.t_matrix[0][0] = t11;
  pm.t_matrix[1][0] = t21;
  pm.t_matrix[0][1] = t12;
  pm.t_matrix[1][1] = t22;
  pm.det_t = t11 * t22 - t12 * t21;
  return pm;
}

SpectrumResult cavity_transmission(const MoleculeSpec& mol, const CavitySpec& cav, const DriveSpec& drive,
                                   const std::vector<double>& grid, const TruncationPolicy& policy) {
  static const char* op = "cavity_transmission";
  require_valid(validate(mol), op);
  require_valid(validate(cav), op);
  const Violations dv = validate(drive, cav.kappa);
  require_valid(dv, op);
  if (drive.target != DriveTarget::Cavity) fail(ErrorCode::InvalidArgument, op, "drive must target the cavity");
  require_grid(grid, op);

  SpectrumResult out;
  out.grid = grid;
  for (const auto& x : dv)
    if (x.severity == Severity::Warning) out.flags.push_back(x.field + ": " + x.rule);
  const IndexSet set = enumerate_indices(mol.modes, policy);
  out.truncation_report = set.report;
  const bool ep = is_exceptional(mol, cav);
  if (ep) out.flags.push_back("exceptional-point: transmission evaluated from the resolvent limit");

  out.complex_values.assign(grid.size(), 0.0);
  out.values.assign(grid.size(), 0.0);
  std::vector<int> bad(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double wl = grid[i];
    cplx tc = 0.0;
    if (ep) {
      const Drift M = drift_matrix(mol, cav, wl);
      for (const auto& t : set.terms) {
        const cplx z(t.gamma_sum, t.nu_sum);
        tc += t.weight * (z - M.a) / ((z - M.a) * (z - M.d) + M.g * M.g);
      }
    } else {
      const PolaritonModes pm = polariton_modes(mol, cav, wl);
      if (std::abs(pm.det_t) < 1e-13) {
        bad[i] = 1;
        return;
      }
      const cplx c_minus = pm.t_matrix[0][0] * pm.t_matrix[1][1] / pm.det_t;
      const cplx c_plus = pm.t_matrix[0][1] * pm.t_matrix[1][0] / pm.det_t;
      cplx s_minus = 0.0, s_plus = 0.0;
      for (const auto& t : set.terms) {
        s_minus += t.weight / cplx(pm.gamma_minus + t.gamma_sum, -(wl - pm.omega_minus - t.nu_sum));
        s_plus += t.weight / cplx(pm.gamma_plus + t.gamma_sum, -(wl - pm.omega_plus - t.nu_sum));
      }
      tc = c_minus * s_minus - c_plus * s_plus;
    }
    tc *= cav.kappa;
    out.complex_values[i] = tc;
    out.values[i] = std::norm(tc);
  });
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (bad[i])
      fail(ErrorCode::Conditioning, op, "eigenvector matrix nearly singular at omega_l = " + std::to_string(grid[i]));
  return out;
}

double polariton_crosstalk_rate(const MoleculeSpec& mol, const CavitySpec& cav) {
  static const char* op = "polariton_crosstalk_rate";
  if (mol.modes.size() != 1) fail(ErrorCode::Unsupported, op, "exactly one vibrational mode is required");
  const PolaritonModes pm = polariton_modes(mol, cav, mol.omega_e);
  const auto& m = mol.modes[0];
  const double G = m.gamma_vib;
  const double d = pm.omega_plus - pm.omega_minus - m.nu;
  return 0.5 * m.lambda * m.lambda * m.nu * m.nu * G / (G * G + d * d);
}

}  // namespace molspec
