#include "molspec/fret.hpp"

#include <cmath>

#include "molspec/error.hpp"
#include "molspec/spectra.hpp"

namespace molspec {

namespace {

VibrationalMode single_mode(const MoleculeSpec& mol, const char* op, const char* who) {
  if (mol.modes.size() > 1)
    fail(ErrorCode::Unsupported, op, std::string(who) + " must have at most one vibrational mode");
  return mol.modes.empty() ? VibrationalMode{1.0, 1.0, 0.0} : mol.modes[0];
}

struct PairSums {
  VibrationalMode d, a;
  IndexSet set;
};

PairSums pair_indices(const FretSpec& spec, const TruncationPolicy& policy, const char* op) {
  require_valid(validate(spec), op);
  PairSums p;
  p.d = single_mode(spec.donor, op, "donor");
  p.a = single_mode(spec.acceptor, op, "acceptor");
  p.set = enumerate_indices({p.d, p.a}, policy);
  return p;
}

void warn_flags(const FretSpec& spec, std::vector<std::string>* flags) {
  if (!flags) return;
  for (const auto& x : validate(spec))
    if (x.severity == Severity::Warning) flags->push_back(x.field + ": " + x.rule);
  if (spec.acceptor.gamma_rad < spec.donor.gamma_rad)
    flags->push_back("fret: (0,0) term has a non-positive width for gamma_A < gamma_D and is excluded");
}

}  // namespace

CavityBrackets cavity_brackets(const FretSpec& spec, int n1, int n4) {
  const VibrationalMode d = spec.donor.modes.empty() ? VibrationalMode{1.0, 1.0, 0.0} : spec.donor.modes[0];
  const VibrationalMode a = spec.acceptor.modes.empty() ? VibrationalMode{1.0, 1.0, 0.0} : spec.acceptor.modes[0];
  const FretCavity c = spec.cavity.value_or(FretCavity{});
  const double gD = spec.donor.gamma_rad, gA = spec.acceptor.gamma_rad;
  CavityBrackets b;
  b.donor_acceptor = cplx(gA - gD + n1 * d.gamma_vib + n4 * a.gamma_vib, spec.delta - n1 * d.nu - n4 * a.nu);
  b.b1 = cplx(c.kappa - gD + n1 * d.gamma_vib, -(c.delta_c - n1 * d.nu));
  b.b2 = cplx(c.kappa - gD - n1 * d.gamma_vib, c.delta_c - n1 * d.nu);
  b.b3 = std::conj(b.b1);
  b.b4 = std::conj(b.b2);
  b.acceptor_cavity_gamma = cplx(gA + c.kappa - 2.0 * gD + n4 * a.gamma_vib, spec.delta - c.delta_c - n4 * a.nu);
  b.acceptor_cavity_kappa = cplx(gA - c.kappa + n4 * a.gamma_vib, spec.delta - c.delta_c - n4 * a.nu);
  return b;
}

double fret_rate_direct(const FretSpec& spec, const TruncationPolicy& policy, TruncationReport* report,
                        std::vector<std::string>* flags) {
  static const char* op = "fret_rate_direct";
  const PairSums p = pair_indices(spec, policy, op);
  warn_flags(spec, flags);
  if (report) *report = p.set.report;
  const double om2 = spec.omega_dd * spec.omega_dd;
  const double dg = spec.acceptor.gamma_rad - spec.donor.gamma_rad;
  double k = 0.0;
  for (const auto& t : p.set.terms) {
    const int nD = t.m[0], nA = t.m[1];
    if (nD == 0 && nA == 0) continue;
    const double x = dg + nA * p.a.gamma_vib + nD * p.d.gamma_vib;
    const double y = spec.delta - nA * p.a.nu - nD * p.d.nu;
    k += 2.0 * t.weight * x * om2 / (x * x + y * y);
  }
  return k;
}

TransferRates fret_rate_cavity(const FretSpec& spec, const TruncationPolicy& policy) {
  static const char* op = "fret_rate_cavity";
  if (!spec.cavity) fail(ErrorCode::InvalidArgument, op, "a cavity is required");
  const PairSums p = pair_indices(spec, policy, op);
  TransferRates r;
  r.truncation_report = p.set.report;
  warn_flags(spec, &r.flags);
  r.kappa_et = fret_rate_direct(spec, policy);

  const FretCavity& c = *spec.cavity;
  if (!(c.kappa > 10.0 * std::max(c.g_d, c.g_a)))
    r.flags.push_back("fret_rate_cavity: bad-cavity advisory, kappa is not much larger than g_D, g_A");
  const double Om = spec.omega_dd, gAgD = c.g_a * c.g_d;
  const double scale = std::max({c.kappa, spec.donor.gamma_rad, spec.acceptor.gamma_rad, 1e-300});

  double j_dd = 0.0, j_gamma = 0.0, j_kappa = 0.0;
  for (const auto& t : p.set.terms) {
    const int n1 = t.m[0], n4 = t.m[1];
    const CavityBrackets b = cavity_brackets(spec, n1, n4);
    auto guard = [&](cplx z, const char* name) {
      if (std::abs(z) < 1e-12 * scale)
        fail(ErrorCode::PoleProximity, op,
             std::string("bracket ") + name + " vanishes at (n1, n4) = (" + std::to_string(n1) + ", " +
                 std::to_string(n4) + ")");
    };
    guard(b.b3, "kappa - gamma_D + n1 Gamma_D");
    guard(b.b2, "kappa - gamma_D - n1 Gamma_D");
    guard(b.acceptor_cavity_gamma, "gamma_A + kappa - 2 gamma_D + n4 Gamma_A");
    guard(b.acceptor_cavity_kappa, "gamma_A - kappa + n4 Gamma_A");
    if (n1 != 0 || n4 != 0) guard(b.donor_acceptor, "gamma_A - gamma_D + n1 Gamma_D + n4 Gamma_A");

    const double xA = b.donor_acceptor.real(), yA = b.donor_acceptor.imag();
    const double xc = b.b3.real(), yc = b.b3.imag();
    const double nA2 = std::norm(b.donor_acceptor), nc2 = std::norm(b.b3), ncm2 = std::norm(b.b2);
    const cplx p34 = b.b3 * b.b4;
    const double P = p34.real(), R = -p34.imag();
    const double Xg = b.acceptor_cavity_gamma.real(), Yg = b.acceptor_cavity_gamma.imag();
    const double Xk = b.acceptor_cavity_kappa.real(), Yk = b.acceptor_cavity_kappa.imag();
    const double ng2 = std::norm(b.acceptor_cavity_gamma), nk2 = std::norm(b.acceptor_cavity_kappa);
    const double w = t.weight;

    double dd = 0.0;
    if (n1 != 0 || n4 != 0) dd += 2.0 * Om * Om * xA / nA2;
    if (gAgD != 0.0) dd -= 2.0 * Om * gAgD * (yA * xc + yc * xA) / (nA2 * nc2);
    j_dd += w * dd;

    if (gAgD != 0.0) {
      const double cross = (Xg * xc + Yg * yc) / (ng2 * nc2) + (Xg * xA - Yg * yA) / (ng2 * nA2);
      const double pure = (Yg * P + Xg * R) / (ng2 * nc2 * ncm2) + (yA * P - xA * R) / (nA2 * nc2 * ncm2);
      j_gamma += w * (-2.0 * Om * gAgD * cross + 2.0 * gAgD * gAgD * pure);
      j_kappa += w * 2.0 * gAgD * gAgD * ((Yk * P + Xk * R) + (Yk * P - Xk * R)) / (nk2 * nc2 * ncm2);
    }
  }
  r.j_cavity_dd = j_dd;
  r.j_cavity_pure_gamma = j_gamma;
  r.j_cavity_pure_kappa = j_kappa;
  return r;
}

PumpProbeTrace pump_probe_dynamics(const FretSpec& spec, double p_d0, const std::vector<double>& times,
                                   const TruncationPolicy& policy) {
  static const char* op = "pump_probe_dynamics";
  if (!(p_d0 >= 0.0 && p_d0 <= 1.0)) fail(ErrorCode::InvalidArgument, op, "p_d0 must lie in [0, 1]");
  require_grid(times, op);
  if (times.front() < 0.0) fail(ErrorCode::InvalidArgument, op, "times must be >= 0");
  PumpProbeTrace tr;
  tr.kappa_et = fret_rate_direct(spec, policy, &tr.truncation_report, &tr.flags);
  tr.times = times;
  const double kD = 2.0 * spec.donor.gamma_rad + tr.kappa_et;
  const double kA = 2.0 * spec.acceptor.gamma_rad;
  const bool degenerate = std::abs(kA - kD) < 1e-12 * spec.acceptor.gamma_rad;
  for (double t : times) {
    const double eD = std::exp(-kD * t);
    tr.p_donor.push_back(p_d0 * eD);
    const double pa = degenerate ? tr.kappa_et * p_d0 * t * std::exp(-kA * t)
                                 : tr.kappa_et * p_d0 * (eD - std::exp(-kA * t)) / (kA - kD);
    tr.p_acceptor.push_back(pa);
    tr.p_donor_uncoupled.push_back(p_d0 * std::exp(-2.0 * spec.donor.gamma_rad * t));
    tr.p_acceptor_tangent.push_back(tr.kappa_et * p_d0 * t);
  }
  return tr;
}

}  // namespace molspec
