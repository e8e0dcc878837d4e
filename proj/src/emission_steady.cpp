// Steady-state fluorescence of a weakly driven single-mode molecule.
//
// With a = Gamma + i nu, abar = Gamma - i nu and D = omega_l - omega_e, the
// four-point displacement correlator expands into six Poisson indices n1..n6
// and the connected correlation in the laser frame reads
//
//   G(T) = eta^2 e^{4 lambda^2} sum prod_k s_{n_k} (-1)^{n2+n5} [R1 + R2 + R3]
//
//   c   = n1 abar - (n2+n3) a + (gamma + iD)      c'  = (n3+n5+n6) a + (gamma - iD)
//   cT  = -n1 abar - (n4+n5) a - (gamma + iD)     m   = n2+n3+n4+n5
//   d   = (n1+n2) abar - n3 a + (gamma + iD)
//   e   = (n1+n2+n3) abar + (gamma + iD)          e'  = -n3 abar + (n5+n6) a + (gamma - iD)
//
//   R1 = (e^{-m a T} - e^{cT T}) / (c c')
//   R2 = e^{cT T} (1/d) (1/c' - 1/(d + c'))
//   R3 = e^{cT T} / (e (e + e'))
//
// The m = 0 part of the first exponential is |<sigma>|^2, the elastic line.
// Every term is a single exponential, so amplitudes are accumulated per pole:
// Raman poles m a and fluorescence poles -cT keyed by (n1, n4+n5).

#include <cmath>

#include "molspec/error.hpp"
#include "molspec/parallel.hpp"
#include "molspec/spectra.hpp"

namespace molspec {

namespace {

struct PoleSet {
  cplx a;
  std::vector<cplx> raman;                     // index m >= 1, amplitude of e^{-m a T}
  std::vector<std::vector<cplx>> fluo;         // [n1][n4+n5], amplitude of e^{-s T}
  std::vector<std::vector<cplx>> fluo_pole;    // s for each entry
  double coherent = 0.0;
  TruncationReport report;
};

PoleSet build_poles(const MoleculeSpec& mol, const DriveSpec& drive, const TruncationPolicy& policy,
                    const char* op) {
  require_valid(validate(mol), op);
  const Violations dv = validate(drive, mol.gamma_rad);
  require_valid(dv, op);
  if (drive.target != DriveTarget::Molecule) fail(ErrorCode::InvalidArgument, op, "drive must target the molecule");
  if (mol.modes.size() > 1)
    fail(ErrorCode::Unsupported, op, "steady-state emission is only available for a single vibrational mode");
  if (!(policy.epsilon >= 0.0)) fail(ErrorCode::InvalidArgument, op, "epsilon must be >= 0");

  const VibrationalMode mode = mol.modes.empty() ? VibrationalMode{1.0, 1.0, 0.0} : mol.modes[0];
  const double lam = mode.lambda;
  const double l2 = lam * lam;
  int M = mode_order(lam, policy.epsilon / 6.0, policy.max_order);
  if (M < 0) {
    M = policy.max_order;
  }
  const std::vector<double> s = poisson_weights(lam, M);
  double head = 0.0;
  for (double x : s) head += x;
  const double retained = std::pow(head, 6);

  PoleSet P;
  P.report.mode_orders = {M};
  P.report.retained_weight = retained;
  if (retained < 1.0 - policy.epsilon - 1e-15)
    throw TruncationError(op, "six-fold sum cannot reach the requested weight", retained);

  const double g = mol.gamma_rad;
  const double D = drive.omega_l - mol.omega_e;
  const cplx a(mode.gamma_vib, mode.nu), ab(mode.gamma_vib, -mode.nu);
  const cplx gp(g, D), gm(g, -D);
  P.a = a;
  P.raman.assign(4 * M + 1, 0.0);
  P.fluo.assign(M + 1, std::vector<cplx>(2 * M + 1, 0.0));
  P.fluo_pole.assign(M + 1, std::vector<cplx>(2 * M + 1, 0.0));
  for (int n1 = 0; n1 <= M; ++n1)
    for (int k = 0; k <= 2 * M; ++k) P.fluo_pole[n1][k] = double(n1) * ab + double(k) * a + gp;

  // u_n = lambda^{2n}/n!, so e^{4 l2} prod s = e^{-2 l2} prod u.
  std::vector<double> u(M + 1);
  for (int n = 0; n <= M; ++n) u[n] = n == 0 ? 1.0 : u[n - 1] * l2 / n;
  const double pref = std::exp(-2.0 * l2);
  const double scale = std::max({g, mode.gamma_vib, std::abs(D), 1e-300});
  auto guard = [&](cplx z, const char* name, int n1, int n2, int n3, int n4, int n5, int n6) {
    if (std::abs(z) < 1e-10 * scale)
      fail(ErrorCode::PoleProximity, op,
           std::string("denominator ") + name + " vanishes at n = (" + std::to_string(n1) + "," + std::to_string(n2) +
               "," + std::to_string(n3) + "," + std::to_string(n4) + "," + std::to_string(n5) + "," +
               std::to_string(n6) + ")");
  };

  std::size_t terms = 0;
  for (int n1 = 0; n1 <= M; ++n1)
    for (int n2 = 0; n2 <= M; ++n2)
      for (int n3 = 0; n3 <= M; ++n3) {
        const cplx c = double(n1) * ab - double(n2 + n3) * a + gp;
        const cplx d = double(n1 + n2) * ab - double(n3) * a + gp;
        const cplx e = double(n1 + n2 + n3) * ab + gp;
        for (int n4 = 0; n4 <= M; ++n4)
          for (int n5 = 0; n5 <= M; ++n5)
            for (int n6 = 0; n6 <= M; ++n6) {
              if (n1 + n2 + n3 + n4 + n5 + n6 > policy.max_order) continue;
              const double w =
                  pref * u[n1] * u[n2] * u[n3] * u[n4] * u[n5] * u[n6] * (((n2 + n5) & 1) ? -1.0 : 1.0);
              if (w == 0.0) continue;
              ++terms;
              const cplx cp = double(n3 + n5 + n6) * a + gm;
              const cplx ep = -double(n3) * ab + double(n5 + n6) * a + gm;
              guard(c, "c", n1, n2, n3, n4, n5, n6);
              guard(cp, "c'", n1, n2, n3, n4, n5, n6);
              guard(d, "d", n1, n2, n3, n4, n5, n6);
              guard(d + cp, "d+c'", n1, n2, n3, n4, n5, n6);
              guard(e, "e", n1, n2, n3, n4, n5, n6);
              guard(e + ep, "e+e'", n1, n2, n3, n4, n5, n6);
              const cplx inv_ccp = 1.0 / (c * cp);
              const int m = n2 + n3 + n4 + n5;
              if (m == 0)
                P.coherent += (w * inv_ccp).real();
              else
                P.raman[m] += w * inv_ccp;
              const cplx r2 = (1.0 / d) * (1.0 / cp - 1.0 / (d + cp));
              const cplx r3 = 1.0 / (e * (e + ep));
              P.fluo[n1][n4 + n5] += w * (r2 + r3 - inv_ccp);
            }
      }
  P.report.terms = terms;
  P.report.max_order_used = std::min(6 * M, policy.max_order);

  const double eta2 = drive.eta * drive.eta;
  for (auto& x : P.raman) x *= eta2;
  for (auto& row : P.fluo)
    for (auto& x : row) x *= eta2;
  P.coherent *= eta2;
  return P;
}

}  // namespace

std::vector<cplx> steady_emission_correlation(const MoleculeSpec& mol, const DriveSpec& drive,
                                              const std::vector<double>& taus, const TruncationPolicy& policy) {
  static const char* op = "steady_emission_correlation";
  const PoleSet P = build_poles(mol, drive, policy, op);
  std::vector<cplx> out(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double T = taus[i];
    if (!(T >= 0.0)) fail(ErrorCode::InvalidArgument, op, "tau must be >= 0");
    cplx sum = 0.0;
    for (std::size_t m = 1; m < P.raman.size(); ++m) sum += P.raman[m] * std::exp(-double(m) * P.a * T);
    for (std::size_t n1 = 0; n1 < P.fluo.size(); ++n1)
      for (std::size_t k = 0; k < P.fluo[n1].size(); ++k) sum += P.fluo[n1][k] * std::exp(-P.fluo_pole[n1][k] * T);
    out[i] = sum;
  }
  return out;
}

SteadyEmission emission_spectrum_steady_detail(const MoleculeSpec& mol, const DriveSpec& drive,
                                               const std::vector<double>& grid, const TruncationPolicy& policy) {
  static const char* op = "emission_spectrum_steady";
  const PoleSet P = build_poles(mol, drive, policy, op);
  require_grid(grid, op);
  SteadyEmission out;
  out.coherent_intensity = P.coherent;
  cplx g0 = 0.0;
  for (std::size_t m = 1; m < P.raman.size(); ++m) g0 += P.raman[m];
  for (const auto& row : P.fluo)
    for (const auto& x : row) g0 += x;
  out.excited_population = g0.real() + P.coherent;

  SpectrumResult& s = out.spectrum;
  s.grid = grid;
  s.truncation_report = P.report;
  for (const auto& x : validate(drive, mol.gamma_rad))
    if (x.severity == Severity::Warning) s.flags.push_back(x.field + ": " + x.rule);
  s.values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const cplx iw(0.0, grid[i] - drive.omega_l);
    cplx sum = 0.0;
    for (std::size_t m = 1; m < P.raman.size(); ++m) sum += P.raman[m] / (double(m) * P.a + iw);
    for (std::size_t n1 = 0; n1 < P.fluo.size(); ++n1)
      for (std::size_t k = 0; k < P.fluo[n1].size(); ++k) sum += P.fluo[n1][k] / (P.fluo_pole[n1][k] + iw);
    s.values[i] = 2.0 * sum.real();
  });
  return out;
}

SpectrumResult emission_spectrum_steady(const MoleculeSpec& mol, const DriveSpec& drive,
                                        const std::vector<double>& grid, const TruncationPolicy& policy) {
  return emission_spectrum_steady_detail(mol, drive, grid, policy).spectrum;
}

}  // namespace molspec
