#include "molspec/oracle_experiments.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

#include "molspec/error.hpp"
#include "molspec/parallel.hpp"

namespace molspec::oracle {

namespace {

constexpr cplx I1{0.0, 1.0};
constexpr std::size_t kMaxSamples = 400000;

struct SidedJump {
  SpMat ket, bra;
  double rate;
};

SpMat dagger(const SpMat& m) { return SpMat(m.adjoint()); }

// X -> -i (Hk X - X Hb) + sum rate (2 ck X cb^dag - ck^dag ck X - X cb^dag cb)
SpMat coherence_generator(const SpMat& Hk, const SpMat& Hb, const std::vector<SidedJump>& jumps) {
  const SpMat ik = identity(Hk.rows());
  const SpMat ib = identity(Hb.rows());
  auto kron = [](const SpMat& a, const SpMat& b) {
    SpMat out = Eigen::kroneckerProduct(a, b);
    return out;
  };
  SpMat S = (-I1) * SpMat(kron(ib, Hk) - kron(SpMat(Hb.transpose()), ik));
  for (const auto& j : jumps) {
    const SpMat nk = dagger(j.ket) * j.ket;
    const SpMat nb = dagger(j.bra) * j.bra;
    S += j.rate * SpMat(2.0 * kron(SpMat(j.bra.conjugate()), j.ket) - kron(ib, nk) - kron(SpMat(nb.transpose()), ik));
  }
  S.prune(cplx(0.0));
  S.makeCompressed();
  return S;
}

struct ModeManifolds {
  SpMat h_ground, h_excited;
  std::vector<SpMat> c_ground, c_excited;  // matched pairs
  std::vector<double> rates;
};

ModeManifolds mode_manifolds(const VibrationalMode& mode, int n, VibrationalRelaxation relax, const ThermalBath& bath) {
  const SpMat b = destroy(n);
  const SpMat bd = dagger(b);
  const SpMat id = identity(n);
  ModeManifolds m;
  m.h_ground = mode.nu * SpMat(bd * b);
  m.h_excited = SpMat(m.h_ground - (mode.lambda * mode.nu) * SpMat(b + bd));
  SpMat ce = b;
  if (relax == VibrationalRelaxation::Displaced) ce = SpMat(b - mode.lambda * id);
  if (mode.gamma_vib > 0.0) {
    m.c_ground.push_back(b);
    m.c_excited.push_back(ce);
    m.rates.push_back(mode.gamma_vib * (bath.nbar + 1.0));
    if (bath.nbar > 0.0) {
      m.c_ground.push_back(bd);
      m.c_excited.push_back(dagger(ce));
      m.rates.push_back(mode.gamma_vib * bath.nbar);
    }
  }
  return m;
}

Mat manifold_steady_state(const SpMat& H, const std::vector<SpMat>& cs, const std::vector<double>& rates) {
  std::vector<SidedJump> jumps;
  for (std::size_t i = 0; i < cs.size(); ++i) jumps.push_back({cs[i], cs[i], rates[i]});
  Liouvillian L;
  L.ket_dim = L.bra_dim = static_cast<std::size_t>(H.rows());
  L.superop = coherence_generator(H, H, jumps);
  return steady_state(L).rho.matrix;
}

Vec vec_of(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }
// Functional X -> Tr[A X] for A of shape bra x ket.
Vec trace_functional(const Mat& A) { return vec_of(Mat(A.transpose())); }

std::vector<double> uniform_taus(double dt, double tau_max) {
  const auto n = static_cast<std::size_t>(std::ceil(tau_max / dt));
  if (n + 1 > kMaxSamples)
    fail(ErrorCode::InvalidArgument, "oracle", "correlation window needs " + std::to_string(n + 1) +
                                                   " samples; raise dt or lower tau_max");
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = dt * static_cast<double>(i);
  return t;
}

double vib_frequency_scale(const MoleculeSpec& mol) {
  double s = 0.0;
  for (const auto& m : mol.modes) s += m.nu * (1.0 + m.lambda * m.lambda + 3.0 * m.lambda) + m.gamma_vib;
  return s;
}

std::vector<double> pick_taus(const OracleOptions& opt, double slowest_rate, double frequency_scale) {
  const double tau_max = opt.tau_max > 0.0 ? opt.tau_max : 1.2 * std::log(1.0 / opt.decay_threshold) / slowest_rate;
  const double dt = opt.dt > 0.0 ? opt.dt : 0.05 / std::max(frequency_scale, slowest_rate);
  return uniform_taus(dt, tau_max);
}

HilbertLayout molecule_layout(const MoleculeSpec& mol, const OracleOptions& opt, int cavity_dim, const char* op) {
  HilbertLayout layout = opt.layout ? *opt.layout : default_layout({mol}, cavity_dim);
  const Violations v = validate(layout, {mol}, cavity_dim > 0);
  for (const auto& x : v)
    if (x.severity == Severity::Error) fail(ErrorCode::Layout, op, x.field + ": " + x.rule);
  return layout;
}

std::vector<ThermalBath> baths_for(const MoleculeSpec& mol, const OracleOptions& opt, const char* op) {
  if (opt.baths.empty()) return std::vector<ThermalBath>(mol.modes.size());
  if (opt.baths.size() != mol.modes.size()) fail(ErrorCode::InvalidArgument, op, "one bath per mode is required");
  return opt.baths;
}

void check_decay(const std::vector<cplx>& c, double threshold, const char* op) {
  double peak = 0.0;
  for (const auto& x : c) peak = std::max(peak, std::abs(x));
  if (peak > 0.0 && std::abs(c.back()) > threshold * peak)
    fail(ErrorCode::Windowing, op, "correlation has only decayed to " + std::to_string(std::abs(c.back()) / peak));
}

SystemSpec single_molecule(const MoleculeSpec& mol, const OracleOptions& opt) {
  SystemSpec sys;
  sys.molecules = {mol};
  sys.relaxation = opt.relaxation;
  sys.baths = opt.baths;
  sys.frame = mol.omega_e;
  return sys;
}

// Single-molecule coherence correlation. absorption: Tr[sigma e^{L tau} sigma^dag rho_g];
// emission: Tr[sigma^dag e^{L tau} sigma rho_e] with rho_e relaxed in the excited manifold.
std::vector<cplx> molecule_coherence(const MoleculeSpec& mol, bool absorption, const std::vector<double>& taus,
                                     const OracleOptions& opt, const HilbertLayout& layout) {
  const double shift = mol.reorganization_energy();
  const double g = mol.gamma_rad;
  std::vector<cplx> out(taus.size(), 1.0);
  if (opt.factorized) {
    const auto baths = baths_for(mol, opt, "oracle");
    for (std::size_t k = 0; k < mol.modes.size(); ++k) {
      const auto f = mode_coherence_factor(mol.modes[k], layout.vib_dims[k], absorption, taus, opt, baths[k]);
      for (std::size_t i = 0; i < taus.size(); ++i) out[i] *= f[i];
    }
    const double s = absorption ? -1.0 : 1.0;
    for (std::size_t i = 0; i < taus.size(); ++i) out[i] *= std::exp(cplx(-g, s * shift) * taus[i]);
    return out;
  }

  const SystemSpec sys = single_molecule(mol, opt);
  const SpMat H = build_hamiltonian(sys, layout);
  const auto collapses = standard_collapses(sys, layout);
  const auto s0 = layout.sector(0);
  const auto s1 = layout.sector(1);
  const Operators ops = build_operators(sys, layout);
  const SpMat& sm = ops.sigma[0];
  const SpMat sp = dagger(sm);
  if (absorption) {
    const Mat rho_g = steady_state(build_block_liouvillian(H, collapses, s0, s0)).rho.matrix;
    const Mat X0 = Mat(restrict(sp, s1, s0)) * rho_g;
    const Liouvillian L = build_block_liouvillian(H, collapses, s1, s0);
    return propagate_functional(L.superop, vec_of(X0), trace_functional(Mat(restrict(sm, s0, s1))), taus,
                                opt.propagation);
  }
  SystemSpec relaxed = sys;
  relaxed.include_radiative = false;
  const Mat rho_e =
      steady_state(build_block_liouvillian(H, standard_collapses(relaxed, layout), s1, s1)).rho.matrix;
  const Mat X0 = Mat(restrict(sm, s0, s1)) * rho_e;
  const Liouvillian L = build_block_liouvillian(H, collapses, s0, s1);
  return propagate_functional(L.superop, vec_of(X0), trace_functional(Mat(restrict(sp, s1, s0))), taus,
                              opt.propagation);
}

}  // namespace

std::vector<cplx> mode_coherence_factor(const VibrationalMode& mode, int fock_dim, bool ket_excited,
                                        const std::vector<double>& taus, const OracleOptions& opt,
                                        const ThermalBath& bath) {
  if (fock_dim < 1) fail(ErrorCode::Layout, "mode_coherence_factor", "Fock dimension must be at least 1");
  const ModeManifolds m = mode_manifolds(mode, fock_dim, opt.relaxation, bath);
  const SpMat& Hk = ket_excited ? m.h_excited : m.h_ground;
  const SpMat& Hb = ket_excited ? m.h_ground : m.h_excited;
  std::vector<SidedJump> jumps;
  for (std::size_t i = 0; i < m.rates.size(); ++i)
    jumps.push_back({ket_excited ? m.c_excited[i] : m.c_ground[i], ket_excited ? m.c_ground[i] : m.c_excited[i],
                     m.rates[i]});
  // The coherence starts from the vibrational state of the bra manifold.
  const Mat y0 = ket_excited ? manifold_steady_state(m.h_ground, m.c_ground, m.rates)
                             : manifold_steady_state(m.h_excited, m.c_excited, m.rates);
  const SpMat S = coherence_generator(Hk, Hb, jumps);
  return propagate_functional(S, vec_of(y0), trace_functional(Mat::Identity(fock_dim, fock_dim)), taus,
                              opt.propagation);
}

OracleSpectrum oracle_absorption(const MoleculeSpec& mol, double eta, const std::vector<double>& grid,
                                 const OracleOptions& opt) {
  static const char* op = "oracle_absorption";
  require_valid(validate(mol), op);
  require_grid(grid, op);
  if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, op, "eta must be positive");
  OracleSpectrum out;
  out.layout = molecule_layout(mol, opt, 0, op);
  out.frame = mol.omega_e;
  out.taus = pick_taus(opt, mol.gamma_rad, vib_frequency_scale(mol) + mol.reorganization_energy());
  const auto c = molecule_coherence(mol, true, out.taus, opt, out.layout);
  out.correlation.resize(c.size());
  std::transform(c.begin(), c.end(), out.correlation.begin(), [](cplx x) { return std::conj(x); });
  out.spectrum = spectrum_from_correlation(out.correlation, out.taus, grid, out.frame, opt.decay_threshold);
  const double scale = eta * eta / (2.0 * mol.gamma_rad);
  for (double& v : out.spectrum.values) v *= scale;
  return out;
}

OracleSpectrum oracle_emission_transient(const MoleculeSpec& mol, double p0, const std::vector<double>& grid,
                                         const OracleOptions& opt) {
  static const char* op = "oracle_emission_transient";
  require_valid(validate(mol), op);
  require_grid(grid, op);
  if (!(p0 >= 0.0 && p0 <= 1.0)) fail(ErrorCode::InvalidArgument, op, "p0 must lie in [0, 1]");
  OracleSpectrum out;
  out.layout = molecule_layout(mol, opt, 0, op);
  out.frame = mol.omega_e;
  out.taus = pick_taus(opt, mol.gamma_rad, vib_frequency_scale(mol) + mol.reorganization_energy());
  out.correlation = molecule_coherence(mol, false, out.taus, opt, out.layout);
  for (auto& x : out.correlation) x *= p0;
  out.spectrum = spectrum_from_correlation(out.correlation, out.taus, grid, out.frame, opt.decay_threshold);
  return out;
}

double oracle_steady_population(const MoleculeSpec& mol, const DriveSpec& drive, const OracleOptions& opt) {
  static const char* op = "oracle_steady_population";
  require_valid(validate(mol), op);
  if (drive.target != DriveTarget::Molecule) fail(ErrorCode::InvalidArgument, op, "drive must target the molecule");
  const HilbertLayout layout = molecule_layout(mol, opt, 0, op);
  SystemSpec sys = single_molecule(mol, opt);
  sys.drive = drive;
  sys.frame.reset();
  const Liouvillian L = build_liouvillian(build_hamiltonian(sys, layout), standard_collapses(sys, layout), layout);
  const auto ss = steady_state(L);
  const Operators ops = build_operators(sys, layout);
  return ss.rho.expect(SpMat(dagger(ops.sigma[0]) * ops.sigma[0])).real();
}

SpectrumResult oracle_transmission(const MoleculeSpec& mol, const CavitySpec& cav, const std::vector<double>& grid,
                                   const OracleOptions& opt) {
  static const char* op = "oracle_transmission";
  require_valid(validate(mol), op);
  require_valid(validate(cav), op);
  require_grid(grid, op);
  const HilbertLayout layout = molecule_layout(mol, opt, 2, op);
  SystemSpec sys = single_molecule(mol, opt);
  sys.cavity = cav;
  const SpMat H = build_hamiltonian(sys, layout);
  const auto collapses = standard_collapses(sys, layout);
  const auto s0 = layout.sector(0);
  const auto s1 = layout.sector(1);
  const Operators ops = build_operators(sys, layout);
  const Mat rho_g = steady_state(build_block_liouvillian(H, collapses, s0, s0)).rho.matrix;
  const Mat X0 = Mat(restrict(dagger(ops.a), s1, s0)) * rho_g;
  const Liouvillian L = build_block_liouvillian(H, collapses, s1, s0);

  const double slow = std::min(mol.gamma_rad, cav.kappa);
  const double scale = vib_frequency_scale(mol) + mol.reorganization_energy() + std::abs(cav.omega_c - mol.omega_e) +
                       cav.g + cav.kappa;
  const auto taus = pick_taus(opt, slow, scale);
  const auto c = propagate_functional(L.superop, vec_of(X0), trace_functional(Mat(restrict(ops.a, s0, s1))), taus,
                                      opt.propagation);
  check_decay(c, opt.decay_threshold, op);
  const auto resp = half_fourier(c, taus, grid, mol.omega_e, -1);
  SpectrumResult out;
  out.grid = grid;
  out.complex_values.resize(grid.size());
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.complex_values[i] = cav.kappa * resp[i];
    out.values[i] = std::norm(out.complex_values[i]);
  }
  return out;
}

SpectrumResult oracle_transmission_steady(const MoleculeSpec& mol, const CavitySpec& cav, double eta_c,
                                          const std::vector<double>& grid, const OracleOptions& opt) {
  static const char* op = "oracle_transmission_steady";
  require_valid(validate(mol), op);
  require_valid(validate(cav), op);
  require_grid(grid, op);
  if (!(eta_c > 0.0)) fail(ErrorCode::InvalidArgument, op, "eta_c must be positive");
  const HilbertLayout layout = molecule_layout(mol, opt, 3, op);
  SpectrumResult out;
  out.grid = grid;
  out.values.resize(grid.size());
  out.complex_values.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    SystemSpec sys = single_molecule(mol, opt);
    sys.cavity = cav;
    sys.drive = DriveSpec{DriveTarget::Cavity, grid[i], eta_c};
    sys.frame.reset();
    const Liouvillian L = build_liouvillian(build_hamiltonian(sys, layout), standard_collapses(sys, layout), layout);
    const auto ss = steady_state(L);
    const Operators ops = build_operators(sys, layout);
    out.complex_values[i] = cav.kappa * ss.rho.expect(ops.a) / eta_c;
    out.values[i] = std::norm(out.complex_values[i]);
  });
  return out;
}

OracleSteadyEmission oracle_emission_steady(const MoleculeSpec& mol, const DriveSpec& drive,
                                            const std::vector<double>& grid, const OracleOptions& opt) {
  static const char* op = "oracle_emission_steady";
  require_valid(validate(mol), op);
  require_grid(grid, op);
  if (drive.target != DriveTarget::Molecule) fail(ErrorCode::InvalidArgument, op, "drive must target the molecule");
  const HilbertLayout layout = molecule_layout(mol, opt, 0, op);
  SystemSpec sys = single_molecule(mol, opt);
  sys.drive = drive;
  sys.frame.reset();
  const Liouvillian L = build_liouvillian(build_hamiltonian(sys, layout), standard_collapses(sys, layout), layout);
  const auto ss = steady_state(L);
  const Operators ops = build_operators(sys, layout);
  const SpMat& sm = ops.sigma[0];
  const SpMat sp = dagger(sm);

  OracleSteadyEmission out;
  const cplx s_mean = ss.rho.expect(sm);
  out.coherent_intensity = std::norm(s_mean);
  out.excited_population = ss.rho.expect(SpMat(sp * sm)).real();

  const Mat X0 = sm * ss.rho.matrix - s_mean * ss.rho.matrix;
  const double scale = vib_frequency_scale(mol) + mol.reorganization_energy() + std::abs(drive.omega_l - mol.omega_e);
  auto& r = out.inelastic;
  r.layout = layout;
  r.frame = drive.omega_l;
  r.taus = pick_taus(opt, mol.gamma_rad, scale);
  r.correlation = propagate_functional(L.superop, vec_of(X0), trace_functional(Mat(sp)), r.taus, opt.propagation);
  r.spectrum = spectrum_from_correlation(r.correlation, r.taus, grid, r.frame, opt.decay_threshold);
  return out;
}

OraclePumpProbe oracle_pump_probe(const FretSpec& spec, double p_d0, const std::vector<double>& times,
                                  const OracleOptions& opt) {
  static const char* op = "oracle_pump_probe";
  require_valid(validate(spec), op);
  if (!(p_d0 >= 0.0 && p_d0 <= 1.0)) fail(ErrorCode::InvalidArgument, op, "p_d0 must lie in [0, 1]");
  SystemSpec sys;
  MoleculeSpec donor = spec.donor;
  MoleculeSpec acceptor = spec.acceptor;
  donor.omega_e = acceptor.omega_e + spec.delta;
  sys.molecules = {donor, acceptor};
  sys.omega_dd = spec.omega_dd;
  sys.relaxation = opt.relaxation;
  sys.baths = opt.baths;
  sys.frame = acceptor.omega_e;
  if (spec.cavity) {
    sys.cavity = CavitySpec{donor.omega_e - spec.cavity->delta_c, spec.cavity->kappa, 0.0};
    sys.cavity_couplings = {spec.cavity->g_d, spec.cavity->g_a};
  }
  const HilbertLayout layout = opt.layout ? *opt.layout : default_layout(sys.molecules, spec.cavity ? 2 : 0);
  const SpMat H = build_hamiltonian(sys, layout);
  const auto collapses = standard_collapses(sys, layout);
  const auto s1 = layout.sector(1);
  const Liouvillian L = build_block_liouvillian(H, collapses, s1, s1);
  const Operators ops = build_operators(sys, layout);

  // |e_D g_A, vacuum>: qubit digits (1, 0), everything else zero.
  const auto dims = layout.factor_dims();
  std::size_t start = 1;
  for (std::size_t f = 1; f < dims.size(); ++f) start *= dims[f];
  const auto pos = std::find(s1.begin(), s1.end(), start);
  if (pos == s1.end()) fail(ErrorCode::Layout, op, "initial state is not in the single-excitation sector");
  const auto i0 = static_cast<Eigen::Index>(pos - s1.begin());
  Mat rho0 = Mat::Zero(static_cast<Eigen::Index>(s1.size()), static_cast<Eigen::Index>(s1.size()));
  rho0(i0, i0) = p_d0;

  const Mat nd = Mat(restrict(SpMat(dagger(ops.sigma[0]) * ops.sigma[0]), s1, s1));
  const Mat na = Mat(restrict(SpMat(dagger(ops.sigma[1]) * ops.sigma[1]), s1, s1));
  const auto f = propagate_functionals(L.superop, vec_of(rho0), {trace_functional(nd), trace_functional(na)}, times,
                                       opt.propagation);
  OraclePumpProbe out;
  out.times = times;
  out.layout = layout;
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.p_donor.push_back(f[0][i].real());
    out.p_acceptor.push_back(f[1][i].real());
  }
  return out;
}

}  // namespace molspec::oracle
