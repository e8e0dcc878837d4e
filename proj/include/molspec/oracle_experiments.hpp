#pragma once

// Reference calculations built on the Lindblad solver, one per analytic
// observable. All spectra are evaluated in linear response where the analytic
// result is a weak-drive expression.

#include <optional>
#include <vector>

#include "molspec/fret.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

struct OracleOptions {
  std::optional<HilbertLayout> layout;  // default: advisory Fock sizes
  VibrationalRelaxation relaxation = VibrationalRelaxation::Displaced;
  std::vector<ThermalBath> baths;       // per mode, flat; empty means T = 0
  double dt = 0.0;                      // correlation sampling step; 0 picks one from the model
  double tau_max = 0.0;                 // correlation window; 0 picks one from the decay rates
  double decay_threshold = 1e-6;
  bool factorized = true;               // per-mode factorization of single-molecule coherences
  PropagateOptions propagation;
};

struct OracleSpectrum {
  SpectrumResult spectrum;
  std::vector<double> taus;
  std::vector<cplx> correlation;  // in the frame used for the transform
  double frame = 0.0;
  HilbertLayout layout;
};

// P_e(omega_l) from <sigma(tau) sigma^dag(0)> in the ground steady state.
OracleSpectrum oracle_absorption(const MoleculeSpec& mol, double eta, const std::vector<double>& grid,
                                 const OracleOptions& opt = {});

// Emission after relaxation in the excited manifold, population p0.
OracleSpectrum oracle_emission_transient(const MoleculeSpec& mol, double p0, const std::vector<double>& grid,
                                         const OracleOptions& opt = {});

// Excited population of the driven steady state at one laser frequency.
double oracle_steady_population(const MoleculeSpec& mol, const DriveSpec& drive, const OracleOptions& opt = {});

// |t_c|^2 with t_c = kappa <a> / eta_c, from the linear response of <a>.
SpectrumResult oracle_transmission(const MoleculeSpec& mol, const CavitySpec& cav, const std::vector<double>& grid,
                                   const OracleOptions& opt = {});
// Same observable from the driven steady state at each grid point.
SpectrumResult oracle_transmission_steady(const MoleculeSpec& mol, const CavitySpec& cav, double eta_c,
                                          const std::vector<double>& grid, const OracleOptions& opt = {});

struct OracleSteadyEmission {
  OracleSpectrum inelastic;         // spectrum of <delta sigma^dag(T) delta sigma(0)>
  double coherent_intensity = 0.0;  // |<sigma>|^2
  double excited_population = 0.0;
};

OracleSteadyEmission oracle_emission_steady(const MoleculeSpec& mol, const DriveSpec& drive,
                                            const std::vector<double>& grid, const OracleOptions& opt = {});

struct OraclePumpProbe {
  std::vector<double> times;
  std::vector<double> p_donor;
  std::vector<double> p_acceptor;
  HilbertLayout layout;
};

// Single-excitation dynamics from |e_D, 0> with population p_d0.
OraclePumpProbe oracle_pump_probe(const FretSpec& spec, double p_d0, const std::vector<double>& times,
                                  const OracleOptions& opt = {});

// Per-mode factor Tr_k e^{L_k tau} Y_k used by the factorized path, exposed for tests.
// ket_excited selects which side of the coherence carries the excited manifold.
std::vector<cplx> mode_coherence_factor(const VibrationalMode& mode, int fock_dim, bool ket_excited,
                                        const std::vector<double>& taus, const OracleOptions& opt,
                                        const ThermalBath& bath = {});

}  // namespace molspec::oracle
