#pragma once

#include <complex>
#include <string>
#include <vector>

#include "molspec/model.hpp"
#include "molspec/series.hpp"

namespace molspec {

struct SpectrumResult {
  std::vector<double> grid;
  std::vector<double> values;                  // real spectra; |t_c|^2 for transmission
  std::vector<cplx> complex_values;            // filled for complex-valued observables
  TruncationReport truncation_report;
  std::vector<std::string> flags;              // advisories raised while computing

  bool is_complex() const { return !complex_values.empty(); }
};

// Validates a probe grid: at least one point, strictly increasing, finite.
void require_grid(const std::vector<double>& grid, const char* operation);

SpectrumResult absorption_population(const MoleculeSpec& mol, const DriveSpec& drive,
                                     const std::vector<double>& grid, const TruncationPolicy& policy);

SpectrumResult emission_spectrum_transient(const MoleculeSpec& mol, double p0, const std::vector<double>& grid,
                                           const TruncationPolicy& policy);

// Resonance-fluorescence spectrum of a weakly driven single-mode molecule.
// values hold the spectrum of fluctuations (the elastic line at omega_l is
// reported separately as coherent_intensity, it is a delta function).
struct SteadyEmission {
  SpectrumResult spectrum;
  double coherent_intensity = 0.0;  // |<sigma>|^2
  double excited_population = 0.0;  // G(0) + |<sigma>|^2
};

SteadyEmission emission_spectrum_steady_detail(const MoleculeSpec& mol, const DriveSpec& drive,
                                               const std::vector<double>& grid, const TruncationPolicy& policy);
SpectrumResult emission_spectrum_steady(const MoleculeSpec& mol, const DriveSpec& drive,
                                        const std::vector<double>& grid, const TruncationPolicy& policy);
// Connected correlation <sigma^dag(T) sigma(0)> - |<sigma>|^2 in the frame of omega_l.
std::vector<cplx> steady_emission_correlation(const MoleculeSpec& mol, const DriveSpec& drive,
                                              const std::vector<double>& taus, const TruncationPolicy& policy);

struct PolaritonModes {
  double omega_plus = 0.0, omega_minus = 0.0;  // lab-frame mode frequencies
  double gamma_plus = 0.0, gamma_minus = 0.0;
  cplx eps_plus, eps_minus;                    // eigenvalues of M in the rotating frame
  cplx t_matrix[2][2];                         // columns: "+" then "-" eigenvector
  cplx det_t;
  cplx drift[2][2];                            // M itself
  bool exceptional = false;
};

PolaritonModes polariton_modes(const MoleculeSpec& mol, const CavitySpec& cav, double omega_l);

SpectrumResult cavity_transmission(const MoleculeSpec& mol, const CavitySpec& cav, const DriveSpec& drive,
                                   const std::vector<double>& grid, const TruncationPolicy& policy);

double polariton_crosstalk_rate(const MoleculeSpec& mol, const CavitySpec& cav);

double branching_ratio(const MoleculeSpec& mol);

struct PurcellBranching {
  double alpha_cav = 1.0;
  double c00 = 0.0;
  double g00 = 0.0;
  std::vector<std::string> flags;
};

PurcellBranching purcell_branching_ratio(const MoleculeSpec& mol, const CavitySpec& cav);

struct DephasingEstimate {
  std::vector<double> per_mode;  // lambda_k^2 Gamma_k
  double total = 0.0;
  double brownian_total = 0.0;   // the Brownian model cancels the term exactly
};

DephasingEstimate langevin_dephasing_estimate(const MoleculeSpec& mol);

}  // namespace molspec
