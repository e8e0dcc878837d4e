#pragma once

// Truncated-Fock Lindblad reference solver.
//
// Conventions:
//  * Tensor order is (qubits, vibrations grouped by molecule, cavity); the
//    first factor is the most significant digit of the basis index.
//  * Density operators are vectorized by column stacking,
//    vec(A X B) = (B^T kron A) vec(X).
//  * L_O[rho] = rate (2 O rho O^dag - rho O^dag O - O^dag O rho), so a
//    population decays as e^{-2 rate t}.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <string>
#include <vector>

#include "molspec/model.hpp"
#include "molspec/series.hpp"
#include "molspec/spectra.hpp"

namespace molspec::oracle {

using SpMat = Eigen::SparseMatrix<cplx>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct HilbertLayout {
  std::vector<int> qubit_dims;  // one entry (2) per molecule
  std::vector<int> vib_dims;    // one entry per vibrational mode, molecules in order
  int cavity_dim = 0;           // 0 means no cavity factor

  std::vector<int> factor_dims() const;
  std::size_t dimension() const;
  // Electronic excitations plus photons, per basis state.
  std::vector<int> excitation_numbers() const;
  // Basis indices with the given excitation number, in increasing order.
  std::vector<std::size_t> sector(int excitations) const;
};

// Advisory Fock size ceil(lambda^2 + 5 lambda + 3).
int recommended_fock_dim(double lambda);
HilbertLayout default_layout(const std::vector<MoleculeSpec>& mols, int cavity_dim = 0);
// Structural problems are errors; undersized Fock factors are warnings.
Violations validate(const HilbertLayout& layout, const std::vector<MoleculeSpec>& mols, bool has_cavity);
HilbertLayout doubled(const HilbertLayout& layout);

// How vibrational relaxation is attached. Displaced relaxes each mode toward
// the equilibrium of the current electronic manifold (collapse b - lambda
// sigma^dag sigma); Bare uses the collapse b as written in the plain model.
enum class VibrationalRelaxation { Displaced, Bare };

struct SystemSpec {
  std::vector<MoleculeSpec> molecules;
  std::optional<CavitySpec> cavity;
  std::vector<double> cavity_couplings;  // per molecule; empty means cavity->g for all
  double omega_dd = 0.0;                 // exchange between molecules 0 and 1
  std::optional<DriveSpec> drive;
  std::optional<double> frame;           // rotating-frame frequency; default drive->omega_l or 0
  VibrationalRelaxation relaxation = VibrationalRelaxation::Displaced;
  std::vector<ThermalBath> baths;        // per mode, flat; empty means T = 0
  bool include_radiative = true;
  bool include_cavity_loss = true;

  double frame_frequency() const;
};

SpMat destroy(int n);
SpMat sigma_minus();
SpMat identity(std::size_t n);
SpMat embed(const SpMat& local, std::size_t factor, const std::vector<int>& dims);

struct Operators {
  std::vector<SpMat> sigma;  // per molecule
  std::vector<SpMat> b;      // per mode, flat
  std::vector<int> mode_owner;
  SpMat a;                   // empty if no cavity
};
Operators build_operators(const SystemSpec& sys, const HilbertLayout& layout);

SpMat build_hamiltonian(const SystemSpec& sys, const HilbertLayout& layout);
SpMat build_hamiltonian(const std::vector<MoleculeSpec>& mols, const std::optional<CavitySpec>& cav,
                        std::optional<double> omega_dd, const std::optional<DriveSpec>& drive,
                        const HilbertLayout& layout);

struct Collapse {
  std::string label;
  SpMat op;
  double rate = 0.0;
};
std::vector<Collapse> standard_collapses(const SystemSpec& sys, const HilbertLayout& layout);

struct Liouvillian {
  std::size_t ket_dim = 0;
  std::size_t bra_dim = 0;
  SpMat superop;
  std::vector<std::pair<std::string, double>> collapse_registry;

  std::size_t dim() const { return ket_dim; }
  bool is_square_block() const { return ket_dim == bra_dim; }
};

Liouvillian build_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses, const HilbertLayout& layout);
Liouvillian build_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses);

// Restriction to coherences |ket sector><bra sector|. Jumps leaving the block
// are dropped and jumps entering it are ignored, which is exact whenever the
// block one excitation up on both sides carries no weight (no drive, and an
// initial state without such components).
Liouvillian build_block_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses,
                                    const std::vector<std::size_t>& ket_states,
                                    const std::vector<std::size_t>& bra_states);

SpMat restrict(const SpMat& op, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

// |max column sum of the trace functional|, zero for a trace-preserving generator.
double trace_preservation_defect(const Liouvillian& L);
// Largest real part among eigenvalues (dense, small systems only).
double max_real_eigenvalue(const Liouvillian& L);

struct DensityOp {
  Mat matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  Vec vec() const;
  static DensityOp from_vec(const Vec& v, std::size_t dim);
  cplx expect(const SpMat& op) const;
};

Violations check_density(const DensityOp& rho, double herm_tol = 1e-12, double trace_tol = 1e-10,
                         double pos_tol = 1e-8);

struct SteadyStateResult {
  DensityOp rho;
  double residual = 0.0;  // |L vec(rho)| / |L|
  bool iterative = false;
};

// Trace-one row replaces the first equation; sparse LU up to 1e5 unknowns,
// preconditioned BiCGSTAB above.
SteadyStateResult steady_state(const Liouvillian& L);

struct PropagateOptions {
  double tol = 1e-10;
  int krylov_dim = 20;
  long max_steps = 2000000;
};

// x(t) = exp(L t) x0 sampled at each requested time (times non-decreasing, >= 0).
std::vector<Vec> propagate(const SpMat& L, const Vec& x0, const std::vector<double>& times,
                           const PropagateOptions& opt = {});
// Same, but applies a linear functional to each sample instead of storing it.
std::vector<cplx> propagate_functional(const SpMat& L, const Vec& x0, const Vec& functional,
                                       const std::vector<double>& times, const PropagateOptions& opt = {});

// One trajectory, several functionals; result[i][t].
std::vector<std::vector<cplx>> propagate_functionals(const SpMat& L, const Vec& x0, const std::vector<Vec>& functionals,
                                                     const std::vector<double>& times,
                                                     const PropagateOptions& opt = {});

struct EvolveResult {
  std::vector<DensityOp> states;
  double max_trace_drift = 0.0;
};
EvolveResult evolve(const Liouvillian& L, const DensityOp& rho0, const std::vector<double>& times,
                    const PropagateOptions& opt = {});

// <A(tau) B(0)> = Tr[A e^{L tau}(B rho)]
std::vector<cplx> two_time_correlation(const Liouvillian& L, const DensityOp& rho_ref, const SpMat& A,
                                       const SpMat& B, const std::vector<double>& taus,
                                       const PropagateOptions& opt = {});

// S(omega) = 2 Re int_0^inf C(tau) e^{-i (omega - frame) tau}, integrating the
// piecewise-linear interpolant of the samples exactly. Raises Windowing if
// |C| at the last sample exceeds decay_threshold times its maximum.
SpectrumResult spectrum_from_correlation(const std::vector<cplx>& corr, const std::vector<double>& taus,
                                         const std::vector<double>& omega_grid, double frame = 0.0,
                                         double decay_threshold = 1e-6);

// int_0^inf C(tau) e^{-i sign (omega - frame) tau} with the same quadrature.
std::vector<cplx> half_fourier(const std::vector<cplx>& corr, const std::vector<double>& taus,
                               const std::vector<double>& omega_grid, double frame, int sign);

struct LorentzianFit {
  double center = 0.0;
  double half_width = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;  // |model - data| / |data| over the window
  int points = 0;
};

// Least-squares fit of a w^2 / (w^2 + (omega - omega0)^2) over window [lo, hi].
LorentzianFit fit_lorentzian(const SpectrumResult& spectrum, double lo, double hi);

}  // namespace molspec::oracle
