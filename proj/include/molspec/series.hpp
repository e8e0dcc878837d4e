#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "molspec/model.hpp"

namespace molspec {

using cplx = std::complex<double>;

struct TruncationPolicy {
  double epsilon = 1e-10;  // bound on discarded series weight
  int max_order = 200;     // cap on sum_k m_k
};

struct TruncationReport {
  double retained_weight = 1.0;
  int max_order_used = 0;
  std::vector<int> mode_orders;  // per-mode cutoff M_k
  std::size_t terms = 0;
};

// s_m^lambda = exp(-lambda^2) lambda^(2m) / m!
double poisson_weight(double lambda, int m);
// s_0..s_mmax
std::vector<double> poisson_weights(double lambda, int mmax);
// P(X > M) for X ~ Poisson(lambda^2), evaluated by direct summation of the tail.
double poisson_tail(double lambda, int M);
// Chernoff bound on P(X > M); only meaningful for M + 1 > lambda^2.
double poisson_tail_bound(double lambda, int M);
// Smallest M whose tail is below eps. Uses the exact tail for lambda^2 < 5 and
// the Chernoff bound above. Returns -1 if no M <= limit qualifies.
int mode_order(double lambda, double eps, int limit = 100000);

struct IndexTerm {
  std::vector<int> m;
  double weight = 1.0;     // prod_k s_{m_k}
  double gamma_sum = 0.0;  // Gamma_{m}
  double nu_sum = 0.0;     // nu_{m}
};

struct IndexSet {
  std::vector<IndexTerm> terms;
  TruncationReport report;
};

// Multi-indices with m_k <= M_k (tail < eps/n per mode) and sum m_k <= max_order,
// in lexicographic order. Throws TruncationError if the retained weight falls
// short of 1 - eps.
IndexSet enumerate_indices(const std::vector<VibrationalMode>& modes, const TruncationPolicy& policy);

// Streaming form of the same enumeration; returns the report.
TruncationReport for_each_index(const std::vector<VibrationalMode>& modes,
                                const TruncationPolicy& policy,
                                const std::function<void(const IndexTerm&)>& visit);

// <D(t) D^dag(t - tau)> = exp(-lambda^2) exp(lambda^2 e^{-(Gamma + i nu) tau})
cplx displacement_correlation(const VibrationalMode& mode, double tau);
cplx displacement_correlation(const std::vector<VibrationalMode>& modes, double tau);
// sum_m s_m e^{-m (Gamma + i nu) tau}, truncated once the Poisson tail drops below eps.
cplx displacement_correlation_series(const VibrationalMode& mode, double tau, double eps = 1e-15);

// F(omega; T) = 2 lambda^2 nu^2 Gamma / (Gamma^2 + (omega - nu)^2) (1 + 2 nbar)
double force_spectrum(const VibrationalMode& mode, double omega, const ThermalBath& bath = {});

// Brownian-noise thermal spectrum S_th(omega) = (2 Gamma omega / nu)[coth(omega / 2T) + 1];
// (4 omega Gamma / nu) theta(omega) at T = 0.
double brownian_thermal_spectrum(const VibrationalMode& mode, double omega, const ThermalBath& bath = {});
// (S_th(nu) - S_th(-nu)) / 2, equal to 2 Gamma.
double brownian_damping(const VibrationalMode& mode, const ThermalBath& bath = {});
// S_th(-nu) / (S_th(nu) - S_th(-nu)), which recovers nbar.
double brownian_occupancy(const VibrationalMode& mode, const ThermalBath& bath = {});

// <p(t) p(t - tau)> for p = i(b^dag - b)/sqrt2.
// Langevin form: assembled from the b, b^dag correlators with thermal input noise.
cplx langevin_pp_correlator(const VibrationalMode& mode, double tau, const ThermalBath& bath = {});
// Brownian form: pole evaluation of the susceptibility-filtered thermal spectrum
// S_th at omega = +-nu.
cplx brownian_pp_correlator(const VibrationalMode& mode, double tau, const ThermalBath& bath = {});

}  // namespace molspec
