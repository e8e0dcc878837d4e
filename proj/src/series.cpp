#include "molspec/series.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "molspec/error.hpp"

namespace molspec {

double poisson_weight(double lambda, int m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "poisson_weight", "m must be >= 0, got " + std::to_string(m));
  if (!(lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "poisson_weight", "lambda must be >= 0");
  const double mu = lambda * lambda;
  if (mu == 0.0) return m == 0 ? 1.0 : 0.0;
  if (m <= 20) {
    double w = std::exp(-mu);
    for (int j = 1; j <= m; ++j) w *= mu / j;
    return w;
  }
  return std::exp(-mu + m * std::log(mu) - std::lgamma(m + 1.0));
}

std::vector<double> poisson_weights(double lambda, int mmax) {
  std::vector<double> w(static_cast<std::size_t>(std::max(mmax + 1, 0)));
  for (int m = 0; m <= mmax; ++m) w[m] = poisson_weight(lambda, m);
  return w;
}

double poisson_tail(double lambda, int M) {
  if (M < 0) return 1.0;
  const double mu = lambda * lambda;
  if (mu == 0.0) return 0.0;
  if (M + 1 <= mu) {
    double head = 0.0;
    for (int j = 0; j <= M; ++j) head += poisson_weight(lambda, j);
    return std::max(0.0, 1.0 - head);
  }
  // Terms decrease monotonically past the mode, so the direct sum converges fast.
  double t = poisson_weight(lambda, M + 1);
  double sum = 0.0;
  for (int j = M + 1; t > 0.0; ++j) {
    sum += t;
    if (t < sum * 1e-18) break;
    t *= mu / (j + 1);
  }
  return sum;
}

double poisson_tail_bound(double lambda, int M) {
  const double mu = lambda * lambda;
  if (mu == 0.0) return 0.0;
  const double k = M + 1.0;
  if (k <= mu) return 1.0;
  return std::exp(-mu + k * (1.0 + std::log(mu) - std::log(k)));
}

int mode_order(double lambda, double eps, int limit) {
  if (lambda == 0.0) return 0;
  if (!(eps > 0.0)) return -1;
  const double mu = lambda * lambda;
  if (mu < 5.0) {
    for (int M = 0; M <= limit; ++M)
      if (poisson_tail(lambda, M) < eps) return M;
    return -1;
  }
  for (int M = static_cast<int>(std::floor(mu)); M <= limit; ++M)
    if (poisson_tail_bound(lambda, M) < eps) return M;
  return -1;
}

TruncationReport for_each_index(const std::vector<VibrationalMode>& modes,
                                const TruncationPolicy& policy,
                                const std::function<void(const IndexTerm&)>& visit) {
  static const char* op = "enumerate_indices";
  if (!(policy.epsilon >= 0.0)) fail(ErrorCode::InvalidArgument, op, "epsilon must be >= 0");
  if (policy.max_order < 0) fail(ErrorCode::InvalidArgument, op, "max_order must be >= 0");
  for (const auto& m : modes)
    if (!(m.lambda >= 0.0)) fail(ErrorCode::InvalidArgument, op, "lambda must be >= 0");

  TruncationReport report;
  const std::size_t n = modes.size();
  IndexTerm term;
  term.m.assign(n, 0);
  if (n == 0) {
    report.terms = 1;
    visit(term);
    return report;
  }

  const double eps_mode = policy.epsilon / static_cast<double>(n);
  std::vector<std::vector<double>> w(n);
  report.mode_orders.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    int M = mode_order(modes[k].lambda, eps_mode, policy.max_order);
    if (M < 0) M = policy.max_order;  // infeasible; the weight check below reports it
    report.mode_orders[k] = M;
    w[k] = poisson_weights(modes[k].lambda, M);
  }

  // Odometer over m_0..m_{n-1}, last index fastest (lexicographic order).
  double retained = 0.0;
  int order = 0;
  for (;;) {
    if (order <= policy.max_order) {
      double weight = 1.0, gs = 0.0, ns = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        weight *= w[k][term.m[k]];
        gs += term.m[k] * modes[k].gamma_vib;
        ns += term.m[k] * modes[k].nu;
      }
      if (weight > 0.0) {
        term.weight = weight;
        term.gamma_sum = gs;
        term.nu_sum = ns;
        retained += weight;
        report.max_order_used = std::max(report.max_order_used, order);
        ++report.terms;
        visit(term);
      }
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (term.m[k] < report.mode_orders[k]) {
        ++term.m[k];
        ++order;
        break;
      }
      order -= term.m[k];
      term.m[k] = 0;
      if (k == 0) {
        k = n + 1;
        break;
      }
    }
    if (k == n + 1) break;
  }

  report.retained_weight = retained;
  if (retained < 1.0 - policy.epsilon - 1e-15) {
    throw TruncationError(op,
                          "retained weight " + std::to_string(retained) + " below 1 - epsilon with max_order " +
                              std::to_string(policy.max_order),
                          retained);
  }
  return report;
}

IndexSet enumerate_indices(const std::vector<VibrationalMode>& modes, const TruncationPolicy& policy) {
  IndexSet set;
  set.report = for_each_index(modes, policy, [&](const IndexTerm& t) { set.terms.push_back(t); });
  return set;
}

cplx displacement_correlation(const VibrationalMode& mode, double tau) {
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "displacement_correlation", "tau must be >= 0");
  const double mu = mode.lambda * mode.lambda;
  const cplx z = std::exp(-cplx(mode.gamma_vib, mode.nu) * tau);
  // exp(mu (z - 1)) keeps the tau = 0 value exactly 1.
  return std::exp(mu * (z - 1.0));
}

cplx displacement_correlation(const std::vector<VibrationalMode>& modes, double tau) {
  cplx c = 1.0;
  for (const auto& m : modes) c *= displacement_correlation(m, tau);
  if (modes.empty() && !(tau >= 0.0))
    fail(ErrorCode::InvalidArgument, "displacement_correlation", "tau must be >= 0");
  return c;
}

cplx displacement_correlation_series(const VibrationalMode& mode, double tau, double eps) {
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "displacement_correlation_series", "tau must be >= 0");
  const int M = mode_order(mode.lambda, eps);
  if (M < 0) throw TruncationError("displacement_correlation_series", "no finite order meets eps", 0.0);
  const cplx z = std::exp(-cplx(mode.gamma_vib, mode.nu) * tau);
  cplx sum = 0.0, zm = 1.0;
  for (int m = 0; m <= M; ++m) {
    sum += poisson_weight(mode.lambda, m) * zm;
    zm *= z;
  }
  return sum;
}

double force_spectrum(const VibrationalMode& mode, double omega, const ThermalBath& bath) {
  const double l2 = mode.lambda * mode.lambda;
  const double G = mode.gamma_vib;
  const double d = omega - mode.nu;
  return 2.0 * l2 * mode.nu * mode.nu * G / (G * G + d * d) * (1.0 + 2.0 * bath.nbar);
}

double brownian_thermal_spectrum(const VibrationalMode& mode, double omega, const ThermalBath& bath) {
  const double G = mode.gamma_vib;
  const double T = bath.temperature(mode.nu);
  if (T == 0.0) return omega > 0.0 ? 4.0 * omega * G / mode.nu : 0.0;
  if (omega == 0.0) return 4.0 * G * T / mode.nu;
  // coth(x) + 1 = 2 / (1 - e^{-2x}), x = omega / 2T
  return (2.0 * G * omega / mode.nu) * 2.0 / (-std::expm1(-omega / T));
}

double brownian_damping(const VibrationalMode& mode, const ThermalBath& bath) {
  return 0.5 * (brownian_thermal_spectrum(mode, mode.nu, bath) - brownian_thermal_spectrum(mode, -mode.nu, bath));
}

double brownian_occupancy(const VibrationalMode& mode, const ThermalBath& bath) {
  const double sp = brownian_thermal_spectrum(mode, mode.nu, bath);
  const double sm = brownian_thermal_spectrum(mode, -mode.nu, bath);
  return sm / (sp - sm);
}

cplx langevin_pp_correlator(const VibrationalMode& mode, double tau, const ThermalBath& bath) {
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "langevin_pp_correlator", "tau must be >= 0");
  const cplx b_bdag = (bath.nbar + 1.0) * std::exp(-cplx(mode.gamma_vib, mode.nu) * tau);
  const cplx bdag_b = bath.nbar * std::exp(-cplx(mode.gamma_vib, -mode.nu) * tau);
  // p p = -(b^dag - b)(b^dag - b)/2; only the normally paired terms survive.
  return 0.5 * (b_bdag + bdag_b);
}

cplx brownian_pp_correlator(const VibrationalMode& mode, double tau, const ThermalBath& bath) {
  if (!(tau >= 0.0)) fail(ErrorCode::InvalidArgument, "brownian_pp_correlator", "tau must be >= 0");
  // Near omega = +-nu, |omega eps(omega)/nu|^2 ~ 1 / (4[(omega -+ nu)^2 + Gamma^2]); the
  // Fourier integral of each Lorentzian lobe gives S_th(+-nu)/(8 Gamma) e^{-(Gamma +- i nu) tau}.
  const double G = mode.gamma_vib;
  const double sp = brownian_thermal_spectrum(mode, mode.nu, bath);
  const double sm = brownian_thermal_spectrum(mode, -mode.nu, bath);
  return sp / (8.0 * G) * std::exp(-cplx(G, mode.nu) * tau) + sm / (8.0 * G) * std::exp(-cplx(G, -mode.nu) * tau);
}

}  // namespace molspec
