#include <cmath>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"
#include "molspec/parallel.hpp"

namespace molspec::oracle {

std::vector<cplx> two_time_correlation(const Liouvillian& L, const DensityOp& rho_ref, const SpMat& A,
                                       const SpMat& B, const std::vector<double>& taus,
                                       const PropagateOptions& opt) {
  const std::size_t d = L.ket_dim;
  if (!L.is_square_block() || rho_ref.dim() != d || static_cast<std::size_t>(A.rows()) != d ||
      static_cast<std::size_t>(B.rows()) != d)
    fail(ErrorCode::Layout, "two_time_correlation", "operators do not match the generator");
  const Mat X0 = B * rho_ref.matrix;
  const Mat At = Mat(A).transpose();
  const Vec x0 = Eigen::Map<const Vec>(X0.data(), X0.size());
  const Vec f = Eigen::Map<const Vec>(At.data(), At.size());
  return propagate_functional(L.superop, x0, f, taus, opt);
}

namespace {

void check_tau_grid(const std::vector<cplx>& corr, const std::vector<double>& taus, const char* op) {
  if (corr.size() != taus.size() || corr.size() < 2)
    fail(ErrorCode::InvalidArgument, op, "need at least two samples with matching tau grid");
  if (taus.front() != 0.0) fail(ErrorCode::InvalidArgument, op, "tau grid must start at 0");
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] > taus[i - 1])) fail(ErrorCode::InvalidArgument, op, "tau grid must be strictly increasing");
}

cplx transform_at(const std::vector<cplx>& corr, const std::vector<double>& taus, double w) {
  cplx acc = 0.0;
  double last_h = -1.0;
  cplx e1, e2;  // int_0^h e^{theta s} ds and int_0^h s e^{theta s} ds / h, theta = -i w
  for (std::size_t n = 0; n + 1 < taus.size(); ++n) {
    const double h = taus[n + 1] - taus[n];
    if (h != last_h) {
      const cplx x(0.0, -w * h);
      if (std::abs(x) < 1e-3) {
        e1 = h * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
        e2 = h * (0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0);
      } else {
        const cplx ex = std::exp(x);
        const cplx theta = x / h;
        e1 = (ex - 1.0) / theta;
        e2 = ex / theta - (ex - 1.0) / (theta * theta * h);
      }
      last_h = h;
    }
    acc += std::polar(1.0, -w * taus[n]) * (corr[n] * e1 + (corr[n + 1] - corr[n]) * e2);
  }
  return acc;
}

}  // namespace

std::vector<cplx> half_fourier(const std::vector<cplx>& corr, const std::vector<double>& taus,
                               const std::vector<double>& omega_grid, double frame, int sign) {
  check_tau_grid(corr, taus, "half_fourier");
  require_grid(omega_grid, "half_fourier");
  if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "half_fourier", "sign must be +1 or -1");
  std::vector<cplx> out(omega_grid.size());
  parallel_for(omega_grid.size(), [&](std::size_t k) {
    out[k] = transform_at(corr, taus, sign * (omega_grid[k] - frame));
  });
  return out;
}

SpectrumResult spectrum_from_correlation(const std::vector<cplx>& corr, const std::vector<double>& taus,
                                         const std::vector<double>& omega_grid, double frame,
                                         double decay_threshold) {
  const char* op = "spectrum_from_correlation";
  check_tau_grid(corr, taus, op);
  require_grid(omega_grid, op);

  double peak = 0.0;
  for (const auto& c : corr) peak = std::max(peak, std::abs(c));
  const double tail = std::abs(corr.back());
  if (peak > 0.0 && tail > decay_threshold * peak)
    fail(ErrorCode::Windowing, op,
         "correlation has only decayed to " + std::to_string(tail / peak) + " of its maximum at tau = " +
             std::to_string(taus.back()));

  SpectrumResult out;
  out.grid = omega_grid;
  out.values.assign(omega_grid.size(), 0.0);
  parallel_for(omega_grid.size(), [&](std::size_t k) {
    out.values[k] = 2.0 * transform_at(corr, taus, omega_grid[k] - frame).real();
  });
  return out;
}

}  // namespace molspec::oracle
