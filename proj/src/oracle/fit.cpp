#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <cmath>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

namespace {

struct LorentzResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<double>* x = nullptr;
  const std::vector<double>* y = nullptr;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(x->size()); }

  // p = (amplitude, center, half_width)
  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    const double w2 = p(2) * p(2);
    for (std::size_t i = 0; i < x->size(); ++i) {
      const double d = (*x)[i] - p(1);
      f(static_cast<Eigen::Index>(i)) = p(0) * w2 / (w2 + d * d) - (*y)[i];
    }
    return 0;
  }
};

}  // namespace

LorentzianFit fit_lorentzian(const SpectrumResult& spectrum, double lo, double hi) {
  const char* op = "fit_lorentzian";
  if (!(hi > lo)) fail(ErrorCode::InvalidArgument, op, "window must satisfy lo < hi");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < spectrum.grid.size(); ++i) {
    if (spectrum.grid[i] >= lo && spectrum.grid[i] <= hi) {
      x.push_back(spectrum.grid[i]);
      y.push_back(spectrum.values[i]);
    }
  }
  if (x.size() < 5) fail(ErrorCode::Fit, op, "fewer than five samples in the window");

  std::size_t imax = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[imax]) imax = i;
  const double amp0 = y[imax];
  if (!(amp0 > 0.0)) fail(ErrorCode::Fit, op, "no positive peak in the window");
  std::size_t left = imax, right = imax;
  while (left > 0 && y[left] > 0.5 * amp0) --left;
  while (right + 1 < y.size() && y[right] > 0.5 * amp0) ++right;
  double width0 = 0.5 * (x[right] - x[left]);
  if (!(width0 > 0.0)) width0 = 0.5 * (hi - lo) / static_cast<double>(x.size());

  LorentzResidual base;
  base.x = &x;
  base.y = &y;
  Eigen::NumericalDiff<LorentzResidual> functor(base);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<LorentzResidual>> lm(functor);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  Eigen::VectorXd p(3);
  p << amp0, x[imax], width0;
  const auto status = lm.minimize(p);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters || !p.allFinite())
    fail(ErrorCode::Fit, op, "Levenberg-Marquardt failed (status " + std::to_string(static_cast<int>(status)) + ")");
  if (p(1) < lo || p(1) > hi) fail(ErrorCode::Fit, op, "fitted center left the window");

  Eigen::VectorXd f(x.size());
  base(p, f);
  double ny = 0.0;
  for (double v : y) ny += v * v;
  LorentzianFit out;
  out.amplitude = p(0);
  out.center = p(1);
  out.half_width = std::abs(p(2));
  out.residual = f.norm() / std::sqrt(ny);
  out.points = static_cast<int>(x.size());
  return out;
}

}  // namespace molspec::oracle
