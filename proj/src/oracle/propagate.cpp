#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

namespace {

double round_step(double t) {
  const double s = std::pow(10.0, std::floor(std::log10(t)) - 1.0);
  return std::ceil(t / s) * s;
}

double inf_norm(const SpMat& A) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
  for (Eigen::Index c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) rows(it.row()) += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

using RowSpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Krylov propagator with Expokit-style step control; the step size carries
// over between output times. The generator is held row-major, which makes
// the matrix-vector product a gather and is markedly faster here.
class Expv {
 public:
  Expv(const SpMat& A, const Vec& v0, const PropagateOptions& opt)
      : A_(A), w_(v0), opt_(opt), n_(A.rows()) {
    anorm_ = std::max(inf_norm(A), std::numeric_limits<double>::min());
    m_ = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, n_));
    tol_ = opt.tol * std::max(v0.norm(), std::numeric_limits<double>::min());
    const double beta = v0.norm();
    const double fact = std::pow((m_ + 1) / std::exp(1.0), m_ + 1) * std::sqrt(2.0 * M_PI * (m_ + 1));
    t_new_ = beta > 0 ? round_step((1.0 / anorm_) * std::pow((fact * tol_) / (4.0 * beta * anorm_), 1.0 / m_))
                      : 1.0;
    dense_ = n_ <= opt.krylov_dim + 2;
    if (dense_) dense_A_ = Mat(A);
  }

  const Vec& state() const { return w_; }

  void advance(double dt) {
    if (dt <= 0.0) return;
    if (dense_) {
      if (dt != cached_dt_) {
        cached_exp_ = (dense_A_ * dt).exp();
        cached_dt_ = dt;
      }
      w_ = cached_exp_ * w_;
      return;
    }
    const double btol = 1e-7;
    const double gamma = 0.9, delta = 1.2;
    const int mxrej = 10;
    double t_now = 0.0;
    Mat V(n_, m_ + 1);
    Vec p(n_);
    while (t_now < dt) {
      if (++steps_ > opt_.max_steps)
        fail(ErrorCode::Stiffness, "propagate", "step budget exhausted at t = " + std::to_string(t_now));
      double beta = w_.norm();
      if (beta == 0.0) return;
      double t_step = std::min(dt - t_now, t_new_);
      V.col(0) = w_ / beta;
      Mat H = Mat::Zero(m_ + 2, m_ + 2);
      int mb = m_, k1 = 2;
      for (int j = 0; j < m_; ++j) {
        p.noalias() = A_ * V.col(j);
        for (int i = 0; i <= j; ++i) {
          H(i, j) = V.col(i).dot(p);
          p -= H(i, j) * V.col(i);
        }
        const double s = p.norm();
        if (s < btol * anorm_ * 1e-3) {
          k1 = 0;
          mb = j + 1;
          t_step = dt - t_now;
          break;
        }
        H(j + 1, j) = s;
        V.col(j + 1) = p / s;
      }
      double avnorm = 0.0;
      if (k1 != 0) {
        H(m_ + 1, m_) = 1.0;
        avnorm = (A_ * V.col(m_)).norm();
      }
      Mat F;
      double err_loc = 0.0, xm = 1.0 / m_;
      for (int ireject = 0;; ++ireject) {
        const int mx = mb + k1;
        F = (t_step * H.topLeftCorner(mx, mx)).exp();
        if (k1 == 0) {
          err_loc = 0.0;
          break;
        }
        const double phi1 = std::abs(beta * F(m_, 0));
        const double phi2 = std::abs(beta * F(m_ + 1, 0) * avnorm);
        if (phi1 > 10.0 * phi2) {
          err_loc = phi2;
          xm = 1.0 / m_;
        } else if (phi1 > phi2) {
          err_loc = (phi1 * phi2) / (phi1 - phi2);
          xm = 1.0 / m_;
        } else {
          err_loc = phi1;
          xm = 1.0 / std::max(1, m_ - 1);
        }
        if (err_loc <= delta * t_step * tol_) break;
        if (ireject == mxrej)
          fail(ErrorCode::Stiffness, "propagate",
               "step rejected " + std::to_string(mxrej) + " times near t = " + std::to_string(t_now));
        t_step = round_step(gamma * t_step * std::pow(t_step * tol_ / err_loc, xm));
        t_step = std::min(t_step, dt - t_now);
      }
      const int mx = mb + std::max(0, k1 - 1);
      w_ = V.leftCols(mx) * (beta * F.col(0).head(mx));
      t_now += t_step;
      if (k1 != 0 && err_loc > 0.0)
        t_new_ = round_step(gamma * t_step * std::pow(t_step * tol_ / err_loc, xm));
      else if (k1 != 0)
        t_new_ = 2.0 * t_step;
      if (!w_.allFinite()) fail(ErrorCode::Numerical, "propagate", "non-finite state");
    }
  }

 private:
  RowSpMat A_;
  Vec w_;
  PropagateOptions opt_;
  Eigen::Index n_;
  double anorm_ = 0.0, tol_ = 0.0, t_new_ = 0.0;
  int m_ = 0;
  long steps_ = 0;
  bool dense_ = false;
  Mat dense_A_, cached_exp_;
  double cached_dt_ = -1.0;
};

void check_times(const std::vector<double>& times, const char* op) {
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < prev) fail(ErrorCode::InvalidArgument, op, "times must be finite, >= 0, non-decreasing");
    prev = t;
  }
}

template <class Sink>
void run(const SpMat& L, const Vec& x0, const std::vector<double>& times, const PropagateOptions& opt,
         const char* op, Sink&& sink) {
  if (L.rows() != L.cols() || L.rows() != x0.size()) fail(ErrorCode::Layout, op, "dimension mismatch");
  check_times(times, op);
  Expv ex(L, x0, opt);
  double t = 0.0;
  for (double target : times) {
    ex.advance(target - t);
    t = target;
    sink(ex.state());
  }
}

}  // namespace

std::vector<Vec> propagate(const SpMat& L, const Vec& x0, const std::vector<double>& times,
                           const PropagateOptions& opt) {
  std::vector<Vec> out;
  out.reserve(times.size());
  run(L, x0, times, opt, "propagate", [&](const Vec& w) { out.push_back(w); });
  return out;
}

std::vector<cplx> propagate_functional(const SpMat& L, const Vec& x0, const Vec& functional,
                                       const std::vector<double>& times, const PropagateOptions& opt) {
  if (functional.size() != x0.size()) fail(ErrorCode::Layout, "propagate_functional", "functional length");
  std::vector<cplx> out;
  out.reserve(times.size());
  run(L, x0, times, opt, "propagate_functional",
      [&](const Vec& w) { out.push_back((functional.array() * w.array()).sum()); });
  return out;
}

std::vector<std::vector<cplx>> propagate_functionals(const SpMat& L, const Vec& x0, const std::vector<Vec>& functionals,
                                                     const std::vector<double>& times,
                                                     const PropagateOptions& opt) {
  for (const auto& f : functionals)
    if (f.size() != x0.size()) fail(ErrorCode::Layout, "propagate_functionals", "functional length");
  std::vector<std::vector<cplx>> out(functionals.size());
  run(L, x0, times, opt, "propagate_functionals", [&](const Vec& w) {
    for (std::size_t i = 0; i < functionals.size(); ++i)
      out[i].push_back((functionals[i].array() * w.array()).sum());
  });
  return out;
}

EvolveResult evolve(const Liouvillian& L, const DensityOp& rho0, const std::vector<double>& times,
                    const PropagateOptions& opt) {
  if (!L.is_square_block() || rho0.dim() != L.ket_dim)
    fail(ErrorCode::Layout, "evolve", "state does not match the generator");
  EvolveResult out;
  const cplx tr0 = rho0.matrix.trace();
  run(L.superop, rho0.vec(), times, opt, "evolve", [&](const Vec& w) {
    out.states.push_back(DensityOp::from_vec(w, L.ket_dim));
    out.max_trace_drift = std::max(out.max_trace_drift, std::abs(out.states.back().matrix.trace() - tr0));
  });
  return out;
}

}  // namespace molspec::oracle
