#include <Eigen/IterativeLinearSolvers>
#include <Eigen/QR>
#include <Eigen/SparseLU>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

namespace {

constexpr std::size_t kDirectLimit = 100000;
constexpr std::size_t kDenseRankLimit = 4000;

long nullity(const SpMat& S) {
  Eigen::ColPivHouseholderQR<Mat> qr{Mat(S)};
  qr.setThreshold(1e-10);
  return static_cast<long>(S.cols()) - static_cast<long>(qr.rank());
}

[[noreturn]] void rank_failure(const SpMat& S, const std::string& why) {
  std::string detail = "steady state is not unique (" + why + ")";
  if (static_cast<std::size_t>(S.rows()) <= kDenseRankLimit)
    detail += ", estimated kernel dimension " + std::to_string(nullity(S));
  fail(ErrorCode::RankDeficient, "steady_state", detail);
}

}  // namespace

SteadyStateResult steady_state(const Liouvillian& L) {
  if (!L.is_square_block()) fail(ErrorCode::Layout, "steady_state", "generator is not a density-matrix block");
  const std::size_t d = L.ket_dim;
  const std::size_t n = d * d;
  const SpMat& S = L.superop;
  if (static_cast<std::size_t>(S.rows()) != n) fail(ErrorCode::Layout, "steady_state", "size mismatch");

  if (n <= 400 && nullity(S) > 1) rank_failure(S, "kernel larger than one");

  // Replace row 0 by the trace functional.
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(S.nonZeros() + d);
  for (Eigen::Index c = 0; c < S.outerSize(); ++c)
    for (SpMat::InnerIterator it(S, c); it; ++it)
      if (it.row() != 0) t.emplace_back(it.row(), c, it.value());
  for (std::size_t i = 0; i < d; ++i) t.emplace_back(0, static_cast<Eigen::Index>(i + i * d), 1.0);
  SpMat A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  Vec rhs = Vec::Zero(static_cast<Eigen::Index>(n));
  rhs(0) = 1.0;

  SteadyStateResult out;
  Vec x;
  if (n <= kDirectLimit) {
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) rank_failure(S, "factorization failed: " + lu.lastErrorMessage());
    x = lu.solve(rhs);
  } else {
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<cplx>> solver;
    solver.preconditioner().setDroptol(1e-6);
    solver.preconditioner().setFillfactor(20);
    solver.setTolerance(1e-12);
    solver.setMaxIterations(20000);
    solver.compute(A);
    if (solver.info() != Eigen::Success) fail(ErrorCode::Numerical, "steady_state", "preconditioner failed");
    x = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
      fail(ErrorCode::Numerical, "steady_state",
           "BiCGSTAB did not converge, error " + std::to_string(solver.error()));
    out.iterative = true;
  }
  if (!x.allFinite()) rank_failure(S, "non-finite solution");

  DensityOp rho = DensityOp::from_vec(x, d);
  rho.matrix = 0.5 * (rho.matrix + rho.matrix.adjoint()).eval();
  rho.matrix /= rho.matrix.trace().real();

  const double scale = std::max(1.0, S.norm());
  out.residual = (S * rho.vec()).norm() / scale;
  if (out.residual > 1e-6) rank_failure(S, "residual " + std::to_string(out.residual));
  out.rho = std::move(rho);
  return out;
}

}  // namespace molspec::oracle
