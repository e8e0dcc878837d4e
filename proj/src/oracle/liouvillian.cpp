#include <unsupported/Eigen/KroneckerProduct>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

namespace {

constexpr cplx I1{0.0, 1.0};

SpMat dagger(const SpMat& m) { return SpMat(m.adjoint()); }

SpMat kron(const SpMat& a, const SpMat& b) {
  SpMat out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

SpMat transpose(const SpMat& m) { return SpMat(m.transpose()); }
SpMat conjugate(const SpMat& m) { return SpMat(m.conjugate()); }

void check_layout(const SystemSpec& sys, const HilbertLayout& layout, const char* op) {
  const Violations v = validate(layout, sys.molecules, sys.cavity.has_value());
  for (const auto& x : v)
    if (x.severity == Severity::Error) fail(ErrorCode::Layout, op, x.field + ": " + x.rule);
  if (sys.omega_dd != 0.0 && sys.molecules.size() < 2)
    fail(ErrorCode::InvalidArgument, op, "dipole-dipole coupling needs two molecules");
  if (!sys.cavity_couplings.empty() && sys.cavity_couplings.size() != sys.molecules.size())
    fail(ErrorCode::InvalidArgument, op, "cavity_couplings must have one entry per molecule");
}

}  // namespace

SpMat destroy(int n) {
  SpMat b(n, n);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  b.setFromTriplets(t.begin(), t.end());
  return b;
}

SpMat sigma_minus() {
  SpMat s(2, 2);
  s.insert(0, 1) = 1.0;
  s.makeCompressed();
  return s;
}

SpMat identity(std::size_t n) {
  SpMat id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return id;
}

SpMat embed(const SpMat& local, std::size_t factor, const std::vector<int>& dims) {
  if (factor >= dims.size() || local.rows() != dims[factor])
    fail(ErrorCode::Layout, "embed", "operator does not match factor " + std::to_string(factor));
  std::size_t before = 1, after = 1;
  for (std::size_t f = 0; f < factor; ++f) before *= dims[f];
  for (std::size_t f = factor + 1; f < dims.size(); ++f) after *= dims[f];
  SpMat out = local;
  if (after > 1) out = kron(out, identity(after));
  if (before > 1) out = kron(identity(before), out);
  return out;
}

Operators build_operators(const SystemSpec& sys, const HilbertLayout& layout) {
  check_layout(sys, layout, "build_operators");
  const auto dims = layout.factor_dims();
  Operators ops;
  const std::size_t nq = layout.qubit_dims.size();
  for (std::size_t j = 0; j < nq; ++j) ops.sigma.push_back(embed(sigma_minus(), j, dims));
  std::size_t k = 0;
  for (std::size_t j = 0; j < sys.molecules.size(); ++j) {
    for (std::size_t q = 0; q < sys.molecules[j].modes.size(); ++q, ++k) {
      ops.b.push_back(embed(destroy(layout.vib_dims[k]), nq + k, dims));
      ops.mode_owner.push_back(static_cast<int>(j));
    }
  }
  if (layout.cavity_dim > 0) ops.a = embed(destroy(layout.cavity_dim), dims.size() - 1, dims);
  return ops;
}

SpMat build_hamiltonian(const SystemSpec& sys, const HilbertLayout& layout) {
  const Operators ops = build_operators(sys, layout);
  const std::size_t d = layout.dimension();
  const double wf = sys.frame_frequency();
  SpMat H(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));

  for (std::size_t j = 0; j < sys.molecules.size(); ++j) {
    const auto& mol = sys.molecules[j];
    const SpMat ee = dagger(ops.sigma[j]) * ops.sigma[j];
    H += (mol.polaron_shifted_frequency() - wf) * ee;
  }
  std::size_t k = 0;
  for (std::size_t j = 0; j < sys.molecules.size(); ++j) {
    const SpMat ee = dagger(ops.sigma[j]) * ops.sigma[j];
    for (const auto& mode : sys.molecules[j].modes) {
      const SpMat& b = ops.b[k++];
      const SpMat bd = dagger(b);
      H += mode.nu * (bd * b);
      H -= (mode.lambda * mode.nu) * (SpMat(b + bd) * ee);
    }
  }
  if (sys.cavity) {
    const SpMat& a = ops.a;
    const SpMat ad = dagger(a);
    H += (sys.cavity->omega_c - wf) * (ad * a);
    for (std::size_t j = 0; j < sys.molecules.size(); ++j) {
      const double g = sys.cavity_couplings.empty() ? sys.cavity->g : sys.cavity_couplings[j];
      if (g == 0.0) continue;
      const SpMat& s = ops.sigma[j];
      H += (I1 * g) * SpMat(ad * s - dagger(s) * a);
    }
  }
  if (sys.omega_dd != 0.0) {
    const SpMat& s0 = ops.sigma[0];
    const SpMat& s1 = ops.sigma[1];
    H += sys.omega_dd * SpMat(s0 * dagger(s1) + dagger(s0) * s1);
  }
  if (sys.drive && sys.drive->eta != 0.0) {
    const double eta = sys.drive->eta;
    if (sys.drive->target == DriveTarget::Cavity) {
      if (!sys.cavity) fail(ErrorCode::InvalidArgument, "build_hamiltonian", "cavity drive without a cavity");
      H += (I1 * eta) * SpMat(dagger(ops.a) - ops.a);
    } else {
      for (const auto& s : ops.sigma) H += (I1 * eta) * SpMat(dagger(s) - s);
    }
  }
  H.prune(cplx(0.0));
  H.makeCompressed();
  return H;
}

SpMat build_hamiltonian(const std::vector<MoleculeSpec>& mols, const std::optional<CavitySpec>& cav,
                        std::optional<double> omega_dd, const std::optional<DriveSpec>& drive,
                        const HilbertLayout& layout) {
  SystemSpec sys;
  sys.molecules = mols;
  sys.cavity = cav;
  sys.omega_dd = omega_dd.value_or(0.0);
  sys.drive = drive;
  return build_hamiltonian(sys, layout);
}

std::vector<Collapse> standard_collapses(const SystemSpec& sys, const HilbertLayout& layout) {
  const Operators ops = build_operators(sys, layout);
  std::vector<Collapse> out;
  if (!sys.baths.empty() && sys.baths.size() != ops.b.size())
    fail(ErrorCode::InvalidArgument, "standard_collapses", "baths must have one entry per mode");
  if (sys.include_radiative)
    for (std::size_t j = 0; j < sys.molecules.size(); ++j)
      if (sys.molecules[j].gamma_rad > 0.0)
        out.push_back({"radiative[" + std::to_string(j) + "]", ops.sigma[j], sys.molecules[j].gamma_rad});
  std::size_t k = 0;
  for (std::size_t j = 0; j < sys.molecules.size(); ++j) {
    const SpMat ee = dagger(ops.sigma[j]) * ops.sigma[j];
    for (const auto& mode : sys.molecules[j].modes) {
      SpMat c = ops.b[k];
      if (sys.relaxation == VibrationalRelaxation::Displaced && mode.lambda != 0.0) c -= mode.lambda * ee;
      c.makeCompressed();
      const double nbar = sys.baths.empty() ? 0.0 : sys.baths[k].nbar;
      const std::string tag = "[" + std::to_string(k) + "]";
      if (mode.gamma_vib > 0.0) {
        out.push_back({"vibrational" + tag, c, mode.gamma_vib * (nbar + 1.0)});
        if (nbar > 0.0) out.push_back({"vibrational_up" + tag, dagger(c), mode.gamma_vib * nbar});
      }
      ++k;
    }
  }
  if (sys.cavity && sys.include_cavity_loss && sys.cavity->kappa > 0.0)
    out.push_back({"cavity", ops.a, sys.cavity->kappa});
  return out;
}

Liouvillian build_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses) {
  const std::size_t d = static_cast<std::size_t>(H.rows());
  if (H.rows() != H.cols()) fail(ErrorCode::Layout, "build_liouvillian", "Hamiltonian is not square");
  const SpMat id = identity(d);
  Liouvillian L;
  L.ket_dim = L.bra_dim = d;
  SpMat S = (-I1) * SpMat(kron(id, H) - kron(transpose(H), id));
  for (const auto& c : collapses) {
    if (c.op.rows() != H.rows() || c.op.cols() != H.cols())
      fail(ErrorCode::Layout, "build_liouvillian", "collapse '" + c.label + "' has the wrong dimension");
    const SpMat cdc = dagger(c.op) * c.op;
    S += c.rate * SpMat(2.0 * kron(conjugate(c.op), c.op) - kron(id, cdc) - kron(transpose(cdc), id));
    L.collapse_registry.emplace_back(c.label, c.rate);
  }
  S.prune(cplx(0.0));
  S.makeCompressed();
  L.superop = std::move(S);
  return L;
}

Liouvillian build_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses, const HilbertLayout& layout) {
  if (static_cast<std::size_t>(H.rows()) != layout.dimension())
    fail(ErrorCode::Layout, "build_liouvillian", "Hamiltonian dimension does not match the layout");
  return build_liouvillian(H, collapses);
}

SpMat restrict(const SpMat& op, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<long> row_pos(op.rows(), -1), col_pos(op.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<long>(i);
  for (std::size_t i = 0; i < cols.size(); ++i) col_pos[cols[i]] = static_cast<long>(i);
  std::vector<Eigen::Triplet<cplx>> t;
  for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
    if (col_pos[c] < 0) continue;
    for (SpMat::InnerIterator it(op, c); it; ++it)
      if (row_pos[it.row()] >= 0) t.emplace_back(row_pos[it.row()], col_pos[c], it.value());
  }
  SpMat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Liouvillian build_block_liouvillian(const SpMat& H, const std::vector<Collapse>& collapses,
                                    const std::vector<std::size_t>& ket_states,
                                    const std::vector<std::size_t>& bra_states) {
  if (ket_states.empty() || bra_states.empty())
    fail(ErrorCode::Layout, "build_block_liouvillian", "empty sector");
  const SpMat Hk = restrict(H, ket_states, ket_states);
  const SpMat Hb = restrict(H, bra_states, bra_states);
  const SpMat ik = identity(ket_states.size());
  const SpMat ib = identity(bra_states.size());
  Liouvillian L;
  L.ket_dim = ket_states.size();
  L.bra_dim = bra_states.size();
  // X -> -i (Hk X - X Hb)
  SpMat S = (-I1) * SpMat(kron(ib, Hk) - kron(transpose(Hb), ik));
  for (const auto& c : collapses) {
    const SpMat ck = restrict(c.op, ket_states, ket_states);
    const SpMat cb = restrict(c.op, bra_states, bra_states);
    const SpMat cdc = dagger(c.op) * c.op;
    const SpMat nk = restrict(cdc, ket_states, ket_states);
    const SpMat nb = restrict(cdc, bra_states, bra_states);
    SpMat term = -SpMat(kron(ib, nk) + kron(transpose(nb), ik));
    if (ck.nonZeros() > 0 && cb.nonZeros() > 0) term += 2.0 * kron(conjugate(cb), ck);
    S += c.rate * term;
    L.collapse_registry.emplace_back(c.label, c.rate);
  }
  S.prune(cplx(0.0));
  S.makeCompressed();
  L.superop = std::move(S);
  return L;
}

double trace_preservation_defect(const Liouvillian& L) {
  if (!L.is_square_block()) fail(ErrorCode::Layout, "trace_preservation_defect", "not a square block");
  const std::size_t d = L.ket_dim;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < L.superop.outerSize(); ++c) {
    cplx sum = 0.0;
    for (SpMat::InnerIterator it(L.superop, c); it; ++it) {
      const std::size_t r = static_cast<std::size_t>(it.row());
      if (r % d == r / d) sum += it.value();
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

double max_real_eigenvalue(const Liouvillian& L) {
  if (L.superop.rows() > 4096)
    fail(ErrorCode::Unsupported, "max_real_eigenvalue", "dense eigenvalues limited to 4096 unknowns");
  Eigen::ComplexEigenSolver<Mat> es(Mat(L.superop), false);
  if (es.info() != Eigen::Success) fail(ErrorCode::Numerical, "max_real_eigenvalue", "eigensolver failed");
  return es.eigenvalues().real().maxCoeff();
}

Vec DensityOp::vec() const { return Eigen::Map<const Vec>(matrix.data(), matrix.size()); }

DensityOp DensityOp::from_vec(const Vec& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim * dim)
    fail(ErrorCode::Layout, "DensityOp::from_vec", "vector length is not dim^2");
  DensityOp r;
  r.matrix = Eigen::Map<const Mat>(v.data(), dim, dim);
  return r;
}

cplx DensityOp::expect(const SpMat& op) const {
  if (op.rows() != matrix.rows()) fail(ErrorCode::Layout, "DensityOp::expect", "dimension mismatch");
  cplx s = 0.0;
  for (Eigen::Index c = 0; c < op.outerSize(); ++c)
    for (SpMat::InnerIterator it(op, c); it; ++it) s += it.value() * matrix(c, it.row());
  return s;
}

Violations check_density(const DensityOp& rho, double herm_tol, double trace_tol, double pos_tol) {
  Violations v;
  const Mat& m = rho.matrix;
  if (m.rows() != m.cols()) {
    v.push_back({"DensityOp.matrix", "must be square", Severity::Error});
    return v;
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    v.push_back({"DensityOp.matrix", "must be Hermitian", Severity::Error});
  if (std::abs(m.trace() - 1.0) > trace_tol)
    v.push_back({"DensityOp.matrix", "trace must be one", Severity::Error});
  if (m.rows() <= 2048) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -pos_tol)
      v.push_back({"DensityOp.matrix", "must be positive semidefinite", Severity::Error});
  }
  return v;
}

}  // namespace molspec::oracle
