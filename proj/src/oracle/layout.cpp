#include <cmath>
#include <numeric>
#include <string>

#include "molspec/error.hpp"
#include "molspec/oracle.hpp"

namespace molspec::oracle {

std::vector<int> HilbertLayout::factor_dims() const {
  std::vector<int> dims = qubit_dims;
  dims.insert(dims.end(), vib_dims.begin(), vib_dims.end());
  if (cavity_dim > 0) dims.push_back(cavity_dim);
  return dims;
}

std::size_t HilbertLayout::dimension() const {
  std::size_t d = 1;
  for (int n : factor_dims()) d *= static_cast<std::size_t>(n);
  return d;
}

std::vector<int> HilbertLayout::excitation_numbers() const {
  const auto dims = factor_dims();
  const std::size_t d = dimension();
  const std::size_t nq = qubit_dims.size();
  std::vector<int> out(d, 0);
  for (std::size_t idx = 0; idx < d; ++idx) {
    std::size_t rest = idx;
    int count = 0;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const int digit = static_cast<int>(rest % dims[f]);
      rest /= dims[f];
      if (f < nq) count += digit;
      else if (cavity_dim > 0 && f == dims.size() - 1) count += digit;
    }
    out[idx] = count;
  }
  return out;
}

std::vector<std::size_t> HilbertLayout::sector(int excitations) const {
  const auto n = excitation_numbers();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == excitations) out.push_back(i);
  return out;
}

int recommended_fock_dim(double lambda) {
  return static_cast<int>(std::ceil(lambda * lambda + 5.0 * lambda + 3.0 - 1e-12));
}

HilbertLayout default_layout(const std::vector<MoleculeSpec>& mols, int cavity_dim) {
  HilbertLayout layout;
  for (const auto& m : mols) {
    layout.qubit_dims.push_back(2);
    for (const auto& mode : m.modes) layout.vib_dims.push_back(recommended_fock_dim(mode.lambda));
  }
  layout.cavity_dim = cavity_dim;
  return layout;
}

Violations validate(const HilbertLayout& layout, const std::vector<MoleculeSpec>& mols, bool has_cavity) {
  Violations v;
  if (layout.qubit_dims.size() != mols.size())
    v.push_back({"HilbertLayout.qubit_dims", "one qubit factor per molecule is required", Severity::Error});
  for (std::size_t i = 0; i < layout.qubit_dims.size(); ++i)
    if (layout.qubit_dims[i] != 2)
      v.push_back({"HilbertLayout.qubit_dims[" + std::to_string(i) + "]", "electronic factors are two-level",
                   Severity::Error});
  std::size_t total_modes = 0;
  for (const auto& m : mols) total_modes += m.modes.size();
  if (layout.vib_dims.size() != total_modes) {
    v.push_back({"HilbertLayout.vib_dims", "one Fock factor per vibrational mode is required", Severity::Error});
  } else {
    std::size_t k = 0;
    for (std::size_t j = 0; j < mols.size(); ++j) {
      for (std::size_t q = 0; q < mols[j].modes.size(); ++q, ++k) {
        const std::string field = "HilbertLayout.vib_dims[" + std::to_string(k) + "]";
        if (layout.vib_dims[k] < 1) {
          v.push_back({field, "Fock dimension must be at least 1", Severity::Error});
          continue;
        }
        const int advised = recommended_fock_dim(mols[j].modes[q].lambda);
        if (layout.vib_dims[k] < advised)
          v.push_back({field, "Fock dimension below advisory " + std::to_string(advised), Severity::Warning});
      }
    }
  }
  if (has_cavity && layout.cavity_dim < 2)
    v.push_back({"HilbertLayout.cavity_dim", "a cavity needs at least two Fock states", Severity::Error});
  if (!has_cavity && layout.cavity_dim != 0)
    v.push_back({"HilbertLayout.cavity_dim", "cavity factor present without a cavity", Severity::Error});
  return v;
}

HilbertLayout doubled(const HilbertLayout& layout) {
  HilbertLayout out = layout;
  for (int& n : out.vib_dims) n *= 2;
  if (out.cavity_dim > 0) out.cavity_dim *= 2;
  return out;
}

double SystemSpec::frame_frequency() const {
  if (frame) return *frame;
  if (drive) return drive->omega_l;
  return 0.0;
}

}  // namespace molspec::oracle
