#include "molspec/molspec.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "molspec/error.hpp"
#include "molspec/fret.hpp"
#include "molspec/oracle_experiments.hpp"
#include "molspec/parallel.hpp"
#include "molspec/series.hpp"
#include "molspec/spectra.hpp"

struct ms_molecule {
  molspec::MoleculeSpec spec;
};

struct ms_result {
  std::vector<std::pair<std::string, std::vector<double>>> arrays;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> flags;

  void array(std::string name, std::vector<double> v) { arrays.emplace_back(std::move(name), std::move(v)); }
  void scalar(std::string name, double v) { scalars.emplace_back(std::move(name), v); }
};

namespace {

using namespace molspec;

thread_local std::string last_error;

ms_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return MS_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unsupported: return MS_ERR_UNSUPPORTED;
    case ErrorCode::Layout: return MS_ERR_LAYOUT;
    case ErrorCode::Numerical: return MS_ERR_NUMERICAL;
    case ErrorCode::Conditioning: return MS_ERR_CONDITIONING;
    case ErrorCode::Truncation: return MS_ERR_TRUNCATION;
    case ErrorCode::Windowing: return MS_ERR_WINDOWING;
    case ErrorCode::Stiffness: return MS_ERR_STIFFNESS;
    case ErrorCode::RankDeficient: return MS_ERR_RANK_DEFICIENT;
    case ErrorCode::PoleProximity: return MS_ERR_POLE_PROXIMITY;
    case ErrorCode::Fit: return MS_ERR_FIT;
  }
  return MS_ERR_INTERNAL;
}

template <class F>
ms_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MS_OK;
  } catch (const TruncationError& e) {
    last_error = std::string(e.what()) + " (retained weight " + std::to_string(e.achieved_weight()) + ")";
    return MS_ERR_TRUNCATION;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, "molspec", std::string(what) + " must not be null");
}

std::vector<double> span(const double* p, std::size_t n, const char* what) {
  if (n > 0) need(p, what);
  return std::vector<double>(p, p + n);
}

TruncationPolicy policy_of(ms_policy p) { return TruncationPolicy{p.epsilon, p.max_order}; }
CavitySpec cavity_of(ms_cavity c) { return CavitySpec{c.omega_c, c.kappa, c.g}; }
DriveSpec drive_of(ms_drive d) {
  return DriveSpec{d.target == MS_DRIVE_CAVITY ? DriveTarget::Cavity : DriveTarget::Molecule, d.omega_l, d.eta};
}

FretSpec fret_of(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params p) {
  need(donor, "donor");
  need(acceptor, "acceptor");
  FretSpec f;
  f.donor = donor->spec;
  f.acceptor = acceptor->spec;
  f.omega_dd = p.omega_dd;
  f.delta = p.delta;
  if (p.has_cavity) f.cavity = FretCavity{p.kappa, p.g_d, p.g_a, p.delta_c};
  return f;
}

oracle::OracleOptions oracle_of(const ms_oracle_options* o, const std::vector<MoleculeSpec>& mols, bool cavity) {
  oracle::OracleOptions out;
  if (!o) return out;
  out.dt = o->dt;
  out.tau_max = o->tau_max;
  out.relaxation = o->relaxation == MS_RELAX_BARE ? oracle::VibrationalRelaxation::Bare
                                                  : oracle::VibrationalRelaxation::Displaced;
  out.factorized = o->factorized != 0;
  if (o->vib_dims || o->cavity_dim > 0) {
    oracle::HilbertLayout layout = oracle::default_layout(mols, cavity ? 2 : 0);
    if (o->vib_dims) {
      if (o->n_vib_dims != layout.vib_dims.size())
        fail(ErrorCode::Layout, "molspec", "vib_dims must list one Fock size per mode");
      layout.vib_dims.assign(o->vib_dims, o->vib_dims + o->n_vib_dims);
    }
    if (o->cavity_dim > 0) {
      if (!cavity) fail(ErrorCode::Layout, "molspec", "cavity_dim given without a cavity");
      layout.cavity_dim = o->cavity_dim;
    }
    out.layout = layout;
  }
  return out;
}

void add_report(ms_result& r, const TruncationReport& t) {
  r.scalar("retained_weight", t.retained_weight);
  r.scalar("max_order_used", t.max_order_used);
  r.scalar("terms", static_cast<double>(t.terms));
  r.array("mode_orders", std::vector<double>(t.mode_orders.begin(), t.mode_orders.end()));
}

void add_flags(ms_result& r, const std::vector<std::string>& flags) {
  r.flags.insert(r.flags.end(), flags.begin(), flags.end());
}

ms_result* spectrum_result(const SpectrumResult& s, const char* value_name) {
  auto* r = new ms_result;
  r->array("grid", s.grid);
  r->array(value_name, s.values);
  if (s.is_complex()) {
    std::vector<double> re, im;
    for (const auto& z : s.complex_values) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    r->array("real", std::move(re));
    r->array("imag", std::move(im));
  }
  add_report(*r, s.truncation_report);
  add_flags(*r, s.flags);
  return r;
}

ms_result* violations_result(const Violations& vs) {
  auto* r = new ms_result;
  double errors = 0;
  std::vector<double> severity;
  for (const auto& v : vs) {
    r->flags.push_back(v.field + ": " + v.rule);
    const bool err = v.severity == Severity::Error;
    severity.push_back(err ? 1.0 : 0.0);
    if (err) ++errors;
  }
  r->array("severity", std::move(severity));
  r->scalar("errors", errors);
  return r;
}

template <class F>
ms_status produce(ms_result** out, F&& f) {
  if (!out) {
    last_error = "molspec: out must not be null";
    return MS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] { *out = f(); });
}

}  // namespace

extern "C" {

const char* ms_version(void) { return "1.0.0"; }

const char* ms_status_name(ms_status s) {
  switch (s) {
    case MS_OK: return "ok";
    case MS_ERR_INVALID_ARGUMENT: return to_string(ErrorCode::InvalidArgument);
    case MS_ERR_UNSUPPORTED: return to_string(ErrorCode::Unsupported);
    case MS_ERR_LAYOUT: return to_string(ErrorCode::Layout);
    case MS_ERR_NUMERICAL: return to_string(ErrorCode::Numerical);
    case MS_ERR_CONDITIONING: return to_string(ErrorCode::Conditioning);
    case MS_ERR_TRUNCATION: return to_string(ErrorCode::Truncation);
    case MS_ERR_WINDOWING: return to_string(ErrorCode::Windowing);
    case MS_ERR_STIFFNESS: return to_string(ErrorCode::Stiffness);
    case MS_ERR_RANK_DEFICIENT: return to_string(ErrorCode::RankDeficient);
    case MS_ERR_POLE_PROXIMITY: return to_string(ErrorCode::PoleProximity);
    case MS_ERR_FIT: return to_string(ErrorCode::Fit);
    case MS_ERR_NOT_FOUND: return "not-found";
    case MS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ms_last_error(void) { return last_error.c_str(); }

void ms_set_max_jobs(unsigned jobs) { set_max_jobs(jobs); }

ms_policy ms_default_policy(void) {
  const TruncationPolicy p;
  return ms_policy{p.epsilon, p.max_order};
}

ms_oracle_options ms_default_oracle_options(void) {
  return ms_oracle_options{nullptr, 0, 0, 0.0, 0.0, MS_RELAX_DISPLACED, 1};
}

ms_status ms_molecule_create(double omega_e, double gamma_rad, ms_molecule** out) {
  if (!out) {
    last_error = "ms_molecule_create: out must not be null";
    return MS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto* m = new ms_molecule;
    m->spec.omega_e = omega_e;
    m->spec.gamma_rad = gamma_rad;
    *out = m;
  });
}

ms_status ms_molecule_add_mode(ms_molecule* mol, double nu, double gamma_vib, double lambda) {
  return guarded([&] {
    need(mol, "molecule");
    mol->spec.modes.push_back(VibrationalMode{nu, gamma_vib, lambda});
  });
}

size_t ms_molecule_mode_count(const ms_molecule* mol) { return mol ? mol->spec.modes.size() : 0; }

void ms_molecule_destroy(ms_molecule* mol) { delete mol; }

ms_status ms_molecule_validate(const ms_molecule* mol, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    return violations_result(validate(mol->spec));
  });
}

ms_status ms_mode_validate(double nu, double gamma_vib, double lambda, ms_result** out) {
  return produce(out, [&] { return violations_result(validate(VibrationalMode{nu, gamma_vib, lambda})); });
}

ms_status ms_cavity_validate(ms_cavity cav, ms_result** out) {
  return produce(out, [&] { return violations_result(validate(cavity_of(cav))); });
}

ms_status ms_drive_validate(ms_drive drive, double driven_linewidth, ms_result** out) {
  return produce(out, [&] { return violations_result(validate(drive_of(drive), driven_linewidth)); });
}

ms_status ms_fret_validate(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                           ms_result** out) {
  return produce(out, [&] { return violations_result(validate(fret_of(donor, acceptor, params))); });
}

ms_status ms_huang_rhys_from_geometry(double mu, double nu, double r_ge, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = huang_rhys_from_geometry(GeometrySpec{mu, nu, r_ge});
  });
}

ms_status ms_truncation_report(const ms_molecule* mol, ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    require_valid(validate(mol->spec), "ms_truncation_report");
    auto* r = new ms_result;
    const auto rep = for_each_index(mol->spec.modes, policy_of(policy), [](const IndexTerm&) {});
    add_report(*r, rep);
    return r;
  });
}

ms_status ms_displacement_correlation(double nu, double gamma_vib, double lambda, const double* taus, size_t n,
                                      ms_result** out) {
  return produce(out, [&] {
    const auto t = span(taus, n, "taus");
    const VibrationalMode mode{nu, gamma_vib, lambda};
    require_valid(validate(mode), "ms_displacement_correlation");
    std::vector<double> re, im;
    for (double tau : t) {
      const cplx c = displacement_correlation(mode, tau);
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    auto* r = new ms_result;
    r->array("tau", t);
    r->array("real", std::move(re));
    r->array("imag", std::move(im));
    return r;
  });
}

ms_status ms_force_spectrum(double nu, double gamma_vib, double lambda, double nbar, const double* grid, size_t n,
                            ms_result** out) {
  return produce(out, [&] {
    const auto g = span(grid, n, "grid");
    const VibrationalMode mode{nu, gamma_vib, lambda};
    require_valid(validate(mode), "ms_force_spectrum");
    require_valid(validate(ThermalBath{nbar}), "ms_force_spectrum");
    std::vector<double> f;
    for (double w : g) f.push_back(force_spectrum(mode, w, ThermalBath{nbar}));
    auto* r = new ms_result;
    r->array("grid", g);
    r->array("values", std::move(f));
    return r;
  });
}

ms_status ms_absorption_population(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n,
                                   ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    return spectrum_result(absorption_population(mol->spec, drive_of(drive), span(grid, n, "grid"), policy_of(policy)),
                           "values");
  });
}

ms_status ms_emission_transient(const ms_molecule* mol, double p0, const double* grid, size_t n, ms_policy policy,
                                ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    return spectrum_result(emission_spectrum_transient(mol->spec, p0, span(grid, n, "grid"), policy_of(policy)),
                           "values");
  });
}

ms_status ms_emission_steady(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n, ms_policy policy,
                             ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const auto s = emission_spectrum_steady_detail(mol->spec, drive_of(drive), span(grid, n, "grid"), policy_of(policy));
    auto* r = spectrum_result(s.spectrum, "values");
    r->scalar("coherent_intensity", s.coherent_intensity);
    r->scalar("excited_population", s.excited_population);
    return r;
  });
}

ms_status ms_cavity_transmission(const ms_molecule* mol, ms_cavity cav, ms_drive drive, const double* grid, size_t n,
                                 ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    return spectrum_result(
        cavity_transmission(mol->spec, cavity_of(cav), drive_of(drive), span(grid, n, "grid"), policy_of(policy)),
        "values");
  });
}

ms_status ms_polariton_rates(const ms_molecule* mol, ms_cavity cav, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const CavitySpec c = cavity_of(cav);
    const PolaritonModes m = polariton_modes(mol->spec, c, mol->spec.omega_e);
    auto* r = new ms_result;
    r->scalar("omega_plus", m.omega_plus);
    r->scalar("omega_minus", m.omega_minus);
    r->scalar("gamma_plus", m.gamma_plus);
    r->scalar("gamma_minus", m.gamma_minus);
    r->scalar("exceptional", m.exceptional ? 1.0 : 0.0);
    r->scalar("kappa_ul", polariton_crosstalk_rate(mol->spec, c));
    r->scalar("upper_half_width", 0.5 * (c.kappa + mol->spec.gamma_rad) + 0.5 * r->scalars.back().second);
    return r;
  });
}

ms_status ms_branching(const ms_molecule* mol, const ms_cavity* cav, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    require_valid(validate(mol->spec), "ms_branching");
    auto* r = new ms_result;
    r->scalar("alpha", branching_ratio(mol->spec));
    if (cav) {
      const auto p = purcell_branching_ratio(mol->spec, cavity_of(*cav));
      r->scalar("alpha_cav", p.alpha_cav);
      r->scalar("c00", p.c00);
      r->scalar("g00", p.g00);
      add_flags(*r, p.flags);
    }
    return r;
  });
}

ms_status ms_dephasing_estimate(const ms_molecule* mol, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    require_valid(validate(mol->spec), "ms_dephasing_estimate");
    const auto d = langevin_dephasing_estimate(mol->spec);
    auto* r = new ms_result;
    r->array("per_mode", d.per_mode);
    r->scalar("total", d.total);
    r->scalar("brownian_total", d.brownian_total);
    return r;
  });
}

ms_status ms_fret_rate_direct(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                              ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    const FretSpec f = fret_of(donor, acceptor, params);
    TruncationReport rep;
    std::vector<std::string> flags;
    const double k = fret_rate_direct(f, policy_of(policy), &rep, &flags);
    auto* r = new ms_result;
    r->scalar("kappa_et", k);
    add_report(*r, rep);
    add_flags(*r, flags);
    return r;
  });
}

ms_status ms_fret_rate_cavity(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                              ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    const FretSpec f = fret_of(donor, acceptor, params);
    const TransferRates t = fret_rate_cavity(f, policy_of(policy));
    auto* r = new ms_result;
    r->scalar("kappa_et", t.kappa_et);
    r->scalar("j_cavity_dd", t.j_cavity_dd);
    r->scalar("j_cavity_pure_gamma", t.j_cavity_pure_gamma);
    r->scalar("j_cavity_pure_kappa", t.j_cavity_pure_kappa);
    r->scalar("j_cavity_pure", t.j_cavity_pure());
    add_report(*r, t.truncation_report);
    add_flags(*r, t.flags);
    return r;
  });
}

ms_status ms_pump_probe(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params, double p_d0,
                        const double* times, size_t n, ms_policy policy, ms_result** out) {
  return produce(out, [&] {
    const FretSpec f = fret_of(donor, acceptor, params);
    const PumpProbeTrace t = pump_probe_dynamics(f, p_d0, span(times, n, "times"), policy_of(policy));
    auto* r = new ms_result;
    r->array("t", t.times);
    r->array("P_D", t.p_donor);
    r->array("P_A", t.p_acceptor);
    r->array("P_D_uncoupled", t.p_donor_uncoupled);
    r->array("P_A_tangent", t.p_acceptor_tangent);
    r->scalar("kappa_et", t.kappa_et);
    add_report(*r, t.truncation_report);
    add_flags(*r, t.flags);
    return r;
  });
}

ms_status ms_oracle_absorption(const ms_molecule* mol, double eta, const double* grid, size_t n,
                               const ms_oracle_options* opt, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const auto o = oracle::oracle_absorption(mol->spec, eta, span(grid, n, "grid"), oracle_of(opt, {mol->spec}, false));
    return spectrum_result(o.spectrum, "values");
  });
}

ms_status ms_oracle_emission_transient(const ms_molecule* mol, double p0, const double* grid, size_t n,
                                       const ms_oracle_options* opt, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const auto o =
        oracle::oracle_emission_transient(mol->spec, p0, span(grid, n, "grid"), oracle_of(opt, {mol->spec}, false));
    return spectrum_result(o.spectrum, "values");
  });
}

ms_status ms_oracle_emission_steady(const ms_molecule* mol, ms_drive drive, const double* grid, size_t n,
                                    const ms_oracle_options* opt, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const auto o = oracle::oracle_emission_steady(mol->spec, drive_of(drive), span(grid, n, "grid"),
                                                  oracle_of(opt, {mol->spec}, false));
    auto* r = spectrum_result(o.inelastic.spectrum, "values");
    r->scalar("coherent_intensity", o.coherent_intensity);
    r->scalar("excited_population", o.excited_population);
    return r;
  });
}

ms_status ms_oracle_transmission(const ms_molecule* mol, ms_cavity cav, const double* grid, size_t n,
                                 const ms_oracle_options* opt, ms_result** out) {
  return produce(out, [&] {
    need(mol, "molecule");
    const auto s = oracle::oracle_transmission(mol->spec, cavity_of(cav), span(grid, n, "grid"),
                                               oracle_of(opt, {mol->spec}, true));
    return spectrum_result(s, "values");
  });
}

ms_status ms_oracle_pump_probe(const ms_molecule* donor, const ms_molecule* acceptor, ms_fret_params params,
                               double p_d0, const double* times, size_t n, const ms_oracle_options* opt,
                               ms_result** out) {
  return produce(out, [&] {
    const FretSpec f = fret_of(donor, acceptor, params);
    const auto t = oracle::oracle_pump_probe(f, p_d0, span(times, n, "times"),
                                             oracle_of(opt, {f.donor, f.acceptor}, f.cavity.has_value()));
    auto* r = new ms_result;
    r->array("t", t.times);
    r->array("P_D", t.p_donor);
    r->array("P_A", t.p_acceptor);
    return r;
  });
}

ms_status ms_fit_lorentzian(const double* grid, const double* values, size_t n, double lo, double hi,
                            ms_result** out) {
  return produce(out, [&] {
    SpectrumResult s;
    s.grid = span(grid, n, "grid");
    s.values = span(values, n, "values");
    const auto f = oracle::fit_lorentzian(s, lo, hi);
    auto* r = new ms_result;
    r->scalar("center", f.center);
    r->scalar("half_width", f.half_width);
    r->scalar("amplitude", f.amplitude);
    r->scalar("residual", f.residual);
    r->scalar("points", f.points);
    return r;
  });
}

size_t ms_result_array_count(const ms_result* r) { return r ? r->arrays.size() : 0; }

const char* ms_result_array_name(const ms_result* r, size_t i) {
  return r && i < r->arrays.size() ? r->arrays[i].first.c_str() : nullptr;
}

ms_status ms_result_array(const ms_result* r, const char* name, const double** data, size_t* len) {
  if (!r || !name || !data || !len) {
    last_error = "ms_result_array: null argument";
    return MS_ERR_INVALID_ARGUMENT;
  }
  for (const auto& a : r->arrays) {
    if (a.first == name) {
      *data = a.second.data();
      *len = a.second.size();
      return MS_OK;
    }
  }
  last_error = std::string("ms_result_array: no array named '") + name + "'";
  return MS_ERR_NOT_FOUND;
}

size_t ms_result_scalar_count(const ms_result* r) { return r ? r->scalars.size() : 0; }

const char* ms_result_scalar_name(const ms_result* r, size_t i) {
  return r && i < r->scalars.size() ? r->scalars[i].first.c_str() : nullptr;
}

ms_status ms_result_scalar(const ms_result* r, const char* name, double* value) {
  if (!r || !name || !value) {
    last_error = "ms_result_scalar: null argument";
    return MS_ERR_INVALID_ARGUMENT;
  }
  for (const auto& s : r->scalars) {
    if (s.first == name) {
      *value = s.second;
      return MS_OK;
    }
  }
  last_error = std::string("ms_result_scalar: no scalar named '") + name + "'";
  return MS_ERR_NOT_FOUND;
}

size_t ms_result_flag_count(const ms_result* r) { return r ? r->flags.size() : 0; }

const char* ms_result_flag(const ms_result* r, size_t i) {
  return r && i < r->flags.size() ? r->flags[i].c_str() : nullptr;
}

void ms_result_destroy(ms_result* r) { delete r; }

}  // extern "C"
