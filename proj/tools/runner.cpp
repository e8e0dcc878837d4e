#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace molspec::cli {

namespace {

struct MoleculePtr {
  ms_molecule* h = nullptr;
  ~MoleculePtr() { ms_molecule_destroy(h); }
};

struct ResultPtr {
  ms_result* r = nullptr;
  ~ResultPtr() { ms_result_destroy(r); }

  std::vector<double> array(const char* name) const {
    const double* d = nullptr;
    size_t n = 0;
    if (ms_result_array(r, name, &d, &n) != MS_OK) throw RunError(MS_ERR_INTERNAL, ms_last_error());
    return std::vector<double>(d, d + n);
  }
  double scalar(const char* name) const {
    double v = 0.0;
    if (ms_result_scalar(r, name, &v) != MS_OK) throw RunError(MS_ERR_INTERNAL, ms_last_error());
    return v;
  }
  bool has_scalar(const char* name) const {
    double v = 0.0;
    return ms_result_scalar(r, name, &v) == MS_OK;
  }
  std::vector<std::string> flags() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < ms_result_flag_count(r); ++i) out.emplace_back(ms_result_flag(r, i));
    return out;
  }
};

void check(ms_status st, const std::string& what) {
  if (st != MS_OK) throw RunError(st, what + ": " + ms_last_error());
}

std::unique_ptr<MoleculePtr> make_molecule(const MoleculeConfig& m) {
  auto p = std::make_unique<MoleculePtr>();
  check(ms_molecule_create(m.omega_e, m.gamma, &p->h), "molecule");
  for (const auto& x : m.modes) check(ms_molecule_add_mode(p->h, x.nu, x.gamma_vib, x.lambda), "molecule");
  return p;
}

ms_policy policy_of(const ExperimentConfig& cfg) { return ms_policy{cfg.policy.epsilon, cfg.policy.max_order}; }

ms_cavity cavity_of(const CavityConfig& c) { return ms_cavity{c.omega_c, c.kappa, c.g}; }

ms_drive drive_of(const DriveConfig& d) {
  return ms_drive{d.target == "cavity" ? MS_DRIVE_CAVITY : MS_DRIVE_MOLECULE, d.omega_l, d.eta};
}

ms_fret_params fret_of(const FretConfig& f) {
  ms_fret_params p{f.omega_dd, f.delta, 0, 0.0, 0.0, 0.0, 0.0};
  if (f.cavity) {
    p.has_cavity = 1;
    p.kappa = f.cavity->kappa;
    p.g_d = f.cavity->g_d;
    p.g_a = f.cavity->g_a;
    p.delta_c = f.cavity->delta_c;
  }
  return p;
}

void add_flags(RunOutput& out, const std::vector<std::string>& flags) {
  for (const auto& f : flags)
    if (std::find(out.flags.begin(), out.flags.end(), f) == out.flags.end()) out.flags.push_back(f);
}

void take_report(RunOutput& out, const ResultPtr& r) {
  out.retained_weight = r.scalar("retained_weight");
  out.max_order_used = static_cast<int>(r.scalar("max_order_used"));
  out.terms = r.scalar("terms");
  out.mode_orders.clear();
  for (double m : r.array("mode_orders")) out.mode_orders.push_back(static_cast<int>(m));
  add_flags(out, r.flags());
}

void scalar_row(RunOutput& out, const ResultPtr& r, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    const double v = r.scalar(n);
    out.columns.emplace_back(n, std::vector<double>{v});
  }
}

// Oracle runs inherit the layout and windowing overrides from [oracle].
struct OracleOptions {
  ms_oracle_options opt = ms_default_oracle_options();
  std::vector<int> dims;
  explicit OracleOptions(const std::optional<OracleConfig>& o) {
    if (!o) return;
    dims = o->vib_dims;
    opt.vib_dims = dims.empty() ? nullptr : dims.data();
    opt.n_vib_dims = dims.size();
    opt.cavity_dim = o->cavity_dim;
    opt.dt = o->dt;
    opt.tau_max = o->tau_max;
    opt.relaxation = o->relaxation == "bare" ? MS_RELAX_BARE : MS_RELAX_DISPLACED;
    opt.factorized = o->factorized ? 1 : 0;
  }
};

double p0_of(const ExperimentConfig& cfg) { return cfg.emission ? cfg.emission->p0 : 1.0; }

ms_drive transmission_drive(const ExperimentConfig& cfg) {
  return cfg.drive ? drive_of(*cfg.drive) : ms_drive{MS_DRIVE_CAVITY, 0.0, 0.01 * cfg.cavity->kappa};
}

void compare_spectra(RunOutput& out, const char* axis, const std::vector<double>& grid, const ResultPtr& analytic,
                     const ResultPtr& oracle) {
  take_report(out, analytic);
  add_flags(out, oracle.flags());
  const auto a = analytic.array("values");
  const auto o = oracle.array("values");
  out.columns = {{axis, grid}, {"analytic", a}, {"oracle", o}};
  double worst = 0.0;
  for (std::size_t i : find_peaks(o)) {
    const Peak p{grid[i], o[i], a[i], std::abs(a[i] - o[i]) / std::abs(o[i])};
    worst = std::max(worst, p.relative_error);
    out.peaks.push_back(p);
  }
  out.scalars.emplace_back("max_peak_relative_error", worst);
}

RunOutput oracle_compare(const ExperimentConfig& cfg) {
  RunOutput out;
  const std::string& what = cfg.oracle->compare;
  const auto grid = cfg.grid_points();
  const OracleOptions oo(cfg.oracle);
  const ms_policy pol = policy_of(cfg);
  ResultPtr a, o;
  if (what == "pump-probe") {
    auto d = make_molecule(*cfg.donor), ac = make_molecule(*cfg.acceptor);
    const ms_fret_params fp = fret_of(*cfg.fret);
    const double p = cfg.fret->p_d0;
    check(ms_pump_probe(d->h, ac->h, fp, p, grid.data(), grid.size(), pol, &a.r), "pump-probe");
    check(ms_oracle_pump_probe(d->h, ac->h, fp, p, grid.data(), grid.size(), &oo.opt, &o.r), "oracle pump-probe");
    take_report(out, a);
    const auto pd = a.array("P_D"), pa = a.array("P_A"), od = o.array("P_D"), oa = o.array("P_A");
    out.columns = {{"t", grid}, {"P_D", pd}, {"P_A", pa}, {"P_D_oracle", od}, {"P_A_oracle", oa}};
    auto rel = [](const std::vector<double>& x, const std::vector<double>& ref) {
      double dev = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        dev = std::max(dev, std::abs(x[i] - ref[i]));
        scale = std::max(scale, std::abs(ref[i]));
      }
      return scale > 0.0 ? dev / scale : dev;
    };
    out.scalars = {{"kappa_et", a.scalar("kappa_et")},
                   {"max_relative_error_P_D", rel(pd, od)},
                   {"max_relative_error_P_A", rel(pa, oa)}};
    return out;
  }
  auto m = make_molecule(*cfg.molecule);
  if (what == "absorption") {
    const ms_drive dr = drive_of(*cfg.drive);
    check(ms_absorption_population(m->h, dr, grid.data(), grid.size(), pol, &a.r), "absorption");
    check(ms_oracle_absorption(m->h, dr.eta, grid.data(), grid.size(), &oo.opt, &o.r), "oracle absorption");
    compare_spectra(out, "omega_l", grid, a, o);
  } else if (what == "emission-transient") {
    check(ms_emission_transient(m->h, p0_of(cfg), grid.data(), grid.size(), pol, &a.r), "emission-transient");
    check(ms_oracle_emission_transient(m->h, p0_of(cfg), grid.data(), grid.size(), &oo.opt, &o.r),
          "oracle emission-transient");
    compare_spectra(out, "omega", grid, a, o);
  } else if (what == "emission-steady") {
    const ms_drive dr = drive_of(*cfg.drive);
    check(ms_emission_steady(m->h, dr, grid.data(), grid.size(), pol, &a.r), "emission-steady");
    check(ms_oracle_emission_steady(m->h, dr, grid.data(), grid.size(), &oo.opt, &o.r), "oracle emission-steady");
    compare_spectra(out, "omega", grid, a, o);
    out.scalars.emplace_back("coherent_intensity", a.scalar("coherent_intensity"));
    out.scalars.emplace_back("coherent_intensity_oracle", o.scalar("coherent_intensity"));
  } else {
    const ms_cavity cav = cavity_of(*cfg.cavity);
    check(ms_cavity_transmission(m->h, cav, transmission_drive(cfg), grid.data(), grid.size(), pol, &a.r),
          "cavity-transmission");
    check(ms_oracle_transmission(m->h, cav, grid.data(), grid.size(), &oo.opt, &o.r), "oracle cavity-transmission");
    compare_spectra(out, "omega_l", grid, a, o);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> find_peaks(const std::vector<double>& v, double floor) {
  std::vector<std::size_t> idx;
  if (v.size() < 3) return idx;
  const double top = *std::max_element(v.begin(), v.end());
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > floor * top) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

RunOutput run_experiment(const ExperimentConfig& cfg) {
  RunOutput out;
  const auto grid = cfg.grid_points();
  const ms_policy pol = policy_of(cfg);
  ResultPtr r;
  switch (cfg.kind) {
    case Kind::Absorption: {
      auto m = make_molecule(*cfg.molecule);
      check(ms_absorption_population(m->h, drive_of(*cfg.drive), grid.data(), grid.size(), pol, &r.r), "absorption");
      out.columns = {{"omega_l", grid}, {"population", r.array("values")}};
      break;
    }
    case Kind::EmissionTransient: {
      auto m = make_molecule(*cfg.molecule);
      check(ms_emission_transient(m->h, p0_of(cfg), grid.data(), grid.size(), pol, &r.r), "emission-transient");
      out.columns = {{"omega", grid}, {"intensity", r.array("values")}};
      break;
    }
    case Kind::EmissionSteady: {
      auto m = make_molecule(*cfg.molecule);
      check(ms_emission_steady(m->h, drive_of(*cfg.drive), grid.data(), grid.size(), pol, &r.r), "emission-steady");
      out.columns = {{"omega", grid}, {"intensity", r.array("values")}};
      out.scalars = {{"coherent_intensity", r.scalar("coherent_intensity")},
                     {"excited_population", r.scalar("excited_population")}};
      break;
    }
    case Kind::CavityTransmission: {
      auto m = make_molecule(*cfg.molecule);
      check(ms_cavity_transmission(m->h, cavity_of(*cfg.cavity), drive_of(*cfg.drive), grid.data(), grid.size(), pol,
                                   &r.r),
            "cavity-transmission");
      out.columns = {{"omega_l", grid},
                     {"transmission", r.array("values")},
                     {"t_real", r.array("real")},
                     {"t_imag", r.array("imag")}};
      break;
    }
    case Kind::PolaritonRates: {
      auto m = make_molecule(*cfg.molecule);
      check(ms_polariton_rates(m->h, cavity_of(*cfg.cavity), &r.r), "polariton-rates");
      scalar_row(out, r, {"omega_plus", "omega_minus", "gamma_plus", "gamma_minus", "kappa_ul", "upper_half_width",
                          "exceptional"});
      add_flags(out, r.flags());
      return out;
    }
    case Kind::Branching: {
      auto m = make_molecule(*cfg.molecule);
      const ms_cavity cav = cfg.cavity ? cavity_of(*cfg.cavity) : ms_cavity{};
      check(ms_branching(m->h, cfg.cavity ? &cav : nullptr, &r.r), "branching");
      if (cfg.cavity)
        scalar_row(out, r, {"alpha", "alpha_cav", "c00", "g00"});
      else
        scalar_row(out, r, {"alpha"});
      add_flags(out, r.flags());
      return out;
    }
    case Kind::FretDirect: {
      auto d = make_molecule(*cfg.donor), a = make_molecule(*cfg.acceptor);
      check(ms_fret_rate_direct(d->h, a->h, fret_of(*cfg.fret), pol, &r.r), "fret-direct");
      scalar_row(out, r, {"kappa_et"});
      break;
    }
    case Kind::FretCavity: {
      auto d = make_molecule(*cfg.donor), a = make_molecule(*cfg.acceptor);
      static const char* names[] = {"kappa_et", "j_cavity_dd", "j_cavity_pure_gamma", "j_cavity_pure_kappa",
                                    "j_cavity_pure"};
      ms_fret_params p = fret_of(*cfg.fret);
      const std::vector<double> scan = cfg.grid ? grid : std::vector<double>{p.delta_c};
      std::vector<std::vector<double>> cols(5);
      for (double dc : scan) {
        p.delta_c = dc;
        ResultPtr x;
        check(ms_fret_rate_cavity(d->h, a->h, p, pol, &x.r), "fret-cavity at delta_c = " + format_double(dc));
        for (int k = 0; k < 5; ++k) cols[k].push_back(x.scalar(names[k]));
        take_report(out, x);
      }
      out.columns.emplace_back("delta_c", scan);
      for (int k = 0; k < 5; ++k) out.columns.emplace_back(names[k], std::move(cols[k]));
      return out;
    }
    case Kind::PumpProbe: {
      auto d = make_molecule(*cfg.donor), a = make_molecule(*cfg.acceptor);
      check(ms_pump_probe(d->h, a->h, fret_of(*cfg.fret), cfg.fret->p_d0, grid.data(), grid.size(), pol, &r.r),
            "pump-probe");
      for (const char* n : {"t", "P_D", "P_A", "P_D_uncoupled", "P_A_tangent"}) out.columns.emplace_back(n, r.array(n));
      out.scalars = {{"kappa_et", r.scalar("kappa_et")}};
      break;
    }
    case Kind::OracleCompare:
      return oracle_compare(cfg);
  }
  take_report(out, r);
  return out;
}

}  // namespace molspec::cli
