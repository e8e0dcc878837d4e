#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "molspec/molspec.h"

namespace molspec::cli {

namespace {

struct KindInfo {
  Kind kind;
  const char* name;
  const char* camel;
};

constexpr std::array<KindInfo, 10> kKinds = {{
    {Kind::Absorption, "absorption", "Absorption"},
    {Kind::EmissionTransient, "emission-transient", "EmissionTransient"},
    {Kind::EmissionSteady, "emission-steady", "EmissionSteady"},
    {Kind::CavityTransmission, "cavity-transmission", "CavityTransmission"},
    {Kind::PolaritonRates, "polariton-rates", "PolaritonRates"},
    {Kind::Branching, "branching", "Branching"},
    {Kind::FretDirect, "fret-direct", "FretDirect"},
    {Kind::FretCavity, "fret-cavity", "FretCavity"},
    {Kind::PumpProbe, "pump-probe", "PumpProbe"},
    {Kind::OracleCompare, "oracle-compare", "OracleCompare"},
}};

// Experiments the oracle can reproduce, by subcommand spelling.
const std::set<std::string> kComparable = {"absorption", "emission-transient", "emission-steady",
                                           "cavity-transmission", "pump-probe"};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"", {"kind", "reference_rate"}},
    {"molecule", {"omega_e", "gamma"}},
    {"donor", {"omega_e", "gamma"}},
    {"acceptor", {"omega_e", "gamma"}},
    {"molecule.modes", {"nu", "gamma_vib", "lambda"}},
    {"donor.modes", {"nu", "gamma_vib", "lambda"}},
    {"acceptor.modes", {"nu", "gamma_vib", "lambda"}},
    {"cavity", {"omega_c", "kappa", "g"}},
    {"drive", {"target", "omega_l", "eta"}},
    {"emission", {"p0"}},
    {"fret", {"omega_dd", "delta", "p_d0"}},
    {"fret.cavity", {"kappa", "g_d", "g_a", "delta_c"}},
    {"grid", {"start", "stop", "points"}},
    {"policy", {"epsilon", "max_order"}},
    {"oracle", {"compare", "vib_dims", "cavity_dim", "dt", "tau_max", "relaxation", "factorized"}},
    {"output", {"path", "format"}},
};

bool repeatable(const std::string& s) { return s.size() > 6 && s.compare(s.size() - 6, 6, ".modes") == 0; }

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> keys;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Builder {
 public:
  std::vector<ConfigIssue> issues;

  void issue(int line, std::string field, std::string message) {
    issues.push_back({line, std::move(field), std::move(message)});
  }

  // Reads `key` from the section; absent optional keys leave `out` untouched.
  bool number(const Section& s, const std::string& key, double& out, bool required) {
    auto it = s.keys.find(key);
    if (it == s.keys.end()) {
      if (required) issue(s.line, field(s, key), "missing required field");
      return false;
    }
    const std::string& v = it->second.value;
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
      issue(it->second.line, field(s, key), "expected a finite number, got '" + v + "'");
      return false;
    }
    out = x;
    return true;
  }

  bool integer(const Section& s, const std::string& key, int& out, bool required) {
    auto it = s.keys.find(key);
    if (it == s.keys.end()) {
      if (required) issue(s.line, field(s, key), "missing required field");
      return false;
    }
    const std::string& v = it->second.value;
    int x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
      issue(it->second.line, field(s, key), "expected an integer, got '" + v + "'");
      return false;
    }
    out = x;
    return true;
  }

  bool text(const Section& s, const std::string& key, std::string& out, bool required) {
    auto it = s.keys.find(key);
    if (it == s.keys.end()) {
      if (required) issue(s.line, field(s, key), "missing required field");
      return false;
    }
    out = it->second.value;
    return true;
  }

  static std::string field(const Section& s, const std::string& key) {
    return s.name.empty() ? key : s.name + "." + key;
  }

  static int line_of(const Section& s, const std::string& key) {
    auto it = s.keys.find(key);
    return it == s.keys.end() ? s.line : it->second.line;
  }
};

struct Parsed {
  std::vector<Section> sections;
  const Section* find(const std::string& name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  std::vector<const Section*> all(const std::string& name) const {
    std::vector<const Section*> out;
    for (const auto& s : sections)
      if (s.name == name) out.push_back(&s);
    return out;
  }
};

Parsed tokenize(const std::string& text, Builder& b) {
  Parsed p;
  p.sections.push_back(Section{"", 1, {}});
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        b.issue(line, "", "malformed section header '" + s + "'");
        continue;
      }
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!kKeys.count(name) || name.empty()) {
        b.issue(line, name, "unknown section [" + name + "]");
        p.sections.push_back(Section{"?" + name, line, {}});
        continue;
      }
      if (!repeatable(name) && !seen.insert(name).second) b.issue(line, name, "duplicate section [" + name + "]");
      p.sections.push_back(Section{name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      b.issue(line, "", "expected 'key = value', got '" + s + "'");
      continue;
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    Section& sec = p.sections.back();
    if (!sec.name.empty() && sec.name.front() == '?') continue;
    const auto& allowed = kKeys.at(sec.name);
    if (!allowed.count(key)) {
      b.issue(line, Builder::field(sec, key), "unknown key '" + key + "'" +
                                                  (sec.name.empty() ? "" : " in [" + sec.name + "]"));
      continue;
    }
    if (sec.keys.count(key)) {
      b.issue(line, Builder::field(sec, key), "duplicate key");
      continue;
    }
    sec.keys[key] = Entry{value, line};
  }
  return p;
}

// Sections an experiment needs and may take, besides [policy] and [output].
struct Shape {
  std::set<std::string> required, optional;
};

Shape shape_of(Kind k, const std::string& compare) {
  switch (k) {
    case Kind::Absorption: return {{"molecule", "drive", "grid"}, {}};
    case Kind::EmissionTransient: return {{"molecule", "grid"}, {"emission"}};
    case Kind::EmissionSteady: return {{"molecule", "drive", "grid"}, {}};
    case Kind::CavityTransmission: return {{"molecule", "cavity", "drive", "grid"}, {}};
    case Kind::PolaritonRates: return {{"molecule", "cavity"}, {}};
    case Kind::Branching: return {{"molecule"}, {"cavity"}};
    case Kind::FretDirect: return {{"donor", "acceptor", "fret"}, {}};
    case Kind::FretCavity: return {{"donor", "acceptor", "fret", "fret.cavity"}, {"grid"}};
    case Kind::PumpProbe: return {{"donor", "acceptor", "fret", "grid"}, {}};
    case Kind::OracleCompare: {
      Shape s;
      if (compare == "cavity-transmission")
        s = {{"molecule", "cavity", "grid"}, {"drive"}};
      else if (auto inner = kind_from_name(compare); inner && kComparable.count(compare))
        s = shape_of(*inner, "");
      s.required.insert("oracle");
      return s;
    }
  }
  return {};
}

struct Validation {
  ms_result* r = nullptr;
  ~Validation() { ms_result_destroy(r); }
};

// Reports error-severity violations from a C API validation result. Field
// paths are mapped back to config keys by their last component.
void report(Builder& b, const Section& s, ms_status st, const Validation& v, const std::vector<std::string>& skip = {}) {
  ms_result* r = v.r;
  if (st != MS_OK) {
    b.issue(s.line, s.name, ms_last_error());
    return;
  }
  const double* sev = nullptr;
  size_t n = 0;
  ms_result_array(r, "severity", &sev, &n);
  for (size_t i = 0; i < ms_result_flag_count(r) && i < n; ++i) {
    if (sev[i] != 1.0) continue;
    const std::string flag = ms_result_flag(r, i);
    const std::string path = flag.substr(0, flag.find(':'));
    if (std::any_of(skip.begin(), skip.end(), [&](const std::string& pre) { return path.rfind(pre, 0) == 0; }))
      continue;
    std::string key = path.substr(path.rfind('.') + 1);
    if (key == "gamma_rad") key = "gamma";
    b.issue(Builder::line_of(s, key), path, flag.substr(flag.find(':') + 2));
  }
}

struct MoleculeHandle {
  ms_molecule* h = nullptr;
  explicit MoleculeHandle(const MoleculeConfig& m) {
    if (ms_molecule_create(m.omega_e, m.gamma, &h) != MS_OK) return;
    for (const auto& x : m.modes) ms_molecule_add_mode(h, x.nu, x.gamma_vib, x.lambda);
  }
  ~MoleculeHandle() { ms_molecule_destroy(h); }
};

std::optional<MoleculeConfig> read_molecule(Builder& b, const Parsed& p, const std::string& name) {
  const Section* s = p.find(name);
  const auto modes = p.all(name + ".modes");
  if (!s && modes.empty()) return std::nullopt;
  MoleculeConfig m;
  if (s) {
    b.number(*s, "omega_e", m.omega_e, false);
    b.number(*s, "gamma", m.gamma, false);
  }
  for (const Section* ms : modes) {
    ModeConfig mode;
    const bool ok = b.number(*ms, "nu", mode.nu, true) & b.number(*ms, "gamma_vib", mode.gamma_vib, true) &
                    b.number(*ms, "lambda", mode.lambda, true);
    m.modes.push_back(mode);
    if (!ok) continue;
    Validation v;
    report(b, *ms, ms_mode_validate(mode.nu, mode.gamma_vib, mode.lambda, &v.r), v);
  }
  const Section fallback{name, modes.empty() ? 0 : modes.front()->line, {}};
  Validation v;
  MoleculeHandle h(m);
  report(b, s ? *s : fallback, ms_molecule_validate(h.h, &v.r), v, {"MoleculeSpec.modes["});
  return m;
}

}  // namespace

const char* kind_name(Kind k) {
  for (const auto& x : kKinds)
    if (x.kind == k) return x.name;
  return "?";
}

std::optional<Kind> kind_from_name(const std::string& name) {
  for (const auto& x : kKinds)
    if (name == x.name || name == x.camel) return x.kind;
  return std::nullopt;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> v = [] {
    std::vector<Kind> out;
    for (const auto& x : kKinds) out.push_back(x.kind);
    return out;
  }();
  return v;
}

std::vector<double> ExperimentConfig::grid_points() const {
  std::vector<double> g;
  if (!grid) return g;
  const int n = grid->points;
  for (int i = 0; i < n; ++i)
    g.push_back(i == n - 1 ? grid->stop : grid->start + (grid->stop - grid->start) * i / (n - 1));
  return g;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string msg;
        for (const auto& i : issues) {
          if (!msg.empty()) msg += "\n";
          if (i.line > 0) msg += "line " + std::to_string(i.line) + ": ";
          if (!i.field.empty()) msg += i.field + ": ";
          msg += i.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

ExperimentConfig parse_config(const std::string& text, std::optional<Kind> kind) {
  Builder b;
  const Parsed p = tokenize(text, b);
  const Section& top = p.sections.front();
  ExperimentConfig cfg;

  std::string kind_text;
  if (b.text(top, "kind", kind_text, !kind)) {
    const auto k = kind_from_name(kind_text);
    if (!k)
      b.issue(Builder::line_of(top, "kind"), "kind", "unknown experiment kind '" + kind_text + "'");
    else if (kind && *k != *kind)
      b.issue(Builder::line_of(top, "kind"), "kind",
              std::string("config is for '") + kind_name(*k) + "' but the subcommand is '" + kind_name(*kind) + "'");
    else
      cfg.kind = *k;
  }
  if (kind) cfg.kind = *kind;
  b.text(top, "reference_rate", cfg.reference_rate, false);

  if (const Section* s = p.find("oracle")) {
    OracleConfig o;
    b.text(*s, "compare", o.compare, cfg.kind == Kind::OracleCompare);
    if (!o.compare.empty() && !kComparable.count(o.compare))
      b.issue(Builder::line_of(*s, "compare"), "oracle.compare",
              "must be one of absorption, emission-transient, emission-steady, cavity-transmission, pump-probe");
    std::string dims;
    if (b.text(*s, "vib_dims", dims, false)) {
      std::stringstream ss(dims);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        int d = 0;
        const auto r = std::from_chars(item.data(), item.data() + item.size(), d);
        if (r.ec != std::errc() || r.ptr != item.data() + item.size() || d < 2) {
          b.issue(Builder::line_of(*s, "vib_dims"), "oracle.vib_dims",
                  "expected a comma-separated list of Fock sizes >= 2");
          break;
        }
        o.vib_dims.push_back(d);
      }
    }
    if (b.integer(*s, "cavity_dim", o.cavity_dim, false) && o.cavity_dim < 2)
      b.issue(Builder::line_of(*s, "cavity_dim"), "oracle.cavity_dim", "must be >= 2");
    if (b.number(*s, "dt", o.dt, false) && !(o.dt > 0.0))
      b.issue(Builder::line_of(*s, "dt"), "oracle.dt", "must be positive");
    if (b.number(*s, "tau_max", o.tau_max, false) && !(o.tau_max > 0.0))
      b.issue(Builder::line_of(*s, "tau_max"), "oracle.tau_max", "must be positive");
    if (b.text(*s, "relaxation", o.relaxation, false) && o.relaxation != "displaced" && o.relaxation != "bare")
      b.issue(Builder::line_of(*s, "relaxation"), "oracle.relaxation", "must be 'displaced' or 'bare'");
    std::string fac;
    if (b.text(*s, "factorized", fac, false)) {
      if (fac == "true")
        o.factorized = true;
      else if (fac == "false")
        o.factorized = false;
      else
        b.issue(Builder::line_of(*s, "factorized"), "oracle.factorized", "must be 'true' or 'false'");
    }
    cfg.oracle = o;
  }

  const std::string compare = cfg.oracle ? cfg.oracle->compare : "";
  const Shape shape = shape_of(cfg.kind, compare);
  const std::string who = cfg.kind == Kind::OracleCompare && !compare.empty()
                              ? std::string("oracle-compare of ") + compare
                              : kind_name(cfg.kind);
  auto present = [&](const std::string& name) {
    return p.find(name) != nullptr || (name == "molecule" || name == "donor" || name == "acceptor"
                                           ? !p.all(name + ".modes").empty()
                                           : false);
  };
  for (const auto& name : shape.required)
    if (!present(name)) b.issue(0, name, "missing section [" + name + "] required by " + who);
  for (const auto& s : p.sections) {
    if (s.name.empty() || s.name.front() == '?' || s.name == "policy" || s.name == "output") continue;
    const std::string base = repeatable(s.name) ? s.name.substr(0, s.name.size() - 6) : s.name;
    if (!shape.required.count(base) && !shape.optional.count(base))
      b.issue(s.line, s.name, "section [" + s.name + "] is not used by " + who);
  }

  cfg.molecule = read_molecule(b, p, "molecule");
  cfg.donor = read_molecule(b, p, "donor");
  cfg.acceptor = read_molecule(b, p, "acceptor");

  if (const Section* s = p.find("cavity")) {
    CavityConfig c;
    const bool ok =
        b.number(*s, "omega_c", c.omega_c, true) & b.number(*s, "kappa", c.kappa, true) & b.number(*s, "g", c.g, true);
    if (ok) {
      Validation v;
      report(b, *s, ms_cavity_validate(ms_cavity{c.omega_c, c.kappa, c.g}, &v.r), v);
    }
    cfg.cavity = c;
  }

  if (const Section* s = p.find("drive")) {
    DriveConfig d;
    const bool to_cavity =
        cfg.kind == Kind::CavityTransmission || (cfg.kind == Kind::OracleCompare && compare == "cavity-transmission");
    d.target = to_cavity ? "cavity" : "molecule";
    b.text(*s, "target", d.target, false);
    b.number(*s, "omega_l", d.omega_l, cfg.kind == Kind::EmissionSteady || compare == "emission-steady");
    const bool has_eta = b.number(*s, "eta", d.eta, true);
    if (d.target != "molecule" && d.target != "cavity")
      b.issue(Builder::line_of(*s, "target"), "drive.target", "must be 'molecule' or 'cavity'");
    else if ((d.target == "cavity") != to_cavity)
      b.issue(Builder::line_of(*s, "target"), "drive.target", std::string("must be '") +
                                                                    (to_cavity ? "cavity" : "molecule") + "' for " +
                                                                    who);
    else if (has_eta) {
      const double width = to_cavity ? (cfg.cavity ? cfg.cavity->kappa : 1.0)
                                     : (cfg.molecule ? cfg.molecule->gamma : 1.0);
      Validation v;
      const ms_drive drive{to_cavity ? MS_DRIVE_CAVITY : MS_DRIVE_MOLECULE, d.omega_l, d.eta};
      report(b, *s, ms_drive_validate(drive, width, &v.r), v);
    }
    cfg.drive = d;
  }

  if (const Section* s = p.find("emission")) {
    EmissionConfig e;
    if (b.number(*s, "p0", e.p0, false) && !(e.p0 >= 0.0 && e.p0 <= 1.0))
      b.issue(Builder::line_of(*s, "p0"), "emission.p0", "must lie in [0, 1]");
    cfg.emission = e;
  }

  const Section* fs = p.find("fret");
  const Section* fcs = p.find("fret.cavity");
  if (fs) {
    FretConfig f;
    const bool ok = b.number(*fs, "omega_dd", f.omega_dd, true) & b.number(*fs, "delta", f.delta, true);
    if (b.number(*fs, "p_d0", f.p_d0, false) && !(f.p_d0 >= 0.0 && f.p_d0 <= 1.0))
      b.issue(Builder::line_of(*fs, "p_d0"), "fret.p_d0", "must lie in [0, 1]");
    if (fcs) {
      FretCavityConfig c;
      b.number(*fcs, "kappa", c.kappa, true);
      b.number(*fcs, "g_d", c.g_d, true);
      b.number(*fcs, "g_a", c.g_a, true);
      b.number(*fcs, "delta_c", c.delta_c, true);
      f.cavity = c;
    }
    if (ok && cfg.donor && cfg.acceptor) {
      MoleculeHandle d(*cfg.donor), a(*cfg.acceptor);
      ms_fret_params params{f.omega_dd, f.delta, f.cavity ? 1 : 0, 0.0, 0.0, 0.0, 0.0};
      if (f.cavity) {
        params.kappa = f.cavity->kappa;
        params.g_d = f.cavity->g_d;
        params.g_a = f.cavity->g_a;
        params.delta_c = f.cavity->delta_c;
      }
      // Donor and acceptor were already checked as molecules.
      Validation v;
      report(b, *fs, ms_fret_validate(d.h, a.h, params, &v.r), v, {"FretSpec.donor", "FretSpec.acceptor"});
    }
    cfg.fret = f;
  } else if (fcs) {
    b.issue(fcs->line, "fret.cavity", "[fret.cavity] requires a [fret] section");
  }

  if (const Section* s = p.find("grid")) {
    GridConfig g;
    const bool ok = b.number(*s, "start", g.start, true) & b.number(*s, "stop", g.stop, true) &
                    b.integer(*s, "points", g.points, true);
    if (ok) {
      if (g.points < 2) b.issue(Builder::line_of(*s, "points"), "grid.points", "must be >= 2");
      if (!(g.start < g.stop)) b.issue(Builder::line_of(*s, "stop"), "grid.stop", "must exceed grid.start");
    }
    cfg.grid = g;
  }

  if (const Section* s = p.find("policy")) {
    if (b.number(*s, "epsilon", cfg.policy.epsilon, false) && !(cfg.policy.epsilon >= 0.0 && cfg.policy.epsilon < 1.0))
      b.issue(Builder::line_of(*s, "epsilon"), "policy.epsilon", "must lie in [0, 1)");
    if (b.integer(*s, "max_order", cfg.policy.max_order, false) && cfg.policy.max_order < 0)
      b.issue(Builder::line_of(*s, "max_order"), "policy.max_order", "must be >= 0");
  }

  if (const Section* s = p.find("output")) {
    b.text(*s, "path", cfg.output.path, false);
    if (b.text(*s, "format", cfg.output.format, false) && cfg.output.format != "csv" && cfg.output.format != "json")
      b.issue(Builder::line_of(*s, "format"), "output.format", "must be 'csv' or 'json'");
  }

  if (cfg.oracle && !cfg.oracle->vib_dims.empty()) {
    std::size_t modes = 0;
    for (const auto* m : {&cfg.molecule, &cfg.donor, &cfg.acceptor})
      if (*m) modes += (*m)->modes.size();
    if (cfg.oracle->vib_dims.size() != modes)
      b.issue(Builder::line_of(*p.find("oracle"), "vib_dims"), "oracle.vib_dims",
              "lists " + std::to_string(cfg.oracle->vib_dims.size()) + " Fock sizes for " + std::to_string(modes) +
                  " vibrational modes");
  }

  if (!b.issues.empty()) throw ConfigError(b.issues);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, std::optional<Kind> kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({{0, "", "cannot read config file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), kind);
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
  return std::string(buf, r.ptr);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream o;
  auto num = [&](const char* key, double v) { o << key << " = " << format_double(v) << "\n"; };
  o << "kind = " << kind_name(cfg.kind) << "\n";
  o << "reference_rate = " << cfg.reference_rate << "\n";
  auto molecule = [&](const std::string& name, const std::optional<MoleculeConfig>& m) {
    if (!m) return;
    o << "\n[" << name << "]\n";
    num("omega_e", m->omega_e);
    num("gamma", m->gamma);
    for (const auto& mode : m->modes) {
      o << "\n[" << name << ".modes]\n";
      num("nu", mode.nu);
      num("gamma_vib", mode.gamma_vib);
      num("lambda", mode.lambda);
    }
  };
  molecule("molecule", cfg.molecule);
  molecule("donor", cfg.donor);
  molecule("acceptor", cfg.acceptor);
  if (cfg.cavity) {
    o << "\n[cavity]\n";
    num("omega_c", cfg.cavity->omega_c);
    num("kappa", cfg.cavity->kappa);
    num("g", cfg.cavity->g);
  }
  if (cfg.drive) {
    o << "\n[drive]\ntarget = " << cfg.drive->target << "\n";
    num("omega_l", cfg.drive->omega_l);
    num("eta", cfg.drive->eta);
  }
  if (cfg.emission) {
    o << "\n[emission]\n";
    num("p0", cfg.emission->p0);
  }
  if (cfg.fret) {
    o << "\n[fret]\n";
    num("omega_dd", cfg.fret->omega_dd);
    num("delta", cfg.fret->delta);
    num("p_d0", cfg.fret->p_d0);
    if (cfg.fret->cavity) {
      o << "\n[fret.cavity]\n";
      num("kappa", cfg.fret->cavity->kappa);
      num("g_d", cfg.fret->cavity->g_d);
      num("g_a", cfg.fret->cavity->g_a);
      num("delta_c", cfg.fret->cavity->delta_c);
    }
  }
  if (cfg.grid) {
    o << "\n[grid]\n";
    num("start", cfg.grid->start);
    num("stop", cfg.grid->stop);
    o << "points = " << cfg.grid->points << "\n";
  }
  o << "\n[policy]\n";
  num("epsilon", cfg.policy.epsilon);
  o << "max_order = " << cfg.policy.max_order << "\n";
  if (cfg.oracle) {
    const auto& x = *cfg.oracle;
    o << "\n[oracle]\n";
    if (!x.compare.empty()) o << "compare = " << x.compare << "\n";
    if (!x.vib_dims.empty()) {
      o << "vib_dims = ";
      for (std::size_t i = 0; i < x.vib_dims.size(); ++i) o << (i ? ", " : "") << x.vib_dims[i];
      o << "\n";
    }
    if (x.cavity_dim > 0) o << "cavity_dim = " << x.cavity_dim << "\n";
    if (x.dt > 0.0) num("dt", x.dt);
    if (x.tau_max > 0.0) num("tau_max", x.tau_max);
    o << "relaxation = " << x.relaxation << "\n";
    o << "factorized = " << (x.factorized ? "true" : "false") << "\n";
  }
  o << "\n[output]\n";
  if (!cfg.output.path.empty()) o << "path = " << cfg.output.path << "\n";
  o << "format = " << cfg.output.format << "\n";
  return o.str();
}

}  // namespace molspec::cli
