#include "format.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "molspec/molspec.h"

namespace molspec::cli {

namespace {

using json = nlohmann::ordered_json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string to_csv(const ExperimentConfig& cfg, const RunOutput& out) {
  std::ostringstream o;
  o << "# molspec " << ms_version() << " " << kind_name(cfg.kind) << "\n";
  o << "# retained_weight " << format_double(out.retained_weight) << "\n";
  for (const auto& [name, v] : out.scalars) o << "# " << name << " " << format_double(v) << "\n";
  for (const auto& f : out.flags) o << "# flag " << f << "\n";
  for (std::size_t c = 0; c < out.columns.size(); ++c) o << (c ? "," : "") << out.columns[c].first;
  o << "\n";
  const std::size_t rows = out.columns.empty() ? 0 : out.columns.front().second.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < out.columns.size(); ++c) o << (c ? "," : "") << format_double(out.columns[c].second[i]);
    o << "\n";
  }
  return o.str();
}

std::string to_json(const ExperimentConfig& cfg, const RunOutput& out) {
  json j;
  j["kind"] = kind_name(cfg.kind);
  j["reference_rate"] = cfg.reference_rate;
  json cols = json::object();
  for (const auto& [name, v] : out.columns) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    cols[name] = std::move(a);
  }
  j["columns"] = std::move(cols);
  json sc = json::object();
  for (const auto& [name, v] : out.scalars) sc[name] = number(v);
  j["scalars"] = std::move(sc);
  if (cfg.kind == Kind::OracleCompare && cfg.oracle && cfg.oracle->compare != "pump-probe") {
    json peaks = json::array();
    for (const auto& p : out.peaks)
      peaks.push_back({{"position", number(p.position)},
                       {"oracle", number(p.oracle)},
                       {"analytic", number(p.analytic)},
                       {"relative_error", number(p.relative_error)}});
    j["peaks"] = std::move(peaks);
  }
  j["truncation_report"] = {{"retained_weight", number(out.retained_weight)},
                            {"max_order_used", out.max_order_used},
                            {"terms", number(out.terms)},
                            {"mode_orders", out.mode_orders}};
  j["flags"] = out.flags;
  // The output path is left out so that the bytes do not depend on where they land.
  ExperimentConfig echo = cfg;
  echo.output.path.clear();
  j["provenance"] = {{"molspec_version", ms_version()}, {"config", serialize_config(echo)}};
  return j.dump(2) + "\n";
}

}  // namespace molspec::cli
