#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace molspec::cli {

enum class Kind {
  Absorption,
  EmissionTransient,
  EmissionSteady,
  CavityTransmission,
  PolaritonRates,
  Branching,
  FretDirect,
  FretCavity,
  PumpProbe,
  OracleCompare,
};

// Subcommand spelling, e.g. "cavity-transmission".
const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);
const std::vector<Kind>& all_kinds();

struct ModeConfig {
  double nu = 0.0;
  double gamma_vib = 0.0;
  double lambda = 0.0;
  bool operator==(const ModeConfig&) const = default;
};

struct MoleculeConfig {
  double omega_e = 0.0;
  double gamma = 1.0;
  std::vector<ModeConfig> modes;
  bool operator==(const MoleculeConfig&) const = default;
};

struct CavityConfig {
  double omega_c = 0.0;
  double kappa = 0.0;
  double g = 0.0;
  bool operator==(const CavityConfig&) const = default;
};

struct DriveConfig {
  std::string target;  // "molecule" or "cavity"
  double omega_l = 0.0;
  double eta = 0.0;
  bool operator==(const DriveConfig&) const = default;
};

struct EmissionConfig {
  double p0 = 1.0;
  bool operator==(const EmissionConfig&) const = default;
};

struct FretCavityConfig {
  double kappa = 0.0;
  double g_d = 0.0;
  double g_a = 0.0;
  double delta_c = 0.0;
  bool operator==(const FretCavityConfig&) const = default;
};

struct FretConfig {
  double omega_dd = 0.0;
  double delta = 0.0;
  double p_d0 = 1.0;
  std::optional<FretCavityConfig> cavity;
  bool operator==(const FretConfig&) const = default;
};

struct GridConfig {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  bool operator==(const GridConfig&) const = default;
};

struct PolicyConfig {
  double epsilon = 1e-10;
  int max_order = 200;
  bool operator==(const PolicyConfig&) const = default;
};

// Overrides for the reference solver. Empty vib_dims and zero scalars keep the defaults.
struct OracleConfig {
  std::string compare;  // experiment compared by OracleCompare
  std::vector<int> vib_dims;
  int cavity_dim = 0;
  double dt = 0.0;
  double tau_max = 0.0;
  std::string relaxation = "displaced";
  bool factorized = true;
  bool operator==(const OracleConfig&) const = default;
};

struct OutputConfig {
  std::string path;  // empty for standard output
  std::string format = "csv";
  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  Kind kind = Kind::Absorption;
  std::string reference_rate = "gamma";
  std::optional<MoleculeConfig> molecule, donor, acceptor;
  std::optional<CavityConfig> cavity;
  std::optional<DriveConfig> drive;
  std::optional<EmissionConfig> emission;
  std::optional<FretConfig> fret;
  std::optional<GridConfig> grid;
  PolicyConfig policy;
  std::optional<OracleConfig> oracle;
  OutputConfig output;
  bool operator==(const ExperimentConfig&) const = default;

  std::vector<double> grid_points() const;
};

struct ConfigIssue {
  int line = 0;  // 0 when the issue is not tied to a line
  std::string field;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

// Parses and validates a config; throws ConfigError listing every problem found.
// A kind given by the caller (the subcommand) must agree with the file's `kind`, if any.
ExperimentConfig parse_config(const std::string& text, std::optional<Kind> kind = std::nullopt);
ExperimentConfig load_config(const std::string& path, std::optional<Kind> kind = std::nullopt);

std::string serialize_config(const ExperimentConfig& cfg);

// Shortest decimal that reads back to the same double; -0 prints as 0.
std::string format_double(double x);

}  // namespace molspec::cli
