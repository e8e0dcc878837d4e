#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "config.hpp"
#include "format.hpp"
#include "runner.hpp"

using namespace molspec::cli;

namespace {

enum Exit { kOk = 0, kIo = 1, kConfig = 2, kNumerical = 3, kTruncation = 4 };

int exit_code(ms_status s) {
  switch (s) {
    case MS_ERR_INVALID_ARGUMENT:
    case MS_ERR_UNSUPPORTED:
    case MS_ERR_LAYOUT:
      return kConfig;
    case MS_ERR_TRUNCATION:
      return kTruncation;
    default:
      return kNumerical;
  }
}

struct Options {
  std::string config, output, format;
  unsigned jobs = 0;
  double epsilon = -1.0;
};

int run(Kind kind, const Options& opt) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opt.config, kind);
  } catch (const ConfigError& e) {
    std::cerr << "molspec: config error in " << opt.config << "\n" << e.what() << "\n";
    return kConfig;
  }
  if (opt.epsilon >= 0.0) cfg.policy.epsilon = opt.epsilon;
  if (!opt.format.empty()) cfg.output.format = opt.format;
  if (!opt.output.empty()) cfg.output.path = opt.output;
  if (opt.jobs > 0) ms_set_max_jobs(opt.jobs);

  RunOutput out;
  try {
    out = run_experiment(cfg);
  } catch (const RunError& e) {
    std::cerr << "molspec: " << ms_status_name(e.status()) << ": " << e.what() << "\n";
    return exit_code(e.status());
  }
  const std::string text = cfg.output.format == "json" ? to_json(cfg, out) : to_csv(cfg, out);
  if (cfg.output.path.empty() || cfg.output.path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(cfg.output.path, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "molspec: cannot write " << cfg.output.path << "\n";
    return kIo;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vibronic spectra, polariton transmission and resonance energy transfer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ms_version());
  Options opt;
  Kind chosen = Kind::Absorption;
  for (Kind k : all_kinds()) {
    CLI::App* sub = app.add_subcommand(kind_name(k), std::string("run a ") + kind_name(k) + " experiment");
    sub->add_option("--config", opt.config, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output, "output file; standard output when omitted");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", opt.jobs, "cap on worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", opt.epsilon, "series truncation tolerance")->check(CLI::Range(0.0, 1.0));
    sub->callback([&chosen, k] { chosen = k; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  return run(chosen, opt);
}
