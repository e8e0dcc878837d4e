#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "molspec/molspec.h"

namespace molspec::cli {

struct Peak {
  double position = 0.0;
  double oracle = 0.0;
  double analytic = 0.0;
  double relative_error = 0.0;
};

struct RunOutput {
  // CSV columns in order; scalar-only experiments use length-one columns.
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> flags;
  double retained_weight = 1.0;
  int max_order_used = 0;
  double terms = 0.0;
  std::vector<int> mode_orders;
  std::vector<Peak> peaks;  // OracleCompare on spectra
};

class RunError : public std::runtime_error {
 public:
  RunError(ms_status status, const std::string& message) : std::runtime_error(message), status_(status) {}
  ms_status status() const { return status_; }

 private:
  ms_status status_;
};

RunOutput run_experiment(const ExperimentConfig& cfg);

// Interior local maxima above `floor` times the global maximum, tallest first.
std::vector<std::size_t> find_peaks(const std::vector<double>& values, double floor = 0.01);

}  // namespace molspec::cli
