// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qnm {

/// Every parameter of a command-line run. Fields irrelevant to a command are
/// still validated and echoed so that a run is reproducible from its output.
struct RunConfig {
  double m = 1.0;
  double lambda = 0.0;
  double theta = 0.3;
  int ell_min = 1;
  int ell_max = 4;
  int n_max = 4;
  double t = 0.05;
  std::vector<double> r_list{50.0, 100.0, 200.0};
  int series_degree = 24;
  int h_order = 4;
  int basis_size = 256;
  double window = 0.2;
  double pseudo_h = 0.05;
  int pseudo_basis_size = 151;
  std::string grid_coordinate = "x";  ///< "x" (tortoise) or "r" (areal) for the potential table
  double grid_min = -10.0;
  double grid_max = 10.0;
  int grid_count = 201;
  std::string output_path;
  std::string format = "csv";

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& c);

/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

}  // namespace qnm
