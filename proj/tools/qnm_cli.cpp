// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnm/commands.hpp"
#include "qnm/run_config.hpp"
#include "qnm/scalar.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int thread_count() {
  const char* env = std::getenv("QNM_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw std::invalid_argument("QNM_THREADS must be an integer in [1, 1024]");
  return static_cast<int>(n);
}

qnm::RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return qnm::run_config_from_json(nlohmann::json::parse(ss.str()));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier-top quasinormal modes of Schwarzschild(-de Sitter) black holes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  qnm::RunConfig flags;
  std::vector<int> ell_range;
  CLI::Option* opts[20] = {};
  int k = 0;
  opts[k++] = app.add_option("--m", flags.m, "Black hole mass");
  opts[k++] = app.add_option("--lambda", flags.lambda, "Cosmological constant");
  opts[k++] = app.add_option("--theta", flags.theta, "Complex scaling angle");
  opts[k++] = app.add_option("--ell-range", ell_range, "Angular momenta: min max")->expected(2);
  opts[k++] = app.add_option("--n-max", flags.n_max, "Largest overtone index in lattice output");
  opts[k++] = app.add_option("--t", flags.t, "Sector aperture");
  opts[k++] = app.add_option("--r-list", flags.r_list, "Increasing sector radii")->expected(1, -1);
  opts[k++] = app.add_option("--series-degree", flags.series_degree, "Taylor degree of the normal form");
  opts[k++] = app.add_option("--h-order", flags.h_order, "Number of h corrections in G");
  opts[k++] = app.add_option("--basis-size", flags.basis_size, "Hermite basis size of the direct solver");
  opts[k++] = app.add_option("--window", flags.window, "Relative spectral window around E0");
  opts[k++] = app.add_option("--pseudo-h", flags.pseudo_h, "h of the rotated oscillator");
  opts[k++] = app.add_option("--pseudo-basis-size", flags.pseudo_basis_size, "Basis size of the rotated oscillator");
  opts[k++] = app.add_option("--grid-coordinate", flags.grid_coordinate, "Potential grid variable: x or r");
  opts[k++] = app.add_option("--grid-min", flags.grid_min, "First grid point");
  opts[k++] = app.add_option("--grid-max", flags.grid_max, "Last grid point");
  opts[k++] = app.add_option("--grid-count", flags.grid_count, "Number of grid points");
  opts[k++] = app.add_option("-o,--output", flags.output_path, "Output file");
  opts[k++] = app.add_option("--format", flags.format, "csv or json");
  app.add_option("-c,--config", config_path, "JSON configuration; flags override it");

  std::string chosen;
  for (const char* name : {"potential", "gsymbol", "lattice", "count", "direct", "pseudo"})
    app.add_subcommand(name, std::string("Run ") + name)->callback([&chosen, name] { chosen = name; })->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    qnm::RunConfig cfg = config_path.empty() ? qnm::RunConfig{} : load_config_file(config_path);
    const auto given = [&](int i) { return opts[i]->count() > 0; };
    if (given(0)) cfg.m = flags.m;
    if (given(1)) cfg.lambda = flags.lambda;
    if (given(2)) cfg.theta = flags.theta;
    if (given(3)) {
      cfg.ell_min = ell_range[0];
      cfg.ell_max = ell_range[1];
    }
    if (given(4)) cfg.n_max = flags.n_max;
    if (given(5)) cfg.t = flags.t;
    if (given(6)) cfg.r_list = flags.r_list;
    if (given(7)) cfg.series_degree = flags.series_degree;
    if (given(8)) cfg.h_order = flags.h_order;
    if (given(9)) cfg.basis_size = flags.basis_size;
    if (given(10)) cfg.window = flags.window;
    if (given(11)) cfg.pseudo_h = flags.pseudo_h;
    if (given(12)) cfg.pseudo_basis_size = flags.pseudo_basis_size;
    if (given(13)) cfg.grid_coordinate = flags.grid_coordinate;
    if (given(14)) cfg.grid_min = flags.grid_min;
    if (given(15)) cfg.grid_max = flags.grid_max;
    if (given(16)) cfg.grid_count = flags.grid_count;
    if (given(17)) cfg.output_path = flags.output_path;
    if (given(18)) cfg.format = flags.format;
    cfg.validate();
    if (cfg.output_path.empty()) throw std::invalid_argument("config: output_path is required");
    const int threads = thread_count();

    const std::string content = qnm::render_command(*qnm::parse_command(chosen), cfg, threads);
    qnm::write_atomic(cfg.output_path, content);
    return 0;
  } catch (const qnm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qnm::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
