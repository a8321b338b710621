// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/run_config.hpp"

#include <cmath>
#include <stdexcept>

#include "qnm/complex_scaling.hpp"
#include "qnm/pseudospectrum.hpp"
#include "qnm/spacetime.hpp"

namespace qnm {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + field + " " + what);
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("config: ") + key + " has the wrong type");
  }
}

}  // namespace

void RunConfig::validate() const {
  const BlackHoleParams p{m, lambda};
  p.validate();
  require(theta > 0.0 && theta <= 0.4, "theta", "must lie in (0, 0.4]");
  require(ell_min >= 1, "ell_range", "must start at 1 or above");
  require(ell_max >= ell_min, "ell_range", "must be nondecreasing");
  require(ell_max <= 100000, "ell_range", "must end at or below 100000");
  require(n_max >= 0, "n_max", "must be nonnegative");
  require(t > 0.0 && t <= 0.3, "t", "must lie in (0, 0.3]");
  require(!r_list.empty(), "r_list", "must not be empty");
  for (std::size_t k = 0; k < r_list.size(); ++k) {
    require(std::isfinite(r_list[k]) && r_list[k] >= 1.0, "r_list", "entries must be finite and at least 1");
    if (k > 0) require(r_list[k] > r_list[k - 1], "r_list", "must be increasing");
  }
  require(h_order >= 0, "h_order", "must be nonnegative");
  require(series_degree >= 2 * h_order + 4, "series_degree", "must be at least 2 h_order + 4");
  require(series_degree <= 40, "series_degree", "must be at most 40");
  ScalingConfig sc;
  sc.theta = theta;
  sc.basis_size = basis_size;
  sc.window = window;
  sc.validate();
  RotatedHOConfig{pseudo_h, pseudo_basis_size}.validate();
  require(grid_coordinate == "x" || grid_coordinate == "r", "grid_coordinate", "must be \"x\" or \"r\"");
  require(std::isfinite(grid_min) && std::isfinite(grid_max) && grid_min <= grid_max, "grid", "needs finite min <= max");
  require(grid_count >= 0 && grid_count <= 10000000, "grid_count", "must lie in [0, 1e7]");
  if (grid_coordinate == "r" && grid_count > 0) {
    const HorizonData hz = horizon_roots(p);
    require(grid_min > hz.r_minus, "grid", "must lie outside the event horizon");
    if (hz.has_cosmological) require(grid_max < hz.r_plus, "grid", "must lie inside the cosmological horizon");
  }
  require(format == "csv" || format == "json", "format", "must be csv or json");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["m"] = c.m;
  j["lambda"] = c.lambda;
  j["theta"] = c.theta;
  j["ell_range"] = {c.ell_min, c.ell_max};
  j["n_max"] = c.n_max;
  j["t"] = c.t;
  j["r_list"] = c.r_list;
  j["series_degree"] = c.series_degree;
  j["h_order"] = c.h_order;
  j["basis_size"] = c.basis_size;
  j["window"] = c.window;
  j["pseudo_h"] = c.pseudo_h;
  j["pseudo_basis_size"] = c.pseudo_basis_size;
  j["grid_coordinate"] = c.grid_coordinate;
  j["grid_min"] = c.grid_min;
  j["grid_max"] = c.grid_max;
  j["grid_count"] = c.grid_count;
  j["output_path"] = c.output_path;
  j["format"] = c.format;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  static const char* const known[] = {"m",        "lambda",           "theta",      "ell_range",       "n_max",
                                      "t",        "r_list",           "series_degree", "h_order",     "basis_size",
                                      "window",   "pseudo_h",         "pseudo_basis_size", "grid_coordinate", "grid_min",
                                      "grid_max", "grid_count",       "output_path", "format"};
  for (const auto& item : j.items()) {
    bool found = false;
    for (const char* k : known) found = found || item.key() == k;
    if (!found) throw std::invalid_argument("config: unknown key " + item.key());
  }
  RunConfig c = std::move(base);
  read(j, "m", c.m);
  read(j, "lambda", c.lambda);
  read(j, "theta", c.theta);
  if (j.contains("ell_range")) {
    std::vector<int> range;
    read(j, "ell_range", range);
    if (range.size() != 2) throw std::invalid_argument("config: ell_range must be [min, max]");
    c.ell_min = range[0];
    c.ell_max = range[1];
  }
  read(j, "n_max", c.n_max);
  read(j, "t", c.t);
  read(j, "r_list", c.r_list);
  read(j, "series_degree", c.series_degree);
  read(j, "h_order", c.h_order);
  read(j, "basis_size", c.basis_size);
  read(j, "window", c.window);
  read(j, "pseudo_h", c.pseudo_h);
  read(j, "pseudo_basis_size", c.pseudo_basis_size);
  read(j, "grid_coordinate", c.grid_coordinate);
  read(j, "grid_min", c.grid_min);
  read(j, "grid_max", c.grid_max);
  read(j, "grid_count", c.grid_count);
  read(j, "output_path", c.output_path);
  read(j, "format", c.format);
  return c;
}

}  // namespace qnm
