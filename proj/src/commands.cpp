// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>
#include <vector>

#include "qnm/catalog.hpp"
#include "qnm/complex_scaling.hpp"
#include "qnm/normal_form.hpp"
#include "qnm/pseudospectrum.hpp"
#include "qnm/series_json.hpp"
#include "qnm/spacetime.hpp"

namespace qnm {

namespace {

using nlohmann::json;

constexpr const char* kBanner = "# qnm-lattice ";
constexpr const char* kConfigTag = "# config ";

struct Table {
  std::vector<std::string> meta;  // extra "# key value" lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(Command c, const RunConfig& cfg, const Table& t) {
  std::string out = std::string(kBanner) + command_name(c) + "\n";
  out += kConfigTag + to_json(cfg).dump() + "\n";
  for (const auto& m : t.meta) out += "# " + m + "\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) out += (k ? "," : "") + t.columns[k];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + row[k];
    out += "\n";
  }
  return out;
}

std::string render_json(Command c, const RunConfig& cfg, json data) {
  json j;
  j["command"] = command_name(c);
  j["config"] = to_json(cfg);
  j["data"] = std::move(data);
  return j.dump(2) + "\n";
}

BlackHoleParams params(const RunConfig& cfg) { return BlackHoleParams{cfg.m, cfg.lambda}; }

NormalFormResult symbol(const RunConfig& cfg) { return qnm_symbol(params(cfg), cfg.series_degree, cfg.h_order, cfg.theta); }

std::string potential(const RunConfig& cfg) {
  const BlackHoleParams p = params(cfg);
  Table t;
  t.columns = {"x", "r", "w0", "w1"};
  json rows = json::array();
  for (int k = 0; k < cfg.grid_count; ++k) {
    const double s = cfg.grid_count == 1 ? cfg.grid_min : cfg.grid_min + (cfg.grid_max - cfg.grid_min) * k / (cfg.grid_count - 1);
    double x = s;
    double r = s;
    if (cfg.grid_coordinate == "x") {
      r = inverse_tortoise(x, p);
    } else {
      x = tortoise(r, p);
    }
    const RadialPoint pt{cplx(r), alpha_squared(cplx(r), p)};
    const double w0 = w0_at(pt, p).real();
    const double w1 = w1_at(pt, p).real();
    t.rows.push_back({csv_number(x), csv_number(r), csv_number(w0), csv_number(w1)});
    rows.push_back({{"x", x}, {"r", r}, {"w0", w0}, {"w1", w1}});
  }
  if (cfg.format == "json") return render_json(Command::kPotential, cfg, rows);
  return render_csv(Command::kPotential, cfg, t);
}

std::string gsymbol(const RunConfig& cfg) {
  const NormalFormResult nf = symbol(cfg);
  const GradedSeries1<cplx>& g = nf.G_qnm;
  if (cfg.format == "json") return render_json(Command::kGSymbol, cfg, {{"mu", complex_to_json(nf.mu)}, {"G", graded_to_json(g)}});
  Table t;
  t.meta.push_back("mu " + csv_number(nf.mu.real()) + " " + csv_number(nf.mu.imag()));
  t.columns = {"k", "j", "re", "im"};
  for (int k = 0; k <= g.h_order(); ++k)
    for (int j = 0; j <= g.level_order(k); ++j)
      t.rows.push_back({std::to_string(k), std::to_string(j), csv_number(g.level(k)[j].real()), csv_number(g.level(k)[j].imag())});
  return render_csv(Command::kGSymbol, cfg, t);
}

std::string lattice_cmd(const RunConfig& cfg) {
  const GradedSeries1<cplx> g = symbol(cfg).G_qnm;
  const double radius = validity_radius(g.level(0));
  Table t;
  t.columns = {"ell", "n", "re_lambda", "im_lambda", "multiplicity"};
  json entries = json::array();
  std::vector<int> truncated;
  for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
    const double h = 1.0 / (ell + 0.5);
    for (int n = 0; n <= cfg.n_max; ++n) {
      if (2.0 * std::numbers::pi * (n + 0.5) * h > radius) {
        truncated.push_back(ell);
        break;
      }
      const cplx lam = lattice_value(g, ell, n);
      t.rows.push_back({std::to_string(ell), std::to_string(n), csv_number(lam.real()), csv_number(lam.imag()), std::to_string(2 * ell + 1)});
      entries.push_back({{"ell", ell}, {"n", n}, {"lambda", complex_to_json(lam)}, {"multiplicity", 2 * ell + 1}});
    }
  }
  if (cfg.format == "json") return render_json(Command::kLattice, cfg, {{"validity_radius", radius}, {"truncated_ells", truncated}, {"entries", entries}});
  t.meta.push_back("validity_radius " + csv_number(radius));
  if (!truncated.empty()) {
    std::string s = "truncated_ells";
    for (int ell : truncated) s += " " + std::to_string(ell);
    t.meta.push_back(s);
  }
  return render_csv(Command::kLattice, cfg, t);
}

std::string count_cmd(const RunConfig& cfg) {
  const GradedSeries1<cplx> g = symbol(cfg).G_qnm;
  const AsymptoticReport rep = asymptotic_check(params(cfg), g, cfg.t, cfg.r_list);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"r", r.r}, {"count", r.count}, {"predicted", r.predicted}, {"ratio", r.ratio}, {"ell_last", r.ell_last}});
    return render_json(Command::kCount, cfg,
                       {{"t", rep.t}, {"interval", rep.interval}, {"constant", rep.constant}, {"rows", rows}, {"notes", rep.notes}});
  }
  Table t;
  t.meta.push_back("interval " + csv_number(rep.interval));
  t.meta.push_back("constant " + csv_number(rep.constant));
  for (const auto& n : rep.notes) t.meta.push_back("note " + n);
  t.columns = {"r", "count", "predicted", "ratio", "ell_last"};
  for (const auto& r : rep.rows)
    t.rows.push_back({csv_number(r.r), std::to_string(r.count), csv_number(r.predicted), csv_number(r.ratio), std::to_string(r.ell_last)});
  return render_csv(Command::kCount, cfg, t);
}

std::string direct_cmd(const RunConfig& cfg, int threads) {
  const BlackHoleParams p = params(cfg);
  const GradedSeries1<cplx> g = symbol(cfg).G_qnm;
  const double radius = validity_radius(g.level(0));
  const int count = cfg.ell_max - cfg.ell_min + 1;
  std::vector<std::vector<QnmEntry>> found(static_cast<std::size_t>(count));
  std::vector<std::string> failure(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> fatal(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      const int ell = cfg.ell_min + i;
      ScalingConfig sc;
      sc.theta = cfg.theta;
      sc.h = 1.0 / (ell + 0.5);
      sc.basis_size = cfg.basis_size;
      sc.window = cfg.window;
      try {
        found[i] = qnm_direct(ell, sc, p);
      } catch (const NumericalError& e) {
        failure[i] = e.what();
      } catch (...) {
        fatal[i] = std::current_exception();
      }
    }
  };
  const int nt = std::clamp(threads, 1, count);
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : fatal)
    if (e) std::rethrow_exception(e);
  if (std::all_of(failure.begin(), failure.end(), [](const std::string& s) { return !s.empty(); }))
    throw NumericalError("direct: no eigenvalues in the spectral window for any ell");

  const auto lattice_at = [&](int ell, int n) -> std::optional<cplx> {
    if (2.0 * std::numbers::pi * (n + 0.5) / (ell + 0.5) > radius) return std::nullopt;
    return lattice_value(g, ell, n);
  };
  if (cfg.format == "json") {
    json per_ell = json::array();
    for (int i = 0; i < count; ++i) {
      json q = json::array();
      json lat = json::array();
      for (const auto& e : found[i]) {
        q.push_back(complex_to_json(e.lambda));
        const auto l = lattice_at(e.ell, e.n);
        lat.push_back(l ? complex_to_json(*l) : json(nullptr));
      }
      json item = {{"ell", cfg.ell_min + i}, {"theta", cfg.theta}, {"qnm", q}, {"lattice", lat}};
      if (!failure[i].empty()) item["error"] = failure[i];
      per_ell.push_back(item);
    }
    return render_json(Command::kDirect, cfg, per_ell);
  }
  Table t;
  for (int i = 0; i < count; ++i)
    if (!failure[i].empty()) t.meta.push_back("empty_window ell " + std::to_string(cfg.ell_min + i));
  t.columns = {"ell", "n", "re_lambda", "im_lambda", "multiplicity", "re_lattice", "im_lattice", "abs_diff"};
  for (int i = 0; i < count; ++i)
    for (const auto& e : found[i]) {
      std::vector<std::string> row{std::to_string(e.ell), std::to_string(e.n), csv_number(e.lambda.real()), csv_number(e.lambda.imag()),
                                   std::to_string(e.multiplicity)};
      const auto l = lattice_at(e.ell, e.n);
      if (l) {
        row.push_back(csv_number(l->real()));
        row.push_back(csv_number(l->imag()));
        row.push_back(csv_number(std::abs(*l - e.lambda)));
      } else {
        row.insert(row.end(), {"", "", ""});
      }
      t.rows.push_back(std::move(row));
    }
  return render_csv(Command::kDirect, cfg, t);
}

std::string pseudo_cmd(const RunConfig& cfg) {
  const InstabilityReport rep = instability_report(RotatedHOConfig{cfg.pseudo_h, cfg.pseudo_basis_size});
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"n", r.n}, {"exact", complex_to_json(r.exact)}, {"computed", complex_to_json(r.computed)}, {"distance", r.distance}});
    return render_json(Command::kPseudo, cfg, {{"divergence_index", rep.divergence_index}, {"rows", rows}});
  }
  Table t;
  t.meta.push_back("divergence_index " + std::to_string(rep.divergence_index));
  t.columns = {"n", "re_exact", "im_exact", "re_num", "im_num", "dist"};
  for (const auto& r : rep.rows)
    t.rows.push_back({std::to_string(r.n), csv_number(r.exact.real()), csv_number(r.exact.imag()), csv_number(r.computed.real()),
                      csv_number(r.computed.imag()), csv_number(r.distance)});
  return render_csv(Command::kPseudo, cfg, t);
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kPotential: return "potential";
    case Command::kGSymbol: return "gsymbol";
    case Command::kLattice: return "lattice";
    case Command::kCount: return "count";
    case Command::kDirect: return "direct";
    case Command::kPseudo: return "pseudo";
  }
  return "";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::kPotential, Command::kGSymbol, Command::kLattice, Command::kCount, Command::kDirect, Command::kPseudo})
    if (name == command_name(c)) return c;
  return std::nullopt;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_command(Command c, const RunConfig& cfg, int threads) {
  cfg.validate();
  switch (c) {
    case Command::kPotential: return potential(cfg);
    case Command::kGSymbol: return gsymbol(cfg);
    case Command::kLattice: return lattice_cmd(cfg);
    case Command::kCount: return count_cmd(cfg);
    case Command::kDirect: return direct_cmd(cfg, threads);
    case Command::kPseudo: return pseudo_cmd(cfg);
  }
  throw std::invalid_argument("render_command: unknown command");
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty()) throw IoError("output path is empty");
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing: " + std::strerror(errno));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot move output into place at " + path + ": " + ec.message());
  }
}

RunConfig config_from_output(const std::string& content) {
  const std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    const json j = json::parse(content);
    return run_config_from_json(j.at("config"));
  }
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(kConfigTag, 0) == 0) return run_config_from_json(json::parse(line.substr(std::strlen(kConfigTag))));
    if (line.empty() || line[0] != '#') break;
  }
  throw std::invalid_argument("config_from_output: no embedded configuration");
}

}  // namespace qnm
