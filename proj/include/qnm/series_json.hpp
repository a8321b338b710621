// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "qnm/graded.hpp"
#include "qnm/series.hpp"

namespace qnm {

inline nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

/// {"trunc_order": N, "coeffs": [[re, im], ...]}
inline nlohmann::json series_to_json(const Series1<cplx>& s) {
  nlohmann::json c = nlohmann::json::array();
  for (const cplx& z : s.coeffs()) c.push_back(complex_to_json(z));
  return {{"trunc_order", s.order()}, {"coeffs", c}};
}

inline Series1<cplx> series_from_json(const nlohmann::json& j) {
  const int n = j.at("trunc_order").get<int>();
  const auto& c = j.at("coeffs");
  if (!c.is_array() || static_cast<int>(c.size()) != n + 1)
    throw std::invalid_argument("series: coefficient count does not match trunc_order");
  Series1<cplx> s(n);
  for (int k = 0; k <= n; ++k) s[k] = complex_from_json(c.at(static_cast<std::size_t>(k)));
  return s;
}

/// Bivariate form: sparse list of [m, n, re, im] for the nonzero coefficients.
inline nlohmann::json series_to_json(const Series2<cplx>& s) {
  nlohmann::json c = nlohmann::json::array();
  s.for_each_nonzero([&](int m, int n, const cplx& v) { c.push_back({m, n, v.real(), v.imag()}); });
  return {{"trunc_order", s.order()}, {"terms", c}};
}

inline Series2<cplx> series2_from_json(const nlohmann::json& j) {
  Series2<cplx> s(j.at("trunc_order").get<int>());
  for (const auto& t : j.at("terms")) s.at(t.at(0).get<int>(), t.at(1).get<int>()) = {t.at(2).get<double>(), t.at(3).get<double>()};
  return s;
}

/// [{"h_level": k, "coeffs": ...}, ...] plus the weight bound.
template <class Poly>
nlohmann::json graded_to_json(const HGradedSymbol<Poly>& g) {
  nlohmann::json levels = nlohmann::json::array();
  for (int k = 0; k <= g.h_order(); ++k) {
    nlohmann::json l = series_to_json(g.level(k));
    l["h_level"] = k;
    levels.push_back(l);
  }
  return {{"order", g.order()}, {"h_order", g.h_order()}, {"levels", levels}};
}

inline GradedSeries1<cplx> graded_series_from_json(const nlohmann::json& j) {
  GradedSeries1<cplx> g(j.at("order").get<int>(), j.at("h_order").get<int>());
  for (const auto& l : j.at("levels")) g.set_level(l.at("h_level").get<int>(), series_from_json(l));
  return g;
}

}  // namespace qnm
