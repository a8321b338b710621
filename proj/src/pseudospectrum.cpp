// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/pseudospectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qnm {

void RotatedHOConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("RotatedHOConfig: h must be positive");
  if (basis_size < 8 || basis_size > 2000) throw std::invalid_argument("RotatedHOConfig: basis_size must lie in [8, 2000]");
}

std::vector<cplx> exact_rotated_ho_eigs(const RotatedHOConfig& cfg, int count) {
  cfg.validate();
  if (count < 0 || count > cfg.basis_size) throw std::invalid_argument("exact_rotated_ho_eigs: count must lie in [0, basis_size]");
  const cplx phase = std::polar(1.0, std::numbers::pi / 4.0);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) out.push_back(phase * (cfg.h * (2.0 * n + 1.0)));
  return out;
}

Eigen::MatrixXd position_squared_matrix(double h, int n) {
  if (n < 1) throw std::invalid_argument("position_squared_matrix: empty basis");
  // x = sqrt(h/2) (a + a^dagger)
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    x2(k, k) = h * (k + 0.5);
    if (k + 2 < n) {
      const double off = 0.5 * h * std::sqrt((k + 1.0) * (k + 2.0));
      x2(k, k + 2) = off;
      x2(k + 2, k) = off;
    }
  }
  return x2;
}

DenseComplexMatrix hermite_galerkin_matrix(const RotatedHOConfig& cfg) {
  cfg.validate();
  const int n = cfg.basis_size;
  DenseComplexMatrix m;
  m.basis = "hermite";
  m.scale = std::sqrt(cfg.h);
  m.complex_symmetric = true;
  m.a = cplx(-1.0, 1.0) * position_squared_matrix(cfg.h, n).cast<cplx>();
  for (int k = 0; k < n; ++k) m.a(k, k) += cfg.h * (2.0 * k + 1.0);
  return m;
}

InstabilityReport instability_report(const RotatedHOConfig& cfg) {
  const std::vector<cplx> computed = eigensolve(hermite_galerkin_matrix(cfg));
  const std::vector<cplx> exact = exact_rotated_ho_eigs(cfg, cfg.basis_size);
  std::vector<bool> used(computed.size(), false);
  InstabilityReport rep;
  for (int n = 0; n < cfg.basis_size; ++n) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < computed.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(computed[j] - exact[n]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    rep.rows.push_back(InstabilityRow{n, exact[n], computed[best], best_d});
    if (rep.divergence_index < 0 && best_d > 0.1 * std::abs(exact[n])) rep.divergence_index = n;
  }
  return rep;
}

}  // namespace qnm
