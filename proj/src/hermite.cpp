// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qnm {

namespace {

constexpr double kRescale = 1e150;

// Recurrence without the Gaussian factor; exponent[k] counts rescalings by kRescale.
void scaled_recurrence(double x, int n, std::vector<double>& v, std::vector<int>& exponent) {
  v.assign(static_cast<std::size_t>(n) + 1, 0.0);
  exponent.assign(static_cast<std::size_t>(n) + 1, 0);
  v[0] = std::pow(std::numbers::pi, -0.25);
  if (n == 0) return;
  v[1] = std::sqrt(2.0) * x * v[0];
  int e = 0;
  double prev = v[0];
  double cur = v[1];
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      ++e;
    }
    v[k + 1] = cur;
    exponent[k + 1] = e;
  }
}

}  // namespace

std::vector<double> hermite_functions(double x, int n) {
  if (n < 0) throw std::invalid_argument("hermite_functions: negative degree");
  std::vector<double> v;
  std::vector<int> e;
  scaled_recurrence(x, n, v, e);
  const double log_scale = std::log(kRescale);
  for (int k = 0; k <= n; ++k) v[k] *= std::exp(e[k] * log_scale - 0.5 * x * x);
  return v;
}

HermiteQuadrature hermite_quadrature(int q, int basis) {
  if (q < 1 || basis < 1 || basis > q) throw std::invalid_argument("hermite_quadrature: need 1 <= basis <= nodes");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(q);
  Eigen::VectorXd off(q > 1 ? q - 1 : 0);
  for (int k = 1; k < q; ++k) off[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermite_quadrature: eigenvalue iteration failed");

  HermiteQuadrature hq;
  hq.nodes = q;
  hq.basis = basis;
  hq.x.resize(static_cast<std::size_t>(q));
  hq.phi.resize(static_cast<std::size_t>(q) * basis);
  const double log_scale = std::log(kRescale);
  std::vector<double> v;
  std::vector<int> e;
  for (int i = 0; i < q; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      scaled_recurrence(x, q, v, e);
      // (psi_q e^{x^2/2})' = sqrt(2q) psi_{q-1} e^{x^2/2}, in the common scaling of index q
      const double vq1 = v[q - 1] * std::exp((e[q - 1] - e[q]) * log_scale);
      const double d = std::sqrt(2.0 * q) * vq1;
      if (d == 0.0) break;
      const double dx = v[q] / d;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    scaled_recurrence(x, q - 1, v, e);
    hq.x[i] = x;
    // weight * e^{x^2} = 1 / (q psi_{q-1}^2)
    const double denom = std::sqrt(static_cast<double>(q)) * std::abs(v[q - 1]);
    for (int n = 0; n < basis; ++n)
      hq.phi[static_cast<std::size_t>(i) * basis + n] = v[n] * std::exp((e[n] - e[q - 1]) * log_scale) / denom;
  }
  return hq;
}

}  // namespace qnm
