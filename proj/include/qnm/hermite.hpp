// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace qnm {

/// Normalized Hermite functions psi_0..psi_n at x, psi_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}.
/// Values below the double range underflow to zero.
std::vector<double> hermite_functions(double x, int n);

/// Gauss-Hermite rule for the weight e^{-x^2} with q nodes, stored together
/// with the basis values needed for Galerkin matrix elements:
/// sum_i phi[i][m] phi[i][n] f(x_i) approximates int psi_m psi_n f dx,
/// exactly when f is a polynomial of degree <= 2q - 1 - m - n.
struct HermiteQuadrature {
  int nodes = 0;
  int basis = 0;
  std::vector<double> x;
  std::vector<double> phi;  ///< row-major nodes x basis

  double value(int i, int n) const { return phi[static_cast<std::size_t>(i) * basis + n]; }
};

/// Nodes from the Golub-Welsch matrix, polished by Newton on psi_q; the
/// weights are formed as ratios psi_n / psi_{q-1} so nothing underflows.
HermiteQuadrature hermite_quadrature(int q, int basis);

}  // namespace qnm
