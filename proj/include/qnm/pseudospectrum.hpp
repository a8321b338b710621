// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qnm/linalg.hpp"
#include "qnm/scalar.hpp"

namespace qnm {

/// -h^2 d^2/dx^2 + i x^2 truncated to the first basis_size eigenfunctions of
/// -h^2 d^2/dx^2 + x^2.
struct RotatedHOConfig {
  double h = 0.05;
  int basis_size = 151;

  void validate() const;
};

/// e^{i pi / 4} h (2n + 1), n = 0..count-1.
std::vector<cplx> exact_rotated_ho_eigs(const RotatedHOConfig& cfg, int count);

/// Matrix of x^2 in the h-scaled Hermite basis: h(n + 1/2) on the diagonal,
/// h sqrt((n+1)(n+2))/2 two off the diagonal.
Eigen::MatrixXd position_squared_matrix(double h, int n);

/// diag((2n + 1) h) + (i - 1) [x^2].
DenseComplexMatrix hermite_galerkin_matrix(const RotatedHOConfig& cfg);

struct InstabilityRow {
  int n = 0;
  cplx exact;
  cplx computed;
  double distance = 0.0;
};

struct InstabilityReport {
  std::vector<InstabilityRow> rows;
  int divergence_index = -1;  ///< first n with distance > 0.1 |exact|, -1 if none
};

/// Greedy nearest matching of computed eigenvalues to the exact ones in increasing |exact|.
InstabilityReport instability_report(const RotatedHOConfig& cfg);

}  // namespace qnm
