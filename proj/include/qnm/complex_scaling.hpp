// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qnm/linalg.hpp"
#include "qnm/qnm_entry.hpp"
#include "qnm/spacetime.hpp"

namespace qnm {

enum class PotentialModel {
  kReggeWheeler,  ///< W0 + h^2 W1 of the black hole
  kFree,          ///< W = 0
  kHarmonic,      ///< W = y^2 in the shifted coordinate (test hook)
};

/// theta = 0 is accepted for the unscaled test models; qnm_direct needs theta > 0.
struct ScalingConfig {
  double theta = 0.3;
  double h = 0.4;
  int basis_size = 128;
  double basis_scale = 1.0;
  double window = 0.2;  ///< relative radius of the spectral window around E0
  PotentialModel model = PotentialModel::kReggeWheeler;

  void validate() const;
};

/// p_theta(x, xi) = ((1 + i theta)^{-1} xi)^2 + V((1 + i theta) x), V = W0(x0 + .) - E0.
cplx scaled_symbol(double x, double xi, const ScalingConfig& cfg, const BlackHoleParams& p);

struct EllipticityGrid {
  double x_min = -3.0;
  double x_max = 3.0;
  double xi_min = -3.0;
  double xi_max = 3.0;
  int nx = 121;
  int nxi = 121;
};

struct EllipticityReport {
  bool empty = true;  ///< every grid point fell inside the excluded ball
  double min_ratio = 0.0;  ///< min |p_theta| / (1 + xi^2)
  double argmin_x = 0.0;
  double argmin_xi = 0.0;
};

/// Minimum of |p_theta| / (1 + xi^2) over the grid outside x^2 + xi^2 < eps^2.
EllipticityReport ellipticity_scan(const ScalingConfig& cfg, const BlackHoleParams& p, double eps, const EllipticityGrid& grid);

/// Largest c1 with Im p_theta <= -c1 theta (x^2 + xi^2) on the square |x|, |xi| <= delta (n x n grid, origin excluded).
double imaginary_part_constant(const ScalingConfig& cfg, const BlackHoleParams& p, double delta, int n = 41);

/// Hermite-Galerkin matrix of ((1 + i theta)^{-1} h D)^2 + W along x = x0 + (1 + i theta) y,
/// basis psi_n(y / sigma), sigma = c0^{-1/4} sqrt(h) basis_scale. Potential entries use
/// Gauss-Hermite quadrature from 2N nodes, doubled until entries change by < 1e-12.
DenseComplexMatrix build_scaled_operator(const ScalingConfig& cfg, const BlackHoleParams& p);

/// Eigenvalues z of the scaled operator with |z - E0| < window E0, mapped to
/// lambda = h^{-1} sqrt(z) (Re lambda > 0) and ordered by decay rate.
std::vector<QnmEntry> qnm_direct(int ell, const ScalingConfig& cfg, const BlackHoleParams& p);

}  // namespace qnm
