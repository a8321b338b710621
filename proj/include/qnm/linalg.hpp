// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnm/scalar.hpp"

namespace qnm {

/// Dense complex matrix with a description of the discretization behind it.
struct DenseComplexMatrix {
  Eigen::MatrixXcd a;
  std::string basis;      ///< e.g. "hermite"
  double center = 0.0;    ///< basis center in the physical coordinate
  double scale = 1.0;     ///< basis width
  bool complex_symmetric = false;

  int dim() const { return static_cast<int>(a.rows()); }
};

struct EigenPair {
  cplx value;
  Eigen::VectorXcd vector;
  double residual = 0.0;  ///< |M v - lambda v| / |v|
};

/// All eigenvalues, sorted by real part then imaginary part.
std::vector<cplx> eigensolve(const DenseComplexMatrix& m);

/// Eigenpairs with residuals; throws NumericalError when a residual exceeds tol.
std::vector<EigenPair> eigensolve_with_vectors(const DenseComplexMatrix& m, double tol = 1e-8);

}  // namespace qnm
