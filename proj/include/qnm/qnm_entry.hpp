// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qnm/scalar.hpp"

namespace qnm {

/// One quasinormal frequency with its angular degeneracy 2 ell + 1.
struct QnmEntry {
  int ell = 1;
  int n = 0;
  cplx lambda;
  int multiplicity = 3;
};

}  // namespace qnm
