// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace qnm {

/// Principal branch W_0(x) for x >= -1/e, Halley iteration.
double lambert_w0(double x);

/// Wright omega for real z: the solution w of w + log(w) = z, i.e. W_0(e^z),
/// without forming e^z.
double wright_omega(double z);

}  // namespace qnm
