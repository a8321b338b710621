// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qnm/scalar.hpp"
#include "qnm/series.hpp"

namespace qnm {

/// Mass m > 0 and cosmological constant 0 <= Lambda < 1 / (9 m^2).
struct BlackHoleParams {
  double m = 1.0;
  double lambda = 0.0;

  /// Throws std::invalid_argument outside the admissible domain.
  void validate() const;
  /// 1 - 9 Lambda m^2.
  double subextremality() const { return 1.0 - 9.0 * lambda * m * m; }
};

/// Roots of r alpha^2(r) = 0 and the residues a_i of 1 / alpha^2 there.
/// For Lambda = 0 only the event horizon r_minus = 2m is present.
struct HorizonData {
  bool has_cosmological = false;
  double r_minus = 0.0;  ///< event horizon
  double r_plus = 0.0;   ///< cosmological horizon
  double r_zero = 0.0;   ///< negative root
  double a_minus = 0.0;
  double a_plus = 0.0;
  double a_zero = 0.0;
};

struct CriticalData {
  double r_crit = 0.0;
  double x0 = 0.0;  ///< tortoise coordinate of r_crit
  double e0 = 0.0;  ///< barrier height
  double c0 = 0.0;  ///< -W0''(x0) / 2 in the tortoise variable
};

double alpha_squared(double r, const BlackHoleParams& p);
cplx alpha_squared(cplx r, const BlackHoleParams& p);

HorizonData horizon_roots(const BlackHoleParams& p);

/// x(r) = r + 2m log(r - 2m) for Lambda = 0, sum a_i log|r - r_i| otherwise.
double tortoise(double r, const BlackHoleParams& p);

/// Inverse of tortoise() on the static region.
double inverse_tortoise(double x, const BlackHoleParams& p);

/// Radial point together with the horizon distances, kept separately so that
/// alpha^2 keeps full relative precision near the horizons.
struct RadialPoint {
  cplx r;
  cplx alpha2;
};

/// W0 = alpha^2 / r^2 and W1 = (alpha^2 / r^2)(r d_r alpha^2 - 1/4).
cplx w0_at(const RadialPoint& pt, const BlackHoleParams& p);
cplx w1_at(const RadialPoint& pt, const BlackHoleParams& p);

double potential_w0(double x, const BlackHoleParams& p);
double potential_w1(double x, const BlackHoleParams& p);
/// W0 + h^2 W1 at tortoise coordinate x.
double potential_W(double x, double h, const BlackHoleParams& p);

CriticalData critical_data(const BlackHoleParams& p);

/// Taylor coefficients of W0(x0 + x) - E0 through degree n (n <= 40).
Series1<cplx> shifted_potential_taylor(const BlackHoleParams& p, int n);
/// Taylor coefficients of W1(x0 + x) through degree n.
Series1<cplx> shifted_w1_taylor(const BlackHoleParams& p, int n);

/// Analytic continuation of x -> r(x) off the real axis, tracked from the
/// real solution along the vertical segment Re x -> x.
class TortoiseContinuation {
 public:
  explicit TortoiseContinuation(const BlackHoleParams& p);
  RadialPoint at(cplx x, int steps = 8) const;
  const BlackHoleParams& params() const { return p_; }

 private:
  // Uniformizing variable: s = log(r - 2m) (Lambda = 0) or the logit
  // u = log((r - r_-) / (r_+ - r)) (Lambda > 0).
  cplx x_of(cplx v) const;
  cplx dx_of(cplx v) const;
  RadialPoint point_of(cplx v) const;
  double real_variable(double x) const;

  BlackHoleParams p_;
  HorizonData hz_;
};

}  // namespace qnm
