// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

// Cycle integral of xi dx over the complexified level set xi^2 + W0(x) = E0 + E
// around the two turning points next to the barrier top. Evaluated in the
// r-plane, where dx = dr / alpha^2, by the trapezoid rule on an ellipse.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qnm/spacetime.hpp"

namespace oracle {

inline std::complex<double> barrier_cycle_action(const qnm::BlackHoleParams& p, std::complex<double> e, double tol = 1e-13) {
  using C = std::complex<double>;
  const double m = p.m;
  const double lam = p.lambda;
  const double rc = 3.0 * m;
  const double e0 = (1.0 - 9.0 * lam * m * m) / (27.0 * m * m);
  const auto F = [&](C r) { return 1.0 / (r * r) - 2.0 * m / (r * r * r) - lam / 3.0; };
  const auto dF = [&](C r) { return -2.0 / (r * r * r) + 6.0 * m / (r * r * r * r); };
  const double ac = 0.5 * (6.0 / std::pow(rc, 4) - 24.0 * m / std::pow(rc, 5));

  C tp[2];
  for (int s = 0; s < 2; ++s) {
    C r = rc + (s == 0 ? -1.0 : 1.0) * std::sqrt(e / ac);
    for (int it = 0; it < 100; ++it) {
      const C dr = (F(r) - e0 - e) / dF(r);
      r -= dr;
      if (std::abs(dr) < 1e-16 * std::abs(r)) break;
    }
    tp[s] = r;
  }
  const C mid = 0.5 * (tp[0] + tp[1]);
  const C d = 0.5 * (tp[1] - tp[0]);

  // Other singular points: r = 0, the horizons, and the third turning point.
  std::vector<C> sing{0.0, -(tp[0] + tp[1])};
  const auto hz = qnm::horizon_roots(p);
  sing.push_back(hz.r_minus);
  if (hz.has_cosmological) {
    sing.push_back(hz.r_plus);
    sing.push_back(hz.r_zero);
  }
  double cmax = 1e300;
  for (const C& s : sing) cmax = std::min(cmax, (std::abs(s - tp[0]) + std::abs(s - tp[1])) / (2.0 * std::abs(d)));
  if (!(cmax > 1.0)) throw std::runtime_error("barrier_cycle_action: no admissible ellipse");
  const double rho = 0.5 * std::acosh(cmax);

  const auto trapezoid = [&](int n) {
    C acc = 0.0;
    C prev = 0.0;
    C first = 0.0;
    for (int j = 0; j <= n; ++j) {
      const C u(rho, 2.0 * M_PI * j / n);
      const C r = mid + d * std::cosh(u);
      C xi = std::sqrt(e + e0 - F(r));
      if (j == 0) {
        first = xi;
      } else if (std::abs(xi - prev) > std::abs(xi + prev)) {
        xi = -xi;
      }
      prev = xi;
      if (j == n) {
        if (std::abs(xi - first) > 1e-8 * std::abs(first)) throw std::runtime_error("barrier_cycle_action: branch not single valued");
        break;
      }
      const C alpha2 = 1.0 - 2.0 * m / r - lam * r * r / 3.0;
      const C drdphi = C(0.0, 1.0) * d * std::sinh(u);
      acc += xi / alpha2 * drdphi;
    }
    return acc * (2.0 * M_PI / n);
  };
  C last = trapezoid(64);
  for (int n = 128; n <= (1 << 16); n *= 2) {
    const C cur = trapezoid(n);
    if (std::abs(cur - last) <= tol * std::abs(cur)) return cur;
    last = cur;
  }
  return last;
}

}  // namespace oracle
