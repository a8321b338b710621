// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnm/lambert.hpp"

namespace qnm {

namespace {

constexpr double kPi = std::numbers::pi;

cplx log1p_c(cplx w) {
  if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
  return std::log(1.0 + w);
}

// log(1 + e^u), analytic near the real axis.
cplx softplus(cplx u) {
  if (u.real() > 0.0) return u + log1p_c(std::exp(-u));
  return log1p_c(std::exp(u));
}

}  // namespace

void BlackHoleParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("BlackHoleParams: mass must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("BlackHoleParams: Lambda must be non-negative");
  if (!(subextremality() > 0.0))
    throw std::invalid_argument("BlackHoleParams: Lambda must satisfy 9 Lambda m^2 < 1");
}

double alpha_squared(double r, const BlackHoleParams& p) {
  return 1.0 - 2.0 * p.m / r - p.lambda * r * r / 3.0;
}

cplx alpha_squared(cplx r, const BlackHoleParams& p) {
  return 1.0 - 2.0 * p.m / r - p.lambda * r * r / 3.0;
}

HorizonData horizon_roots(const BlackHoleParams& p) {
  p.validate();
  HorizonData h;
  const auto residue = [&](double r) { return 1.0 / (2.0 * p.m / (r * r) - 2.0 * p.lambda * r / 3.0); };
  if (p.lambda == 0.0) {
    h.r_minus = 2.0 * p.m;
    h.a_minus = residue(h.r_minus);
    return h;
  }
  if (p.subextremality() < 1e-10) throw NumericalError("horizon_roots: near-extremal configuration");
  h.has_cosmological = true;
  // r^3 - (3 / Lambda) r + 6 m / Lambda = 0
  const double sl = std::sqrt(p.lambda);
  const double phi = std::acos(-3.0 * p.m * sl);
  double roots[3];
  for (int k = 0; k < 3; ++k) roots[k] = 2.0 / sl * std::cos(phi / 3.0 - 2.0 * kPi * k / 3.0);
  for (double& r : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = r * r * r - 3.0 / p.lambda * r + 6.0 * p.m / p.lambda;
      const double d = 3.0 * r * r - 3.0 / p.lambda;
      if (d == 0.0) break;
      r -= f / d;
    }
  }
  h.r_plus = roots[0];
  h.r_minus = roots[1];
  h.r_zero = roots[2];
  h.a_plus = residue(h.r_plus);
  h.a_minus = residue(h.r_minus);
  h.a_zero = residue(h.r_zero);
  return h;
}

double tortoise(double r, const BlackHoleParams& p) {
  const HorizonData h = horizon_roots(p);
  if (!(r > h.r_minus) || (h.has_cosmological && !(r < h.r_plus)))
    throw std::domain_error("tortoise: r outside the static region");
  if (!h.has_cosmological) return r + 2.0 * p.m * std::log(r - 2.0 * p.m);
  return h.a_zero * std::log(r - h.r_zero) + h.a_minus * std::log(r - h.r_minus) + h.a_plus * std::log(h.r_plus - r);
}

double inverse_tortoise(double x, const BlackHoleParams& p) {
  const TortoiseContinuation tc(p);
  return tc.at(cplx(x, 0.0), 0).r.real();
}

cplx w0_at(const RadialPoint& pt, const BlackHoleParams&) { return pt.alpha2 / (pt.r * pt.r); }

cplx w1_at(const RadialPoint& pt, const BlackHoleParams& p) {
  const cplx r_dr_alpha2 = 2.0 * p.m / pt.r - 2.0 / 3.0 * p.lambda * pt.r * pt.r;
  return pt.alpha2 / (pt.r * pt.r) * (r_dr_alpha2 - 0.25);
}

double potential_w0(double x, const BlackHoleParams& p) {
  const TortoiseContinuation tc(p);
  return w0_at(tc.at(cplx(x, 0.0), 0), p).real();
}

double potential_w1(double x, const BlackHoleParams& p) {
  const TortoiseContinuation tc(p);
  return w1_at(tc.at(cplx(x, 0.0), 0), p).real();
}

double potential_W(double x, double h, const BlackHoleParams& p) {
  const TortoiseContinuation tc(p);
  const RadialPoint pt = tc.at(cplx(x, 0.0), 0);
  return (w0_at(pt, p) + h * h * w1_at(pt, p)).real();
}

CriticalData critical_data(const BlackHoleParams& p) {
  p.validate();
  CriticalData c;
  c.r_crit = 3.0 * p.m;
  c.x0 = tortoise(c.r_crit, p);
  c.e0 = p.subextremality() / (27.0 * p.m * p.m);
  c.c0 = c.e0 * c.e0;
  // Independent evaluation from F = alpha^2 / r^2: F(3m), and alpha^4 F''(3m).
  const double r = c.r_crit;
  const double f = alpha_squared(r, p) / (r * r);
  const double fpp = 6.0 / std::pow(r, 4) - 24.0 * p.m / std::pow(r, 5);
  const double a2 = alpha_squared(r, p);
  const double c0_check = -0.5 * a2 * a2 * fpp;
  if (std::abs(f - c.e0) > 1e-12 * c.e0 || std::abs(c0_check - c.c0) > 1e-10 * c.c0)
    throw NumericalError("critical_data: closed forms disagree with direct evaluation");
  return c;
}

namespace {

// Series in u of (r_c + u)^{-1}.
Series1<cplx> inverse_radius(double rc, int n) {
  Series1<cplx> s(n);
  double t = 1.0 / rc;
  for (int k = 0; k <= n; ++k) {
    s[k] = t;
    t *= -1.0 / rc;
  }
  return s;
}

struct ShiftedSeries {
  Series1<cplx> u_of_x;     // r - r_c as a series in x - x0
  Series1<cplx> inv_r;      // 1 / r in u
  Series1<cplx> alpha2;     // alpha^2 in u
  Series1<cplx> radius_sq;  // r^2 in u
};

ShiftedSeries shifted_series(const BlackHoleParams& p, int n) {
  p.validate();
  if (n < 2 || n > 40) throw std::invalid_argument("shifted_potential_taylor: degree must be in [2, 40]");
  const double rc = 3.0 * p.m;
  ShiftedSeries s;
  s.inv_r = inverse_radius(rc, n);
  s.radius_sq = Series1<cplx>(n);
  s.radius_sq[0] = rc * rc;
  s.radius_sq[1] = 2.0 * rc;
  if (n >= 2) s.radius_sq[2] = 1.0;
  s.alpha2 = Series1<cplx>::constant(1.0, n) - s.inv_r * cplx(2.0 * p.m) - s.radius_sq * cplx(p.lambda / 3.0);
  const Series1<cplx> x_of_u = integral(reciprocal(s.alpha2)).truncated(n);
  s.u_of_x = revert(x_of_u);
  return s;
}

}  // namespace

Series1<cplx> shifted_potential_taylor(const BlackHoleParams& p, int n) {
  const ShiftedSeries s = shifted_series(p, n);
  const CriticalData c = critical_data(p);
  Series1<cplx> f_u = s.alpha2 * s.inv_r * s.inv_r;
  f_u[0] -= c.e0;
  Series1<cplx> v = compose(f_u, s.u_of_x);
  // The barrier top is a critical point with critical value E0.
  const double scale = c.e0;
  if (std::abs(v[0]) > 1e-13 * scale || std::abs(v[1]) > 1e-12 * scale)
    throw NumericalError("shifted_potential_taylor: expansion point is not critical");
  v[0] = 0.0;
  v[1] = 0.0;
  return v;
}

Series1<cplx> shifted_w1_taylor(const BlackHoleParams& p, int n) {
  const ShiftedSeries s = shifted_series(p, std::max(n, 2));
  Series1<cplx> bracket = s.inv_r * cplx(2.0 * p.m) - s.radius_sq * cplx(2.0 / 3.0 * p.lambda);
  bracket[0] -= 0.25;
  Series1<cplx> g_u = s.alpha2 * s.inv_r * s.inv_r * bracket;
  Series1<cplx> w = compose(g_u, s.u_of_x);
  return w.truncated(n);
}

TortoiseContinuation::TortoiseContinuation(const BlackHoleParams& p) : p_(p), hz_(horizon_roots(p)) {}

cplx TortoiseContinuation::x_of(cplx v) const {
  if (!hz_.has_cosmological) return 2.0 * p_.m + std::exp(v) + 2.0 * p_.m * v;
  const double span = hz_.r_plus - hz_.r_minus;
  const RadialPoint pt = point_of(v);
  // log(r - r_-) = log(span) - softplus(-u), log(r_+ - r) = log(span) - softplus(u)
  return hz_.a_zero * std::log(pt.r - hz_.r_zero) + (hz_.a_minus + hz_.a_plus) * std::log(span) -
         hz_.a_minus * softplus(-v) - hz_.a_plus * softplus(v);
}

cplx TortoiseContinuation::dx_of(cplx v) const {
  if (!hz_.has_cosmological) return std::exp(v) + 2.0 * p_.m;
  const RadialPoint pt = point_of(v);
  return pt.r / (p_.lambda / 3.0 * (pt.r - hz_.r_zero) * (hz_.r_plus - hz_.r_minus));
}

RadialPoint TortoiseContinuation::point_of(cplx v) const {
  RadialPoint pt;
  if (!hz_.has_cosmological) {
    const cplx d = std::exp(v);  // r - 2m
    pt.r = 2.0 * p_.m + d;
    pt.alpha2 = d / pt.r;
    return pt;
  }
  const double span = hz_.r_plus - hz_.r_minus;
  const cplx dm = span * std::exp(-softplus(-v));  // r - r_-
  const cplx dp = span * std::exp(-softplus(v));   // r_+ - r
  pt.r = v.real() < 0.0 ? hz_.r_minus + dm : hz_.r_plus - dp;
  pt.alpha2 = p_.lambda / 3.0 * (pt.r - hz_.r_zero) * dm * dp / pt.r;
  return pt;
}

double TortoiseContinuation::real_variable(double x) const {
  if (!std::isfinite(x)) throw std::domain_error("inverse_tortoise: non-finite argument");
  if (!hz_.has_cosmological) {
    // r = 2m (1 + omega(x / 2m - 1 - log 2m))
    const double w = wright_omega(x / (2.0 * p_.m) - 1.0 - std::log(2.0 * p_.m));
    if (w > 0.0) return std::log(2.0 * p_.m * w);
    return (x - 2.0 * p_.m) / (2.0 * p_.m);  // e^s negligible
  }
  // Safeguarded Newton on the monotone map u -> x(u), asymptotically linear.
  double lo = -1.0;
  double hi = 1.0;
  while (x_of(lo).real() > x) lo *= 2.0;
  while (x_of(hi).real() < x) hi *= 2.0;
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = x_of(u).real() - x;
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / dx_of(u).real();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * (1.0 + std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

RadialPoint TortoiseContinuation::at(cplx x, int steps) const {
  cplx v = real_variable(x.real());
  const double im = x.imag();
  if (im != 0.0) {
    steps = std::max(steps, 1);
    for (int s = 1; s <= steps; ++s) {
      const cplx target(x.real(), im * s / steps);
      for (int it = 0; it < 50; ++it) {
        const cplx dv = (x_of(v) - target) / dx_of(v);
        v -= dv;
        if (std::abs(dv) <= 1e-15 * (1.0 + std::abs(v))) break;
      }
    }
  }
  return point_of(v);
}

}  // namespace qnm
