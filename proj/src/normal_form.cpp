// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnm {

namespace {

constexpr cplx kI{0.0, 1.0};

double max_quadratic(const Series2<cplx>& q) {
  return std::max({std::abs(q.coeff(2, 0)), std::abs(q.coeff(1, 1)), std::abs(q.coeff(0, 2))});
}

}  // namespace

bool quadratic_range_condition(const Series2<cplx>& q, int samples) {
  const cplx a = q.coeff(2, 0);
  const cplx b = q.coeff(1, 1);
  const cplx c = q.coeff(0, 2);
  const double scale = max_quadratic(q);
  if (scale == 0.0) return false;
  // q(cos t, sin t) has period pi; a zero winding number means the cone
  // spanned by the values is a proper sector.
  double winding = 0.0;
  double prev = 0.0;
  for (int j = 0; j <= samples; ++j) {
    const double t = std::numbers::pi * j / samples;
    const double x = std::cos(t);
    const double xi = std::sin(t);
    const cplx v = a * x * x + b * x * xi + c * xi * xi;
    if (std::abs(v) <= 1e-12 * scale) return false;
    const double arg = std::arg(v);
    if (j > 0) {
      double d = arg - prev;
      if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      winding += d;
    }
    prev = arg;
  }
  return std::abs(winding) < std::numbers::pi;
}

QuadraticReduction quad_reduce(const Series2<cplx>& q) {
  const cplx a = q.coeff(2, 0);
  const cplx b = q.coeff(1, 1);
  const cplx c = q.coeff(0, 2);
  const double scale = max_quadratic(q);
  if (scale == 0.0) throw NumericalError("quad_reduce: vanishing quadratic form");
  QuadraticReduction r;
  if (std::abs(a) <= 1e-15 * scale && std::abs(c) <= 1e-15 * scale) {
    r.mu = b;
    r.linmap = {1.0, 0.0, 0.0, 1.0};
    return r;
  }
  if (!quadratic_range_condition(q)) throw NumericalError("quad_reduce: quadratic form violates the range condition");
  // Roots of a t^2 + b t + c, so that q = a (x - t1 xi)(x - t2 xi).
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx s = std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc;
  const cplx qq = -0.5 * s;
  cplx t1 = qq / a;
  cplx t2 = c / qq;
  if (t1.imag() < t2.imag()) std::swap(t1, t2);
  const double tol = 1e-12 * std::max(std::abs(t1), std::abs(t2));
  if (!(t1.imag() > tol && t2.imag() < -tol)) throw NumericalError("quad_reduce: factor roots are not separated by the real axis");
  const cplx k = std::sqrt(1.0 / (t1 - t2));
  // z = k (x - t1 xi), zeta = k (x - t2 xi), inverted.
  r.linmap = {-t2 * k, t1 * k, -k, k};
  r.mu = a * (t1 - t2);
  return r;
}

QuadraticReduction swap_reduction(const QuadraticReduction& r) {
  QuadraticReduction s;
  s.mu = -r.mu;
  s.linmap = {-r.linmap[1], r.linmap[0], -r.linmap[3], r.linmap[2]};
  return s;
}

NormalFormResult classical_bnf(const Series2<cplx>& p_taylor, int degree) {
  if (degree < 2 || p_taylor.order() < 2) throw std::invalid_argument("classical_bnf: degree must be at least 2");
  return classical_bnf(p_taylor, degree, quad_reduce(p_taylor.homogeneous(2)));
}

NormalFormResult classical_bnf(const Series2<cplx>& p_taylor, int degree, const QuadraticReduction& red) {
  if (degree < 2) throw std::invalid_argument("classical_bnf: degree must be at least 2");
  if (p_taylor.order() < degree) throw std::invalid_argument("classical_bnf: symbol known to lower degree than requested");
  const Series2<cplx> p = p_taylor.truncated(degree);
  const double scale = max_quadratic(p);
  if (std::abs(p.at(0, 0)) > 1e-13 * scale || std::abs(p.at(1, 0)) > 1e-13 * scale || std::abs(p.at(0, 1)) > 1e-13 * scale)
    throw std::invalid_argument("classical_bnf: constant and linear parts must vanish");

  NormalFormResult out;
  out.reduction = red;
  out.mu = red.mu;
  const auto& l = red.linmap;
  Series2<cplx> cur = linear_substitute(p, l[0], l[1], l[2], l[3]);
  if (std::abs(cur.at(1, 1) - red.mu) > 1e-12 * std::abs(red.mu) || std::abs(cur.at(2, 0)) > 1e-12 * std::abs(red.mu) ||
      std::abs(cur.at(0, 2)) > 1e-12 * std::abs(red.mu))
    throw NumericalError("classical_bnf: reduction does not diagonalize the quadratic part");
  cur.at(0, 0) = 0.0;
  cur.at(1, 0) = 0.0;
  cur.at(0, 1) = 0.0;
  cur.at(2, 0) = 0.0;
  cur.at(0, 2) = 0.0;
  cur.at(1, 1) = red.mu;

  const cplx inv_mu = 1.0 / red.mu;
  for (int d = 3; d <= degree; ++d) {
    const HomologicalSolution<cplx> sol = homological_solve(cur.homogeneous(d) * inv_mu, false);
    if (sol.a.is_zero_series()) continue;
    Series2<cplx> chi = sol.a * (-kI);
    cur = lie_transform(chi, cur);
    for (int n = 0; n <= d; ++n)
      if (2 * n != d) cur.at(d - n, n) = 0.0;
    out.generators.push_back(std::move(chi));
  }
  out.normalized = cur;

  const int gn = degree / 2;
  out.g_w = Series1<cplx>(gn);
  for (int k = 0; k <= gn; ++k) out.g_w[k] = cur.at(k, k);
  out.g = out.g_w * inv_mu;
  out.f = gn >= 1 ? derivative(revert(out.g)) : Series1<cplx>::constant(1.0, 0);
  out.S = integral(out.f) * (2.0 * std::numbers::pi * inv_mu);
  return out;
}

AveragingResult quantum_average(const PhaseSymbol<cplx>& q) {
  const Series2<cplx>& q0 = q.level(0);
  if (q0.order() < 2 || std::abs(q0.at(1, 1) - 1.0) > 1e-10 || std::abs(q0.at(2, 0)) > 1e-10 ||
      std::abs(q0.at(0, 2)) > 1e-10 || std::abs(q0.at(0, 0)) > 1e-10 || std::abs(q0.at(1, 0)) > 1e-10 ||
      std::abs(q0.at(0, 1)) > 1e-10)
    throw std::invalid_argument("quantum_average: principal symbol must start with z zeta");
  const int order = q.order();
  const int hk = q.h_order();
  AveragingResult out;
  PhaseSymbol<cplx> cur = q;
  for (int w = 3; w <= order; ++w) {
    PhaseSymbol<cplx> chi(order, hk);
    bool any = false;
    for (int k = 0; k <= hk; ++k) {
      const int d = w - 2 * k;
      if (d < 0) break;
      if (d > cur.level_order(k)) continue;
      const HomologicalSolution<cplx> sol = homological_solve(cur.level(k).homogeneous(d), false);
      if (sol.a.is_zero_series()) continue;
      chi.level(k) = sol.a * (-kI);
      any = true;
    }
    if (!any) continue;
    cur = moyal_lie_transform(chi, cur);
    for (int k = 0; k <= cur.h_order(); ++k) {
      const int d = w - 2 * k;
      if (d < 0 || d > cur.level_order(k)) continue;
      for (int n = 0; n <= d; ++n)
        if (2 * n != d) cur.level(k).at(d - n, n) = 0.0;
    }
    out.generators.push_back(std::move(chi));
  }
  out.symbol = cur;
  out.average = diagonal_symbol(cur);
  return out;
}

PhaseSymbol<cplx> scaled_symbol_taylor(const BlackHoleParams& p, int degree, int h_order, double theta) {
  if (degree < 2) throw std::invalid_argument("scaled_symbol_taylor: degree must be at least 2");
  if (!(theta >= 0.0 && theta <= 0.4)) throw std::invalid_argument("scaled_symbol_taylor: theta must lie in [0, 0.4]");
  const cplx beta(1.0, theta);
  const Series1<cplx> v = shifted_potential_taylor(p, degree);
  PhaseSymbol<cplx> sym(degree, h_order);
  sym.level(0).at(0, 2) = 1.0 / (beta * beta);
  cplx bp = beta * beta;
  for (int k = 2; k <= degree; ++k) {
    sym.level(0).at(k, 0) = v[k] * bp;
    bp *= beta;
  }
  if (sym.has_level(2)) {
    const int n = sym.level_order(2);
    const Series1<cplx> w1 = shifted_w1_taylor(p, n);
    bp = 1.0;
    for (int k = 0; k <= n; ++k) {
      sym.level(2).at(k, 0) = w1[k] * bp;
      bp *= beta;
    }
  }
  return sym;
}

NormalFormResult qnm_symbol(const BlackHoleParams& p, int degree, int h_order, double theta) {
  if (h_order < 0 || degree < 2 * h_order + 4) throw std::invalid_argument("qnm_symbol: degree must be at least 2 h_order + 4");
  const CriticalData crit = critical_data(p);
  if (crit.e0 < 1e-6) throw NumericalError("qnm_symbol: barrier height below 1e-6, normal form degenerates");

  const PhaseSymbol<cplx> sym = scaled_symbol_taylor(p, degree, h_order, theta);
  QuadraticReduction red = quad_reduce(sym.level(0).homogeneous(2));
  if (red.mu.real() < 0.0) red = swap_reduction(red);
  NormalFormResult nf = classical_bnf(sym.level(0), degree, red);

  // Quantum conjugation by the classical generators, then f(Q) with f = g_w^{-1}.
  const auto& l = red.linmap;
  PhaseSymbol<cplx> q = linear_substitute(sym, l[0], l[1], l[2], l[3]);
  for (const auto& chi : nf.generators) q = moyal_lie_transform(phase_from_series(chi, h_order), q);
  const Series1<cplx> f_inv = revert(nf.g_w);
  const PhaseSymbol<cplx> qn = moyal_function(f_inv, q);
  const AveragingResult avg = quantum_average(qn);

  // F = g_w(b) as operators; both are functions of the model operator s.
  GradedSeries1<cplx> b_spec = weyl_to_spectral(avg.average);
  if (std::abs(b_spec.level(0)[0]) > 1e-12) throw NumericalError("qnm_symbol: averaged symbol has a constant term");
  b_spec.level(0)[0] = 0.0;
  GradedSeries1<cplx> gw(b_spec.order(), b_spec.h_order());
  gw.level(0) = nf.g_w.truncated(std::min(nf.g_w.order(), gw.level_order(0)));
  nf.g_spec = compose(gw, b_spec);

  GradedSeries1<cplx> z = nf.g_spec;
  for (int k = 0; k <= z.h_order(); ++k) {
    cplx pw = 1.0;
    for (int j = 0; j <= z.level_order(k); ++j) {
      z.level(k)[j] *= pw;
      pw *= kLatticeArgumentScale;
    }
  }
  z.level(0)[0] += crit.e0;
  nf.G_qnm = sqrt_graded(z, 1);
  if (nf.G_qnm.order() >= 1 && !(nf.G_qnm.level(0)[1].imag() < 0.0))
    throw NumericalError("qnm_symbol: symbol branch does not decay into the lower half-plane");
  return nf;
}

}  // namespace qnm
