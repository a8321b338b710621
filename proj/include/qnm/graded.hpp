// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "qnm/series.hpp"

namespace qnm {

template <class Poly>
struct GradingTraits;

// Univariate levels: total degree in (x, h), so h counts like one power of x.
template <class T>
struct GradingTraits<Series1<T>> {
  static constexpr int h_weight = 1;
  static Series1<T> make(int order) { return Series1<T>(order); }
};

// Phase-space levels: weight deg_z + deg_zeta + 2 deg_h.
template <class T>
struct GradingTraits<Series2<T>> {
  static constexpr int h_weight = 2;
  static Series2<T> make(int order) { return Series2<T>(order); }
};

/// Symbol sum_{k<=K} h^k a_k. Level k is truncated at order() - w k where w
/// is the h-weight of the grading, and levels with negative order are absent.
template <class Poly>
class HGradedSymbol {
 public:
  static constexpr int h_weight = GradingTraits<Poly>::h_weight;

  HGradedSymbol() : HGradedSymbol(0, 0) {}
  HGradedSymbol(int order, int h_order) : order_(order) {
    if (order < 0 || h_order < 0) throw std::invalid_argument("HGradedSymbol: negative order");
    const int kmax = std::min(h_order, order / h_weight);
    for (int k = 0; k <= kmax; ++k) levels_.push_back(GradingTraits<Poly>::make(order - h_weight * k));
  }

  int order() const { return order_; }
  int h_order() const { return static_cast<int>(levels_.size()) - 1; }
  int level_order(int k) const { return order_ - h_weight * k; }

  const Poly& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  Poly& level(int k) { return levels_.at(static_cast<std::size_t>(k)); }
  bool has_level(int k) const { return k >= 0 && k <= h_order(); }

  /// Stores a level, truncating it to the weight bound.
  void set_level(int k, const Poly& p) {
    if (p.order() < level_order(k)) throw std::invalid_argument("HGradedSymbol: level shorter than the weight bound");
    level(k) = p.truncated(level_order(k));
  }

  HGradedSymbol& operator+=(const HGradedSymbol& o) {
    shrink(o.order_, o.h_order());
    for (int k = 0; k <= h_order(); ++k) levels_[k] += o.levels_[k];
    return *this;
  }
  HGradedSymbol& operator-=(const HGradedSymbol& o) {
    shrink(o.order_, o.h_order());
    for (int k = 0; k <= h_order(); ++k) levels_[k] -= o.levels_[k];
    return *this;
  }
  template <class S>
  HGradedSymbol& operator*=(const S& s) {
    for (auto& l : levels_) l *= s;
    return *this;
  }
  friend HGradedSymbol operator+(HGradedSymbol a, const HGradedSymbol& b) { return a += b; }
  friend HGradedSymbol operator-(HGradedSymbol a, const HGradedSymbol& b) { return a -= b; }

  /// Restricts to a smaller weight bound and/or fewer h levels.
  HGradedSymbol truncated(int order, int h_order) const {
    if (order > order_ || h_order > this->h_order())
      throw std::invalid_argument("HGradedSymbol: cannot extend truncation");
    HGradedSymbol r(order, h_order);
    for (int k = 0; k <= r.h_order(); ++k) r.levels_[k] = levels_[k].truncated(r.level_order(k));
    return r;
  }

 private:
  void shrink(int order, int h_order) {
    if (order < order_ || h_order < this->h_order()) *this = truncated(std::min(order, order_), std::min(h_order, this->h_order()));
  }

  int order_;
  std::vector<Poly> levels_;
};

template <class T>
using GradedSeries1 = HGradedSymbol<Series1<T>>;
template <class T>
using PhaseSymbol = HGradedSymbol<Series2<T>>;

/// Univariate graded series as a bivariate series in (x, h).
template <class T>
Series2<T> to_xh(const GradedSeries1<T>& g) {
  Series2<T> r(g.order());
  for (int k = 0; k <= g.h_order(); ++k)
    for (int p = 0; p <= g.level_order(k); ++p) r.at(p, k) = g.level(k)[p];
  return r;
}

template <class T>
GradedSeries1<T> from_xh(const Series2<T>& s, int h_order) {
  GradedSeries1<T> r(s.order(), h_order);
  for (int k = 0; k <= r.h_order(); ++k)
    for (int p = 0; p <= r.level_order(k); ++p) r.level(k)[p] = s.at(p, k);
  return r;
}

template <class T>
GradedSeries1<T> operator*(const GradedSeries1<T>& a, const GradedSeries1<T>& b) {
  return from_xh(to_xh(a) * to_xh(b), std::min(a.h_order(), b.h_order()));
}

/// S(G(x;h);h), requires G(0;0) = 0.
template <class T>
GradedSeries1<T> compose(const GradedSeries1<T>& s, const GradedSeries1<T>& g) {
  const int order = std::min(s.order(), g.order());
  const int hk = std::min(s.h_order(), g.h_order());
  Series2<T> y = to_xh(g).truncated(order);
  if (!is_zero(y.at(0, 0))) throw std::invalid_argument("compose: inner symbol must vanish at (0,0)");
  Series2<T> acc(order);
  for (int j = 0; j <= std::min(hk, order); ++j) {
    Series2<T> sj = compose(s.level(j), y.truncated(order - j));
    sj.for_each_nonzero([&](int p, int k, const T& v) {
      if (p + k + j <= order) acc.at(p, k + j) += v;
    });
  }
  return from_xh(acc, hk);
}

/// Graded compositional inverse: G with S(G(x;h);h) = x.
/// Requires S_0(0) = 0 and S_0'(0) != 0.
template <class T>
GradedSeries1<T> functional_inverse(const GradedSeries1<T>& s) {
  const int order = s.order();
  const int hk = s.h_order();
  GradedSeries1<T> g(order, hk);
  g.level(0) = revert(s.level(0));
  if (hk == 0) return g;
  const Series1<T> slope = compose(derivative(s.level(0)), g.level(0).truncated(order - 1));
  for (int k = 1; k <= hk; ++k) {
    if (order - k < 0) break;
    GradedSeries1<T> r = compose(s, g);
    // S(G) = x + h^k [R_k + S_0'(G_0) delta] + ..., solve for the level-k correction.
    Series1<T> delta = r.level(k) * reciprocal(slope.truncated(order - k));
    for (int p = 0; p <= g.level_order(k); ++p) g.level(k)[p] -= delta[p];
  }
  return g;
}

/// Square root level by level; branch fixes the sign of sqrt(A_0(0)).
inline GradedSeries1<cplx> sqrt_graded(const GradedSeries1<cplx>& a, int branch = 1) {
  GradedSeries1<cplx> g(a.order(), a.h_order());
  g.level(0) = sqrt_series(a.level(0), branch);
  for (int k = 1; k <= g.h_order(); ++k) {
    const int n = g.level_order(k);
    Series1<cplx> acc = a.level(k).truncated(n);
    for (int j = 1; j < k; ++j) acc -= g.level(j).truncated(n) * g.level(k - j).truncated(n);
    g.level(k) = acc * reciprocal(2.0 * g.level(0).truncated(n));
  }
  return g;
}

/// Evaluates level k at x: G_k(x).
template <class T>
cplx level_value(const GradedSeries1<T>& g, int k, cplx x) {
  const auto& l = g.level(k);
  cplx acc = ScalarTraits<T>::to_complex(l[l.order()]);
  for (int p = l.order() - 1; p >= 0; --p) acc = acc * x + ScalarTraits<T>::to_complex(l[p]);
  return acc;
}

struct Realization {
  cplx value;
  int truncation_index = 0;  ///< last h power kept
  bool storage_limited = false;  ///< optimal index exceeded the stored levels
};

/// Growth constant A with |G_j(x)| <= A^{j+1} j! over the stored levels.
template <class T>
double estimate_growth(const GradedSeries1<T>& g, cplx x) {
  double a = 0.0;
  for (int j = 0; j <= g.h_order(); ++j) {
    const double mag = std::abs(level_value(g, j, x));
    if (mag == 0.0) continue;
    a = std::max(a, std::exp((std::log(mag) - std::lgamma(j + 1.0)) / (j + 1.0)));
  }
  return a;
}

/// Optimal truncation: sum of h^j G_j(x) for j <= floor(1/(e A h)).
template <class T>
Realization borel_realize(const GradedSeries1<T>& g, cplx x, double h, double growth_a) {
  if (!(h > 0.0) || !(growth_a > 0.0)) throw std::invalid_argument("borel_realize: h and A must be positive");
  const double jopt = std::floor(1.0 / (std::exp(1.0) * growth_a * h) * (1.0 + 1e-12));
  Realization r;
  const int limit = jopt > 1e6 ? 1000000 : static_cast<int>(jopt);
  r.truncation_index = std::min(limit, g.h_order());
  r.storage_limited = limit > g.h_order();
  cplx hp(1.0);
  r.value = 0.0;
  for (int j = 0; j <= r.truncation_index; ++j) {
    r.value += hp * level_value(g, j, x);
    hp *= h;
  }
  return r;
}

/// Laplace realization h^{-1} int_0^eps g(x,t) e^{-t/h} dt with the Borel
/// transform g = sum G_j t^j / j!; each level is damped by P(j+1, eps/h).
template <class T>
cplx borel_laplace_realize(const GradedSeries1<T>& g, cplx x, double h, double eps) {
  if (!(h > 0.0) || !(eps > 0.0)) throw std::invalid_argument("borel_laplace_realize: h and eps must be positive");
  cplx acc(0.0);
  double hp = 1.0;
  for (int j = 0; j <= g.h_order(); ++j) {
    acc += hp * boost::math::gamma_p(j + 1.0, eps / h) * level_value(g, j, x);
    hp *= h;
  }
  return acc;
}

}  // namespace qnm
