// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qnm/scalar.hpp"

namespace qnm {

/// Truncated power series sum_{k<=N} a_k z^k. Coefficients above the
/// truncation order are unknown, not zero.
template <class T>
class Series1 {
 public:
  Series1() : c_(1, T(0)) {}
  explicit Series1(int order) : c_(checked(order) + 1, T(0)) {}
  explicit Series1(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("Series1: empty coefficient list");
  }

  static Series1 constant(const T& c, int order) {
    Series1 s(order);
    s.c_[0] = c;
    return s;
  }
  static Series1 identity(int order) {
    Series1 s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<T>& coeffs() const { return c_; }

  Series1 truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("Series1: cannot extend truncation order");
    return Series1(std::vector<T>(c_.begin(), c_.begin() + order + 1));
  }

  /// Lowest degree with a nonzero coefficient, order()+1 for the zero series.
  int low_degree() const {
    for (int k = 0; k <= order(); ++k)
      if (!is_zero(c_[k])) return k;
    return order() + 1;
  }

  template <class U>
  U evaluate(const U& z) const {
    U acc = U(c_.back());
    for (int k = order() - 1; k >= 0; --k) acc = acc * z + U(c_[k]);
    return acc;
  }

  Series1& operator+=(const Series1& o) {
    resize_min(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series1& operator-=(const Series1& o) {
    resize_min(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series1& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
  friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
  friend Series1 operator-(Series1 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Series1 operator*(Series1 a, const T& s) { return a *= s; }
  friend Series1 operator*(const T& s, Series1 a) { return a *= s; }

  friend Series1 operator*(const Series1& a, const Series1& b) {
    const int n = std::min(a.order(), b.order());
    Series1 r(n);
    for (int i = 0; i <= n; ++i) {
      if (is_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

 private:
  static int checked(int order) {
    if (order < 0) throw std::invalid_argument("Series1: negative truncation order");
    return order;
  }
  void resize_min(int order) {
    if (order < this->order()) c_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<T> c_;
};

template <class T>
Series1<T> derivative(const Series1<T>& a) {
  if (a.order() < 1) throw std::invalid_argument("derivative: truncation order must be >= 1");
  Series1<T> r(a.order() - 1);
  for (int k = 1; k <= a.order(); ++k) r[k - 1] = a[k] * T(k);
  return r;
}

/// Antiderivative vanishing at 0; the result is known to one order higher.
template <class T>
Series1<T> integral(const Series1<T>& a) {
  Series1<T> r(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) r[k + 1] = a[k] / T(k + 1);
  return r;
}

/// f(g(z)), requires g(0) = 0.
template <class T>
Series1<T> compose(const Series1<T>& f, const Series1<T>& g) {
  if (!is_zero(g[0])) throw std::invalid_argument("compose: inner series must vanish at 0");
  const int n = std::min(f.order(), g.order());
  Series1<T> gg = g.truncated(n);
  Series1<T> acc = Series1<T>::constant(f[n], n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * gg;
    acc[0] += f[k];
  }
  return acc;
}

template <class T>
Series1<T> reciprocal(const Series1<T>& a) {
  if (is_zero(a[0])) throw std::domain_error("reciprocal: constant term is zero");
  const int n = a.order();
  Series1<T> r(n);
  const T inv0 = T(1) / a[0];
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    T s(0);
    for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s * inv0;
  }
  return r;
}

/// Square root with s(0) = branch * principal sqrt(a(0)), branch = +1 or -1.
inline Series1<cplx> sqrt_series(const Series1<cplx>& a, int branch = 1) {
  if (a[0] == cplx(0.0)) throw std::domain_error("sqrt_series: constant term is zero");
  if (branch != 1 && branch != -1) throw std::invalid_argument("sqrt_series: branch must be +1 or -1");
  const int n = a.order();
  Series1<cplx> s(n);
  s[0] = static_cast<double>(branch) * std::sqrt(a[0]);
  const cplx inv = 1.0 / (2.0 * s[0]);
  for (int k = 1; k <= n; ++k) {
    cplx acc = a[k];
    for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc * inv;
  }
  return s;
}

/// Compositional inverse: returns G with S(G(x)) = x. Requires S(0) = 0, S'(0) != 0.
template <class T>
Series1<T> revert(const Series1<T>& s) {
  if (s.order() < 1) throw std::invalid_argument("revert: truncation order must be >= 1");
  if (!is_zero(s[0])) throw std::invalid_argument("revert: series must vanish at 0");
  if (is_zero(s[1])) throw std::domain_error("revert: linear coefficient is zero");
  const int n = s.order();
  const T inv1 = T(1) / s[1];
  Series1<T> g(n);
  g[1] = inv1;
  for (int k = 2; k <= n; ++k) {
    Series1<T> r = compose(s, g);
    g[k] = -r[k] * inv1;
  }
  return g;
}

/// Solution of g' = 1 / f(g), g(0) = 0, i.e. the inverse of t = int_0^g f.
template <class T>
Series1<T> ode_g_from_f(const Series1<T>& f) {
  if (is_zero(f[0])) throw std::domain_error("ode_g_from_f: f(0) must be nonzero");
  return revert(integral(f));
}

/// Bivariate truncated series sum_{m+n<=N} a_{mn} z^m w^n (total degree).
template <class T>
class Series2 {
 public:
  Series2() : n_(0), c_(1, T(0)) {}
  explicit Series2(int order) : n_(order), c_(size_for(order), T(0)) {}

  static Series2 constant(const T& c, int order) {
    Series2 s(order);
    s.c_[0] = c;
    return s;
  }
  static Series2 monomial(int m, int n, const T& c, int order) {
    Series2 s(order);
    if (m + n <= order) s.at(m, n) = c;
    return s;
  }

  int order() const { return n_; }
  static std::size_t index(int m, int n) {
    const int d = m + n;
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(d + 1) / 2 + static_cast<std::size_t>(n);
  }
  const T& at(int m, int n) const { return c_[checked_index(m, n)]; }
  T& at(int m, int n) { return c_[checked_index(m, n)]; }
  T coeff(int m, int n) const {
    if (m < 0 || n < 0 || m + n > n_) return T(0);
    return c_[index(m, n)];
  }

  template <class F>
  void for_each_nonzero(F&& f) const {
    for (int d = 0; d <= n_; ++d)
      for (int n = 0; n <= d; ++n) {
        const T& v = c_[index(d - n, n)];
        if (!is_zero(v)) f(d - n, n, v);
      }
  }

  Series2 truncated(int order) const {
    if (order > n_) throw std::invalid_argument("Series2: cannot extend truncation order");
    Series2 r(order);
    std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(size_for(order)), r.c_.begin());
    return r;
  }

  /// Same polynomial content, declared known to a higher order (zero padding).
  /// Only valid when the series represents an exact polynomial.
  Series2 as_polynomial_of_order(int order) const {
    if (order < n_) return truncated(order);
    Series2 r(order);
    std::copy(c_.begin(), c_.end(), r.c_.begin());
    return r;
  }

  int low_degree() const {
    for (int d = 0; d <= n_; ++d)
      for (int n = 0; n <= d; ++n)
        if (!is_zero(c_[index(d - n, n)])) return d;
    return n_ + 1;
  }

  bool is_zero_series() const { return low_degree() > n_; }

  Series2 homogeneous(int d) const {
    Series2 r(n_);
    if (d < 0 || d > n_) return r;
    for (int n = 0; n <= d; ++n) r.at(d - n, n) = at(d - n, n);
    return r;
  }

  template <class U>
  U evaluate(const U& z, const U& w) const {
    U acc(0);
    for (int m = n_; m >= 0; --m) {
      U inner(0);
      for (int n = n_ - m; n >= 0; --n) inner = inner * w + U(at(m, n));
      acc = acc * z + inner;
    }
    return acc;
  }

  Series2& operator+=(const Series2& o) {
    shrink(o.n_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series2& operator-=(const Series2& o) {
    shrink(o.n_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series2& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator-(Series2 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Series2 operator*(Series2 a, const T& s) { return a *= s; }
  friend Series2 operator*(const T& s, Series2 a) { return a *= s; }

  friend Series2 operator*(const Series2& a, const Series2& b) {
    const int order = std::min(a.n_, b.n_);
    Series2 r(order);
    a.for_each_nonzero([&](int m1, int n1, const T& va) {
      if (m1 + n1 > order) return;
      b.for_each_nonzero([&](int m2, int n2, const T& vb) {
        if (m1 + n1 + m2 + n2 <= order) r.at(m1 + m2, n1 + n2) += va * vb;
      });
    });
    return r;
  }

  friend bool operator==(const Series2& a, const Series2& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

 private:
  static std::size_t size_for(int order) {
    if (order < 0) throw std::invalid_argument("Series2: negative truncation order");
    return index(0, order) + 1;
  }
  std::size_t checked_index(int m, int n) const {
    if (m < 0 || n < 0 || m + n > n_) throw std::out_of_range("Series2: exponent beyond truncation order");
    return index(m, n);
  }
  void shrink(int order) {
    if (order < n_) {
      c_.resize(size_for(order));
      n_ = order;
    }
  }

  int n_;
  std::vector<T> c_;
};

template <class T>
Series2<T> d_first(const Series2<T>& a) {
  if (a.order() < 1) throw std::invalid_argument("d_first: truncation order must be >= 1");
  Series2<T> r(a.order() - 1);
  a.for_each_nonzero([&](int m, int n, const T& v) {
    if (m > 0) r.at(m - 1, n) = v * T(m);
  });
  return r;
}

template <class T>
Series2<T> d_second(const Series2<T>& a) {
  if (a.order() < 1) throw std::invalid_argument("d_second: truncation order must be >= 1");
  Series2<T> r(a.order() - 1);
  a.for_each_nonzero([&](int m, int n, const T& v) {
    if (n > 0) r.at(m, n - 1) = v * T(n);
  });
  return r;
}

/// f(Y) for univariate f and bivariate Y with Y(0,0) = 0.
template <class T>
Series2<T> compose(const Series1<T>& f, const Series2<T>& y) {
  if (!is_zero(y.at(0, 0))) throw std::invalid_argument("compose: inner series must vanish at 0");
  const int n = std::min(f.order(), y.order());
  Series2<T> yy = y.truncated(n);
  Series2<T> acc = Series2<T>::constant(f[n], n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * yy;
    acc.at(0, 0) += f[k];
  }
  return acc;
}

/// a(L11 z + L12 w, L21 z + L22 w); degree preserving so the order is kept.
template <class T>
Series2<T> linear_substitute(const Series2<T>& a, const T& l11, const T& l12, const T& l21, const T& l22) {
  const int n = a.order();
  Series2<T> u = Series2<T>::monomial(1, 0, l11, n) + Series2<T>::monomial(0, 1, l12, n);
  Series2<T> v = Series2<T>::monomial(1, 0, l21, n) + Series2<T>::monomial(0, 1, l22, n);
  std::vector<Series2<T>> upow{Series2<T>::constant(T(1), n)};
  std::vector<Series2<T>> vpow{Series2<T>::constant(T(1), n)};
  for (int k = 1; k <= n; ++k) {
    upow.push_back(upow.back() * u);
    vpow.push_back(vpow.back() * v);
  }
  Series2<T> r(n);
  a.for_each_nonzero([&](int m, int k, const T& c) { r += (upow[m] * vpow[k]) * c; });
  return r;
}

}  // namespace qnm
