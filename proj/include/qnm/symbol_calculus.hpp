// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qnm/graded.hpp"
#include "qnm/series.hpp"

// Phase-space symbols in the complex variables (z, zeta), with the bracket
// {f, g} = f_zeta g_z - f_z g_zeta, so that {z^a zeta^b, z zeta} = (b - a) z^a zeta^b.

namespace qnm {

namespace detail {

template <class T>
struct FactorialTables {
  // ff[m][r] = m! / (m - r)!
  std::vector<std::vector<T>> ff;
  // moyal[j][r] = (i/2)^j / j! * C(j, r) * (-1)^(j - r)
  std::vector<std::vector<T>> moyal;

  explicit FactorialTables(int n) {
    ff.resize(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
      ff[m].push_back(T(1));
      for (int r = 1; r <= m; ++r) ff[m].push_back(ff[m][r - 1] * T(m - r + 1));
    }
    T pw(1);
    T fact(1);
    const T half_i = imag_unit<T>() / T(2);
    for (int j = 0; j <= n; ++j) {
      if (j > 0) {
        pw *= half_i;
        fact *= T(j);
      }
      std::vector<T> row;
      T binom(1);
      for (int r = 0; r <= j; ++r) {
        if (r > 0) binom = binom * T(j - r + 1) / T(r);
        T c = pw / fact * binom;
        if ((j - r) % 2 == 1) c = -c;
        row.push_back(c);
      }
      moyal.push_back(std::move(row));
    }
  }
};

inline int sat_add(int a, int b) {
  const long s = static_cast<long>(a) + b;
  return s > std::numeric_limits<int>::max() / 2 ? std::numeric_limits<int>::max() / 2 : static_cast<int>(s);
}

}  // namespace detail

/// Lowest weight deg + 2 k over nonzero terms; a large value for zero.
template <class T>
int lowest_weight(const PhaseSymbol<T>& a) {
  int best = std::numeric_limits<int>::max() / 2;
  for (int k = 0; k <= a.h_order(); ++k) {
    const int low = a.level(k).low_degree();
    if (low <= a.level(k).order()) best = std::min(best, low + 2 * k);
  }
  return best;
}

/// The constant symbol c with the given truncation.
template <class T>
PhaseSymbol<T> phase_constant(const T& c, int order, int h_order) {
  PhaseSymbol<T> r(order, h_order);
  r.level(0).at(0, 0) = c;
  return r;
}

/// Embeds an h-independent series as level 0 of a phase symbol.
template <class T>
PhaseSymbol<T> phase_from_series(const Series2<T>& a, int h_order) {
  PhaseSymbol<T> r(a.order(), h_order);
  r.level(0) = a;
  return r;
}

/// Declares an exact polynomial symbol known to a larger weight (zero padding).
template <class T>
PhaseSymbol<T> as_polynomial_of_order(const PhaseSymbol<T>& a, int order, int h_order) {
  PhaseSymbol<T> r(order, h_order);
  for (int k = 0; k <= std::min(a.h_order(), r.h_order()); ++k)
    r.level(k) = a.level(k).as_polynomial_of_order(r.level_order(k));
  return r;
}

/// Poisson bracket of h-independent series.
template <class T>
Series2<T> poisson(const Series2<T>& a, const Series2<T>& b) {
  const int la = a.low_degree();
  const int lb = b.low_degree();
  int order = std::min(std::min(a.order(), b.order()), std::min(detail::sat_add(a.order(), lb), detail::sat_add(b.order(), la)) - 2);
  order = std::max(order, 0);
  Series2<T> r(order);
  a.for_each_nonzero([&](int m1, int n1, const T& va) {
    b.for_each_nonzero([&](int m2, int n2, const T& vb) {
      const int m = m1 + m2 - 1;
      const int n = n1 + n2 - 1;
      if (m < 0 || n < 0 || m + n > order) return;
      // d_zeta a * d_z b - d_z a * d_zeta b
      T c = T(n1 * m2 - m1 * n2);
      if (!is_zero(c)) r.at(m, n) += va * vb * c;
    });
  });
  return r;
}

namespace detail {

// Core of the star product; odd_only/bracket select the commutator form.
template <class T>
PhaseSymbol<T> star(const PhaseSymbol<T>& a, const PhaseSymbol<T>& b, bool bracket) {
  const int la = lowest_weight(a);
  const int lb = lowest_weight(b);
  const int shift = bracket ? 2 : 0;
  int order = std::min(std::min(a.order(), b.order()), std::min(sat_add(a.order(), lb), sat_add(b.order(), la)) - shift);
  order = std::max(order, 0);
  const int hk = std::min(a.h_order(), b.h_order());
  PhaseSymbol<T> r(order, hk);
  const FactorialTables<T> tab(std::max(a.order(), b.order()) + 1);
  const T two_i = imag_unit<T>() * T(2);
  for (int ka = 0; ka <= a.h_order(); ++ka) {
    for (int kb = 0; kb <= b.h_order(); ++kb) {
      if (ka + kb > r.h_order()) continue;
      a.level(ka).for_each_nonzero([&](int m1, int n1, const T& va) {
        b.level(kb).for_each_nonzero([&](int m2, int n2, const T& vb) {
          const int jmax = std::min(std::min(m1, n2) + std::min(n1, m2), std::min(m1 + n1, m2 + n2));
          for (int j = bracket ? 1 : 0; j <= jmax; j += bracket ? 2 : 1) {
            const int level = ka + kb + j - (bracket ? 1 : 0);
            if (level > r.h_order()) break;
            const int m = m1 + m2 - j;
            const int n = n1 + n2 - j;
            if (m < 0 || n < 0 || m + n > r.level_order(level)) continue;
            T acc(0);
            for (int s = 0; s <= j; ++s) {
              // d_z^s d_zeta^{j-s} a times d_z^{j-s} d_zeta^s b
              if (s > m1 || j - s > n1 || j - s > m2 || s > n2) continue;
              acc += tab.moyal[j][s] * tab.ff[m1][s] * tab.ff[n1][j - s] * tab.ff[m2][j - s] * tab.ff[n2][s];
            }
            if (is_zero(acc)) continue;
            if (bracket) acc *= two_i;
            r.level(level).at(m, n) += acc * va * vb;
          }
        });
      });
    }
  }
  return r;
}

}  // namespace detail

/// Weyl (Moyal) product a # b.
template <class T>
PhaseSymbol<T> moyal_product(const PhaseSymbol<T>& a, const PhaseSymbol<T>& b) {
  return detail::star(a, b, false);
}

/// Moyal bracket (i/h)(a # b - b # a); its h^0 part is the Poisson bracket.
template <class T>
PhaseSymbol<T> moyal_bracket(const PhaseSymbol<T>& a, const PhaseSymbol<T>& b) {
  return detail::star(a, b, true);
}

/// exp(ad_chi) p with ad_chi = {chi, .}.
template <class T>
Series2<T> lie_transform(const Series2<T>& chi, const Series2<T>& p) {
  Series2<T> result = p;
  Series2<T> term = p;
  for (int k = 1; k <= p.order() + 1; ++k) {
    term = poisson(chi, term) * (T(1) / T(k));
    if (term.is_zero_series()) break;
    result += term;
  }
  return result;
}

/// exp(ad_chi) q with the Moyal bracket; equals e^{a} # q # e^{-a}, a = (i/h) chi.
template <class T>
PhaseSymbol<T> moyal_lie_transform(const PhaseSymbol<T>& chi, const PhaseSymbol<T>& q) {
  PhaseSymbol<T> result = q;
  PhaseSymbol<T> term = q;
  for (int k = 1; k <= q.order() + 1; ++k) {
    term = moyal_bracket(chi, term);
    term *= T(1) / T(k);
    if (lowest_weight(term) > term.order()) break;
    result += term;
  }
  return result;
}

/// Moyal exponential sum_k a^{#k} / k!; requires a with positive lowest weight.
template <class T>
PhaseSymbol<T> moyal_exp(const PhaseSymbol<T>& a) {
  if (lowest_weight(a) < 1) throw std::invalid_argument("moyal_exp: symbol must have positive lowest weight");
  PhaseSymbol<T> result = phase_constant(T(1), a.order(), a.h_order());
  PhaseSymbol<T> term = result;
  for (int k = 1; k <= a.order(); ++k) {
    term = moyal_product(term, a);
    term *= T(1) / T(k);
    if (lowest_weight(term) > term.order()) break;
    result += term;
  }
  return result;
}

/// f(q) in the Moyal functional calculus: sum_k f_k q^{#k}.
template <class T>
PhaseSymbol<T> moyal_function(const Series1<T>& f, const PhaseSymbol<T>& q) {
  const int lw = lowest_weight(q);
  if (lw < 1) throw std::invalid_argument("moyal_function: symbol must have positive lowest weight");
  PhaseSymbol<T> result = phase_constant(f[0], q.order(), q.h_order());
  PhaseSymbol<T> power = phase_constant(T(1), q.order(), q.h_order());
  for (int k = 1; k <= q.order(); ++k) {
    power = moyal_product(power, q);
    if (lowest_weight(power) > power.order()) break;
    if (k > f.order()) throw std::invalid_argument("moyal_function: outer series truncated too early");
    PhaseSymbol<T> t = power;
    t *= f[k];
    result += t;
  }
  return result;
}

template <class T>
struct HomologicalSolution {
  Series2<T> a;      ///< off-diagonal solution
  Series1<T> r_avg;  ///< diagonal coefficients as a series in w = z zeta
};

/// Solves i (z d_z - zeta d_zeta) a = -r + <r>, with a_{mn} = i r_{mn} / (m - n)
/// and <r> the diagonal part. With strip_diagonal false the diagonal is
/// neither collected nor checked.
template <class T>
HomologicalSolution<T> homological_solve(const Series2<T>& r, bool strip_diagonal = true) {
  HomologicalSolution<T> out{Series2<T>(r.order()), Series1<T>(r.order() / 2)};
  const T i = imag_unit<T>();
  r.for_each_nonzero([&](int m, int n, const T& v) {
    if (m != n) {
      out.a.at(m, n) = i * v / T(m - n);
    } else if (strip_diagonal) {
      out.r_avg[m] = v;
    }
  });
  return out;
}

template <class T>
bool is_diagonal(const Series2<T>& a) {
  bool diag = true;
  a.for_each_nonzero([&](int m, int n, const T&) { diag = diag && m == n; });
  return diag;
}

template <class T>
Series2<T> off_diagonal(const Series2<T>& a) {
  Series2<T> r(a.order());
  a.for_each_nonzero([&](int m, int n, const T& v) {
    if (m != n) r.at(m, n) = v;
  });
  return r;
}

/// Diagonal part of each level as a graded series in w = z zeta: the level-k
/// w-degree is bounded by (order - 2k) / 2, i.e. total degree order/2 in (w, h).
template <class T>
GradedSeries1<T> diagonal_symbol(const PhaseSymbol<T>& a) {
  GradedSeries1<T> r(a.order() / 2, a.h_order());
  for (int k = 0; k <= r.h_order(); ++k)
    for (int p = 0; p <= r.level_order(k); ++p) r.level(k)[p] = a.level(k).at(p, p);
  return r;
}

/// Inverse of diagonal_symbol.
template <class T>
PhaseSymbol<T> symbol_from_diagonal(const GradedSeries1<T>& g) {
  PhaseSymbol<T> r(2 * g.order(), g.h_order());
  for (int k = 0; k <= std::min(r.h_order(), g.h_order()); ++k)
    for (int p = 0; p <= g.level_order(k); ++p) r.level(k).at(p, p) = g.level(k)[p];
  return r;
}

template <class T>
PhaseSymbol<T> linear_substitute(const PhaseSymbol<T>& a, const T& l11, const T& l12, const T& l21, const T& l22) {
  PhaseSymbol<T> r(a.order(), a.h_order());
  for (int k = 0; k <= a.h_order(); ++k) r.level(k) = linear_substitute(a.level(k), l11, l12, l21, l22);
  return r;
}

/// Coefficients of t (t - 1) ... (t - n + 1).
template <class T>
Series1<T> falling_factorial_poly(int n) {
  Series1<T> p = Series1<T>::constant(T(1), n);
  for (int j = 0; j < n; ++j) {
    Series1<T> q(n);
    for (int k = n; k >= 0; --k) {
      q[k] = -T(j) * p[k];
      if (k > 0) q[k] += p[k - 1];
    }
    p = q;
  }
  return p;
}

/// Diagonal Weyl symbol F(w; h) to the classical (z-left, D-right) symbol:
/// exp((h / 2i) d_z d_zeta) acting on w^a.
template <class T>
GradedSeries1<T> weyl_to_classical_diagonal(const GradedSeries1<T>& f) {
  GradedSeries1<T> c(f.order(), f.h_order());
  const T step = T(1) / (T(2) * imag_unit<T>());
  for (int k = 0; k <= f.h_order(); ++k) {
    for (int a = 0; a <= f.level_order(k); ++a) {
      const T& v = f.level(k)[a];
      if (is_zero(v)) continue;
      T coef(1);  // step^j / j! * (a! / (a - j)!)^2
      for (int j = 0; j <= a && k + j <= c.h_order(); ++j) {
        if (j > 0) coef = coef * step / T(j) * T(a - j + 1) * T(a - j + 1);
        c.level(k + j)[a - j] += coef * v;
      }
    }
  }
  return c;
}

/// Classical diagonal symbol sum c_{k,a} h^k w^a to the function g(s; h) with
/// z^a (hD)^a = prod_{j<a} (s + i h (j + 1/2)), s = z hD + h / (2i).
template <class T>
GradedSeries1<T> classical_diagonal_to_spectral(const GradedSeries1<T>& c) {
  const int order = c.order();
  const T i = imag_unit<T>();
  // factors[a] = prod_{j<a} (s + i h (j + 1/2)) as a series in (s, h)
  std::vector<Series2<T>> factors{Series2<T>::constant(T(1), order)};
  for (int a = 1; a <= order; ++a) {
    Series2<T> lin = Series2<T>::monomial(1, 0, T(1), order) +
                     Series2<T>::monomial(0, 1, i * (T(2 * (a - 1) + 1) / T(2)), order);
    factors.push_back(factors.back() * lin);
  }
  Series2<T> acc(order);
  for (int k = 0; k <= c.h_order(); ++k) {
    for (int a = 0; a <= c.level_order(k); ++a) {
      const T& v = c.level(k)[a];
      if (is_zero(v)) continue;
      factors[a].for_each_nonzero([&](int p, int q, const T& w) {
        if (p + q + k <= order) acc.at(p, q + k) += v * w;
      });
    }
  }
  return from_xh(acc, c.h_order());
}

/// Diagonal Weyl symbol to g(s; h): the eigenvalue on z^n is g(-i h (n + 1/2); h).
template <class T>
GradedSeries1<T> weyl_to_spectral(const GradedSeries1<T>& f) {
  return classical_diagonal_to_spectral(weyl_to_classical_diagonal(f));
}

}  // namespace qnm
