// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qnm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int top_index(const Series1<cplx>& s) {
  for (int k = s.order(); k >= 0; --k)
    if (s[k] != cplx(0.0)) return k;
  return -1;
}

bool tail_ok(const Series1<cplx>& g0, int top, double x, double frac) {
  return std::abs(g0[top]) * std::pow(x, top) < frac * std::abs(g0.evaluate(cplx(x)));
}

void check_symbol(const GradedSeries1<cplx>& g) {
  if (g.order() < 0 || g.level(0)[0] == cplx(0.0)) throw std::invalid_argument("lattice: G_0(0) must be nonzero");
}

struct EllScan {
  long long admitted = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  bool truncated = false;
};

// Walks n = 0, 1, ... until arg lambda drops to -t or the validity radius is hit.
template <class Visit>
EllScan scan_ell(const GradedSeries1<cplx>& g, int ell, const SectorSpec& s, double radius, Visit&& visit) {
  EllScan out;
  const double h = 1.0 / (ell + 0.5);
  for (int n = 0;; ++n) {
    if (kTwoPi * (n + 0.5) * h > radius) {
      out.truncated = true;
      break;
    }
    const cplx lam = lattice_value(g, ell, n);
    out.min_abs = std::min(out.min_abs, std::abs(lam));
    if (!(std::arg(lam) > -s.t)) break;
    if (s.contains(lam)) {
      ++out.admitted;
      visit(n, lam);
    }
  }
  return out;
}

}  // namespace

void SectorSpec::validate() const {
  if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("SectorSpec: r must be at least 1");
  if (!(t > 0.0 && t <= 0.3)) throw std::invalid_argument("SectorSpec: t must lie in (0, 0.3]");
}

bool SectorSpec::contains(cplx lambda) const {
  const double a = std::abs(lambda);
  return a >= 1.0 && a <= r && std::arg(lambda) > -t;
}

double validity_radius(const Series1<cplx>& g0, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw std::invalid_argument("validity_radius: tail fraction must lie in (0, 1)");
  const int top = top_index(g0);
  if (top < 0) throw std::invalid_argument("validity_radius: zero series");
  if (top == 0) return std::numeric_limits<double>::infinity();
  if (g0[0] == cplx(0.0)) throw std::invalid_argument("validity_radius: g0(0) must be nonzero");
  // Beyond u the top term dominates the triangle bound of |g0|.
  double u = 1e-3;
  const auto abs_sum = [&](double x) {
    double s = 0.0;
    for (int k = 0; k <= top; ++k) s += std::abs(g0[k]) * std::pow(x, k);
    return s;
  };
  while (std::abs(g0[top]) * std::pow(u, top) < tail_fraction * abs_sum(u)) u *= 2.0;
  const int steps = 20000;
  double lo = 0.0;
  double hi = u;
  for (int j = 1; j <= steps; ++j) {
    const double x = u * j / steps;
    if (!tail_ok(g0, top, x, tail_fraction)) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (lo == u) return u;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_ok(g0, top, mid, tail_fraction) ? lo : hi) = mid;
  }
  return lo;
}

cplx lattice_value(const GradedSeries1<cplx>& g, int ell, int n) {
  if (ell < 1 || n < 0) throw std::invalid_argument("lattice_value: need ell >= 1 and n >= 0");
  const double h = 1.0 / (ell + 0.5);
  const cplx x(kTwoPi * (n + 0.5) * h);
  cplx acc = 0.0;
  for (int k = g.h_order(); k >= 0; --k) acc = acc * h + g.level(k).evaluate(x);
  return acc / h;
}

LatticeResult lattice(const GradedSeries1<cplx>& g, int ell_max, const SectorSpec& sector, double tail_fraction) {
  if (ell_max < 1) throw std::invalid_argument("lattice: ell_max must be at least 1");
  sector.validate();
  check_symbol(g);
  LatticeResult out;
  out.validity_radius = validity_radius(g.level(0), tail_fraction);
  EllScan last;
  for (int ell = 1; ell <= ell_max; ++ell) {
    last = scan_ell(g, ell, sector, out.validity_radius,
                    [&](int n, cplx lam) { out.entries.push_back(QnmEntry{ell, n, lam, 2 * ell + 1}); });
    if (last.truncated) out.truncated_ells.push_back(ell);
  }
  out.ell_range_covers = last.min_abs > sector.r;
  return out;
}

long long count_modes(const LatticeResult& lat, const SectorSpec& sector) {
  sector.validate();
  if (!lat.truncated_ells.empty()) throw NumericalError("count_modes: lattice truncated by the validity radius inside the sector");
  if (!lat.ell_range_covers) throw NumericalError("count_modes: ell range does not cover the sector");
  long long n = 0;
  for (const QnmEntry& e : lat.entries)
    if (sector.contains(e.lambda)) n += e.multiplicity;
  return n;
}

CountResult count_lattice(const GradedSeries1<cplx>& g, const SectorSpec& sector, double tail_fraction) {
  sector.validate();
  check_symbol(g);
  const double radius = validity_radius(g.level(0), tail_fraction);
  CountResult out;
  int outside = 0;
  for (int ell = 1;; ++ell) {
    const EllScan s = scan_ell(g, ell, sector, radius, [](int, cplx) {});
    if (s.truncated) out.truncated_ells.push_back(ell);
    out.count += s.admitted * (2LL * ell + 1);
    if (s.admitted > 0) out.ell_last = ell;
    outside = s.min_abs > sector.r ? outside + 1 : 0;
    if (outside >= 2) break;
    if (ell > 100000000) throw NumericalError("count_lattice: ell loop did not terminate");
  }
  return out;
}

double sector_interval_length(const Series1<cplx>& g0, double t, double x_max) {
  if (!(t > 0.0)) throw std::invalid_argument("sector_interval_length: t must be positive");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw std::invalid_argument("sector_interval_length: x_max must be positive and finite");
  const cplx g00 = g0.evaluate(cplx(0.0));
  if (g00 == cplx(0.0)) throw std::invalid_argument("sector_interval_length: g0(0) must be nonzero");
  const int steps = 4096;
  double arg = 0.0;
  double x_prev = 0.0;
  cplx v_prev = g00;
  for (int j = 1; j <= steps; ++j) {
    const double x = x_max * j / steps;
    const cplx v = g0.evaluate(cplx(x));
    const double next = arg + std::arg(v / v_prev);
    if (next > arg + 1e-15) throw NumericalError("sector_interval_length: arg g0 is not decreasing");
    if (next <= -t) {
      double lo = x_prev;
      double hi = x;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (arg + std::arg(g0.evaluate(cplx(mid)) / v_prev) > -t ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    arg = next;
    x_prev = x;
    v_prev = v;
  }
  throw NumericalError("sector_interval_length: arg g0 does not reach -t within the validity radius");
}

double counting_constant_from_interval(double interval, const BlackHoleParams& p) {
  p.validate();
  const double s = 1.0 - 9.0 * p.lambda * p.m * p.m;
  return std::pow(s, -1.5) * std::pow(3.0, 3.5) * std::pow(p.m, 3) * interval / std::numbers::pi;
}

double cubic_law_prefactor(double interval, const BlackHoleParams& p) {
  p.validate();
  const double s = 1.0 - 9.0 * p.lambda * p.m * p.m;
  return interval / (3.0 * std::numbers::pi) * std::pow(3.0 * std::sqrt(3.0) * p.m, 3) * std::pow(s, -1.5);
}

double counting_constant(double t, const BlackHoleParams& p, const Series1<cplx>& g0, double tail_fraction) {
  return counting_constant_from_interval(sector_interval_length(g0, t, validity_radius(g0, tail_fraction)), p);
}

AsymptoticReport asymptotic_check(const BlackHoleParams& p, const GradedSeries1<cplx>& g, double t, const std::vector<double>& r_list,
                                  double tail_fraction) {
  p.validate();
  if (r_list.empty()) throw std::invalid_argument("asymptotic_check: empty r list");
  for (std::size_t k = 1; k < r_list.size(); ++k)
    if (!(r_list[k] > r_list[k - 1])) throw std::invalid_argument("asymptotic_check: r list must be increasing");
  AsymptoticReport rep;
  rep.t = t;
  rep.interval = sector_interval_length(g.level(0), t, validity_radius(g.level(0), tail_fraction));
  rep.constant = counting_constant_from_interval(rep.interval, p);
  for (double r : r_list) {
    const SectorSpec s{r, t};
    const CountResult c = count_lattice(g, s, tail_fraction);
    if (!c.truncated_ells.empty()) throw NumericalError("asymptotic_check: lattice truncated inside the sector");
    AsymptoticRow row;
    row.r = r;
    row.count = c.count;
    row.predicted = rep.constant * r * r * r;
    row.ratio = static_cast<double>(c.count) / row.predicted;
    row.ell_last = c.ell_last;
    rep.rows.push_back(row);
  }
  if (p.lambda == 0.0) rep.notes.push_back("Lambda = 0: the counting asymptotics is only known as a lower bound");
  if (r_list.size() == 1) rep.notes.push_back("single radius: no trend");
  return rep;
}

}  // namespace qnm
