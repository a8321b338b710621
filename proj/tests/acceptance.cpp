// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "action_oracle.hpp"
#include "oracles.hpp"
#include "qnm/catalog.hpp"
#include "qnm/commands.hpp"
#include "qnm/complex_scaling.hpp"
#include "qnm/linalg.hpp"
#include "qnm/normal_form.hpp"
#include "qnm/pseudospectrum.hpp"
#include "qnm/spacetime.hpp"
#include "qnm/symbol_calculus.hpp"

using qnm::BlackHoleParams;
using qnm::cplx;
using qnm::GaussianRational;
using qnm::GradedSeries1;
using qnm::PhaseSymbol;
using qnm::Rational;
using qnm::Series1;
using qnm::Series2;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);
using Q = GaussianRational;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Q small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return Q(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

PhaseSymbol<Q> random_rational_symbol(std::mt19937& rng, int deg, int levels, int order, int low = 0) {
  PhaseSymbol<Q> a(order, order);
  for (int l = 0; l <= std::min(levels, a.h_order()); ++l)
    for (int d = low; d <= std::min(deg, a.level_order(l)); ++d)
      for (int n = 0; n <= d; ++n) a.level(l).at(d - n, n) = small_rational(rng);
  return a;
}

bool same_symbol(const PhaseSymbol<Q>& a, const PhaseSymbol<Q>& b) {
  const int hk = std::min(a.h_order(), b.h_order());
  const int order = std::min(a.order(), b.order());
  for (int l = 0; l <= hk; ++l)
    for (int d = 0; d <= order - 2 * l; ++d)
      for (int j = 0; j <= d; ++j)
        if (a.level(l).coeff(d - j, j) != b.level(l).coeff(d - j, j)) return false;
  return true;
}

Outcome ac1() {
  const auto nf = qnm::qnm_symbol(BlackHoleParams{1.0, 0.0}, 24, 4);
  const double s3 = std::sqrt(3.0);
  const cplx expected[5] = {1.0 / (3.0 * s3), -I / (6.0 * s3 * kPi), -5.0 / (432.0 * s3 * kPi * kPi),
                            -235.0 * I / (93312.0 * s3 * std::pow(kPi, 3)),
                            17795.0 / (40310784.0 * s3 * std::pow(kPi, 4))};
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(nf.G_qnm.level(0)[k] - expected[k]) / std::abs(expected[k]));
  return {worst <= 1e-6, "max rel err " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Outcome ac2() {
  double worst0 = 0.0, worst1 = 0.0;
  for (const double m : {0.5, 0.75, 1.0, 1.5, 2.0}) {
    for (const double f : {0.0, 0.1, 0.3, 0.5, 0.8}) {
      const BlackHoleParams p{m, f / (9.0 * m * m)};
      const auto nf = qnm::qnm_symbol(p, 12, 0);
      const cplx g0 = nf.G_qnm.level(0)[0];
      const double expected = std::sqrt(1.0 - 9.0 * p.lambda * m * m) / (3.0 * std::sqrt(3.0) * m);
      worst0 = std::max(worst0, std::abs(g0 - expected) / expected);
      const cplx slope = nf.G_qnm.level(0)[1] / g0;
      worst1 = std::max(worst1, std::abs(slope + I / (2.0 * kPi)) * 2.0 * kPi);
    }
  }
  const bool ok = worst0 <= 1e-8 && worst1 <= 1e-8;
  return {ok, "25 points, G0(0) rel " + fmt("%.2e", worst0) + ", G0'/G0 rel " + fmt("%.2e", worst1) + " (tol 1e-8)"};
}

Outcome ac3() {
  double triple = 0.0;
  for (const BlackHoleParams bh : {BlackHoleParams{1.0, 0.0}, BlackHoleParams{1.0, 0.05}, BlackHoleParams{2.0, 0.01}}) {
    const auto nf = qnm::classical_bnf(qnm::scaled_symbol_taylor(bh, 24, 0, 0.3).level(0), 24);
    const int n = 10;
    const Series1<cplx> g = nf.g.truncated(n + 1);
    const Series1<cplx> lhs1 = qnm::derivative(g) * qnm::compose(nf.f.truncated(n), g.truncated(n));
    const Series1<cplx> lhs2 = qnm::derivative(nf.S.truncated(n + 1)) * nf.mu - nf.f.truncated(n) * (2.0 * kPi);
    const Series1<cplx> lhs3 = qnm::compose(nf.S.truncated(n), g.truncated(n)) * nf.mu;
    for (int k = 0; k <= n; ++k) {
      triple = std::max(triple, std::abs(lhs1[k] - (k == 0 ? 1.0 : 0.0)) / std::max(1.0, std::abs(g[k])));
      triple = std::max(triple, std::abs(lhs2[k]) / std::max(1.0, 2.0 * kPi * std::abs(nf.f[k])));
      triple = std::max(triple, std::abs(lhs3[k] - (k == 1 ? 2.0 * kPi : 0.0)) / std::max(2.0 * kPi, std::abs(nf.mu * nf.S[k])));
    }
  }
  double action = 0.0;
  for (const BlackHoleParams bh : {BlackHoleParams{1.0, 0.0}, BlackHoleParams{1.0, 0.03}}) {
    const auto crit = qnm::critical_data(bh);
    const auto nf = qnm::classical_bnf(qnm::scaled_symbol_taylor(bh, 40, 0, 0.3).level(0), 40);
    for (const cplx e : {cplx(-0.3), cplx(-0.1), cplx(0.05), cplx(0.2), cplx(0.3), cplx(0.0, 0.3), cplx(0.15, -0.2)}) {
      const cplx energy = e * crit.e0;
      const cplx series = nf.S.evaluate(energy / nf.mu);
      const cplx contour = oracle::barrier_cycle_action(bh, energy);
      const cplx ratio = contour / (I * nf.mu * series);
      action = std::max(action, std::min(std::abs(ratio - 1.0), std::abs(ratio + 1.0)));
    }
  }
  const bool ok = triple <= 1e-11 && action <= 1e-6;
  return {ok, "triple identity " + fmt("%.2e", triple) + " (tol 1e-11), contour action rel " + fmt("%.2e", action) + " (tol 1e-6)"};
}

Outcome ac4() {
  std::ostringstream out;
  bool ok = true;

  // homological identity, exact
  bool homological = true;
  {
    std::mt19937 rng(41);
    for (int d = 2; d <= 9; ++d) {
      Series2<Q> r(12);
      for (int n = 0; n <= d; ++n) r.at(d - n, n) = small_rational(rng);
      auto sol = qnm::homological_solve(r);
      const Series2<Q> z = Series2<Q>::monomial(1, 0, Q(1), 12);
      const Series2<Q> w = Series2<Q>::monomial(0, 1, Q(1), 12);
      Series2<Q> lhs = (z * qnm::d_first(sol.a).as_polynomial_of_order(12) - w * qnm::d_second(sol.a).as_polynomial_of_order(12)) * Q(0, 1);
      for (int n = 0; n <= d; ++n) {
        const int m = d - n;
        homological = homological && lhs.at(m, n) == (m == n ? Q(0) : -r.at(m, n));
        if (m == n) homological = homological && sol.r_avg[m] == r.at(m, n);
      }
    }
  }
  ok = ok && homological;
  out << "homological " << (homological ? "exact" : "MISMATCH");

  // associativity, exact
  bool assoc = true;
  {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_rational_symbol(rng, 3, 2, 9);
      auto b = random_rational_symbol(rng, 3, 2, 9);
      auto c = random_rational_symbol(rng, 3, 2, 9);
      assoc = assoc && same_symbol(qnm::moyal_product(qnm::moyal_product(a, b), c), qnm::moyal_product(a, qnm::moyal_product(b, c)));
    }
  }
  ok = ok && assoc;
  out << ", associativity " << (assoc ? "exact" : "MISMATCH");

  // (i/h)[a, b]_# equals the stored bracket, whose h^0 part is Poisson and h^1 part vanishes
  bool bracket = true;
  {
    std::mt19937 rng(61);
    auto a = random_rational_symbol(rng, 5, 0, 10, 2);
    auto b = random_rational_symbol(rng, 5, 0, 10, 2);
    auto br = qnm::moyal_bracket(a, b);
    auto pb = qnm::poisson(a.level(0), b.level(0));
    for (int d = 0; d <= br.level_order(0); ++d)
      for (int n = 0; n <= d; ++n) bracket = bracket && br.level(0).at(d - n, n) == pb.coeff(d - n, n);
    auto ab = qnm::moyal_product(a, b);
    auto ba = qnm::moyal_product(b, a);
    for (int l = 0; l + 1 <= ab.h_order() && l <= br.h_order(); ++l)
      for (int d = 0; d <= br.level_order(l); ++d)
        for (int j = 0; j <= d; ++j)
          bracket = bracket && br.level(l).at(d - j, j) == (ab.level(l + 1).coeff(d - j, j) - ba.level(l + 1).coeff(d - j, j)) * Q(0, 1);
    if (br.h_order() >= 1)
      for (int d = 0; d <= br.level_order(1); ++d)
        for (int n = 0; n <= d; ++n) bracket = bracket && br.level(1).at(d - n, n) == Q(0);
  }
  ok = ok && bracket;
  out << ", bracket law " << (bracket ? "exact" : "MISMATCH");

  // spectral function against the Weyl operator on z^k
  double action = 0.0;
  {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GradedSeries1<cplx> f(6, 6);
    for (int l = 0; l <= 2; ++l)
      for (int a = 0; a <= std::min(4, f.level_order(l)); ++a) f.level(l)[a] = cplx(u(rng), u(rng));
    auto g = qnm::weyl_to_spectral(f);
    auto sym = qnm::symbol_from_diagonal(f);
    for (int k = 0; k <= 8; ++k) {
      auto act = oracle::weyl_apply(sym, oracle::monomial_z<cplx>(k));
      std::map<int, cplx> ev;
      const cplx s1 = cplx(0.0, -(k + 0.5));
      for (int l = 0; l <= g.h_order(); ++l) {
        cplx sp(1.0);
        for (int p = 0; p <= g.level_order(l); ++p) {
          ev[l + p] += g.level(l)[p] * sp;
          sp *= s1;
        }
      }
      for (const auto& [key, v] : act) action = std::max(action, std::abs(ev[key.second] - v) / std::max(1.0, std::abs(v)));
    }
  }
  ok = ok && action <= 1e-12;
  out << ", monomial action " << fmt("%.2e", action) << " (tol 1e-12)";

  // S(G(x; h); h) - x
  double inverse = 0.0;
  {
    std::mt19937 rng(23);
    GradedSeries1<cplx> s(12, 4);
    for (int k = 0; k <= s.h_order(); ++k) s.level(k) = oracle::random_series(rng, s.level_order(k), 0.5);
    s.level(0)[0] = 0.0;
    s.level(0)[1] = 1.0;
    s.level(0)[2] = 0.3;
    auto r = qnm::compose(s, qnm::functional_inverse(s));
    inverse = std::abs(r.level(0)[1] - 1.0);
    for (int k = 0; k <= r.h_order(); ++k)
      for (int p = 0; p <= r.level_order(k); ++p)
        if (!(k == 0 && p == 1)) inverse = std::max(inverse, std::abs(r.level(k)[p]));
  }
  ok = ok && inverse <= 1e-11;
  out << ", functional inverse " << fmt("%.2e", inverse) << " (tol 1e-11)";
  return {ok, out.str()};
}

Outcome ac5() {
  std::ostringstream out;
  bool ok = true;
  for (const double lam : {0.0, 0.02}) {
    const BlackHoleParams p{1.0, lam};
    const auto g = qnm::qnm_symbol(p, 24, 4).G_qnm;
    const auto rep = qnm::asymptotic_check(p, g, 0.05, {50.0, 100.0, 200.0});
    const auto& last = rep.rows.back();
    const double dev = std::abs(last.ratio - 1.0);
    ok = ok && dev <= 0.05;
    out << (lam == 0.0 ? "" : "; ") << "Lambda=" << lam << ": N(" << last.r << ")=" << last.count << ", ratio "
        << fmt("%.5f", last.ratio) << ", ell<=" << last.ell_last;
  }
  out << " (tol |ratio-1| <= 0.05)";
  return {ok, out.str()};
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome ac6() {
  const BlackHoleParams p{1.0, 0.0};
  const auto g0 = qnm::qnm_symbol(p, 24, 0).G_qnm;
  std::vector<double> hs, rel, abs_err;
  std::ostringstream out;
  for (const int ell : {4, 8, 16}) {
    qnm::ScalingConfig cfg;
    cfg.theta = 0.3;
    cfg.h = 1.0 / (ell + 0.5);
    cfg.basis_size = 512;
    cfg.window = 0.3;
    const auto modes = qnm::qnm_direct(ell, cfg, p);
    const cplx direct = modes.front().lambda;
    const cplx lat = qnm::lattice_value(g0, ell, 0);
    hs.push_back(cfg.h);
    abs_err.push_back(std::abs(direct - lat));
    rel.push_back(std::abs(direct - lat) / std::abs(direct));
    out << "ell=" << ell << " rel " << fmt("%.3e", rel.back()) << ", ";
  }
  const bool decreasing = rel[1] < rel[0] && rel[2] < rel[1];
  const double slope = fitted_slope(hs, rel);
  const double slope_abs = fitted_slope(hs, abs_err);
  out << "relative-error slope " << fmt("%.3f", slope) << " (tol >= 1.5), absolute-error slope " << fmt("%.3f", slope_abs);
  return {decreasing && slope >= 1.5, out.str()};
}

Outcome ac7() {
  const auto a = qnm::instability_report(qnm::RotatedHOConfig{0.05, 151});
  double low = 0.0;
  for (const auto& row : a.rows)
    if (row.n <= 5) low = std::max(low, row.distance / std::abs(row.exact));
  const auto b = qnm::instability_report(qnm::RotatedHOConfig{0.05, 302});
  const bool exists = a.divergence_index >= 0;
  bool beyond = exists;
  if (exists)
    for (const auto& row : a.rows)
      if (row.n == a.divergence_index) beyond = row.distance > 0.1 * std::abs(row.exact);
  const bool ok = low <= 1e-8 && exists && beyond && b.divergence_index > a.divergence_index;
  std::ostringstream out;
  out << "n<=5 rel " << fmt("%.2e", low) << " (tol 1e-8), n*(151)=" << a.divergence_index << ", n*(302)=" << b.divergence_index;
  return {ok, out.str()};
}

Outcome ac8() {
  std::ostringstream out;
  double trip = 0.0;
  for (const double m : {0.5, 1.0, 2.0}) {
    const BlackHoleParams p{m, 0.0};
    for (int i = 0; i < 100; ++i) {
      const double r = 2.0 * m + std::pow(10.0, -6.0 + 10.0 * i / 99.0);
      trip = std::max(trip, std::abs(qnm::inverse_tortoise(qnm::tortoise(r, p), p) - r) / std::max(1.0, r));
    }
  }
  for (const double lam : {0.001, 0.02, 0.1}) {
    const BlackHoleParams p{1.0, lam};
    const auto h = qnm::horizon_roots(p);
    for (int i = 0; i < 100; ++i) {
      const double t = std::pow(10.0, -5.0 + 5.0 * i / 99.0);
      for (const double r : {h.r_minus + t * (3.0 - h.r_minus), h.r_plus - t * (h.r_plus - 3.0)})
        trip = std::max(trip, std::abs(qnm::inverse_tortoise(qnm::tortoise(r, p), p) - r) / std::max(1.0, r));
    }
  }
  out << "tortoise " << fmt("%.2e", trip) << " (tol 1e-12)";

  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  qnm::DenseComplexMatrix mat;
  mat.a.resize(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) mat.a(i, j) = cplx(gauss(rng), gauss(rng));
  cplx sum = 0.0;
  for (const cplx& z : qnm::eigensolve(mat)) sum += z;
  const double trace = std::abs(sum - mat.a.trace());
  out << ", trace " << fmt("%.2e", trace) << " (tol 1e-9)";

  const BlackHoleParams p{1.0, 0.0};
  qnm::ScalingConfig c;
  c.h = 1.0 / 8.5;
  c.basis_size = 256;
  c.theta = 0.2;
  const auto m2 = qnm::qnm_direct(8, c, p);
  c.theta = 0.3;
  const auto m3 = qnm::qnm_direct(8, c, p);
  double theta_dev = m2.size() == m3.size() ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < std::min(m2.size(), m3.size()); ++k)
    theta_dev = std::max(theta_dev, std::abs(m2[k].lambda - m3[k].lambda));
  out << ", theta 0.2 vs 0.3 " << fmt("%.2e", theta_dev) << " (tol 1e-6)";

  qnm::RunConfig cfg;
  cfg.output_path = "acceptance.csv";
  const bool g_same = qnm::render_command(qnm::Command::kGSymbol, cfg, 1) == qnm::render_command(qnm::Command::kGSymbol, cfg, 1);
  cfg.ell_min = 7;
  cfg.ell_max = 9;
  cfg.basis_size = 128;
  const bool d_same = qnm::render_command(qnm::Command::kDirect, cfg, 1) == qnm::render_command(qnm::Command::kDirect, cfg, 2);
  out << ", reruns " << (g_same && d_same ? "byte-identical" : "DIFFER");

  const bool ok = trip <= 1e-12 && trace <= 1e-9 && theta_dev <= 1e-6 && g_same && d_same;
  return {ok, out.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, ac1}, {2, ac2}, {3, ac3}, {4, ac4}, {5, ac5}, {6, ac6}, {7, ac7}, {8, ac8}};
  const double budget[] = {0, 60, 60, 60, 120, 300, 600, 30, 600};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= budget[id];
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s AC%d: %s; %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs, budget[id]);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
