// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qnm/catalog.hpp"
#include "qnm/normal_form.hpp"

using qnm::BlackHoleParams;
using qnm::cplx;
using qnm::GradedSeries1;
using qnm::SectorSpec;
using qnm::Series1;

namespace {

constexpr double kPi = std::numbers::pi;

// Published quartic for m = 1, Lambda = 0, evaluated by plain arithmetic.
cplx quartic_formula(cplx x) {
  const double s3 = std::sqrt(3.0);
  const cplx i(0.0, 1.0);
  return 1.0 / (3.0 * s3) - i * x / (6.0 * s3 * kPi) - 5.0 * x * x / (432.0 * s3 * kPi * kPi) -
         235.0 * i * x * x * x / (93312.0 * s3 * std::pow(kPi, 3)) + 17795.0 * x * x * x * x / (40310784.0 * s3 * std::pow(kPi, 4));
}

GradedSeries1<cplx> level_zero(const Series1<cplx>& g0) {
  GradedSeries1<cplx> g(g0.order(), 0);
  g.level(0) = g0;
  return g;
}

const qnm::NormalFormResult& schwarzschild_symbol() {
  static const qnm::NormalFormResult nf = qnm::qnm_symbol(BlackHoleParams{1.0, 0.0}, 24, 4);
  return nf;
}

}  // namespace

TEST_CASE("sector membership") {
  const SectorSpec s{10.0, 0.1};
  CHECK(s.contains(cplx(5.0, 0.0)));
  CHECK(s.contains(cplx(1.0, 0.0)));
  CHECK_FALSE(s.contains(cplx(0.99, 0.0)));
  CHECK_FALSE(s.contains(cplx(10.01, 0.0)));
  CHECK(s.contains(std::polar(5.0, -0.099)));
  CHECK_FALSE(s.contains(std::polar(5.0, -0.1001)));
  CHECK_THROWS_AS((SectorSpec{0.5, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SectorSpec{2.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SectorSpec{2.0, 0.31}.validate()), std::invalid_argument);
}

TEST_CASE("validity radius") {
  Series1<cplx> lin(1);
  lin[0] = 1.0;
  lin[1] = 1.0;
  // x < 0.05 (1 + x)
  CHECK(qnm::validity_radius(lin) == doctest::Approx(0.05 / 0.95).epsilon(1e-12));
  Series1<cplx> quad(2);
  quad[0] = 2.0;
  quad[2] = cplx(0.0, 1.0);
  // x^2 < 0.1 |2 + i x^2|, i.e. 0.99 x^4 = 0.04
  CHECK(qnm::validity_radius(quad, 0.1) == doctest::Approx(std::pow(0.04 / 0.99, 0.25)).epsilon(1e-12));
  CHECK(std::isinf(qnm::validity_radius(Series1<cplx>::constant(3.0, 4))));
  CHECK_THROWS_AS(qnm::validity_radius(lin, 1.5), std::invalid_argument);
}

TEST_CASE("lattice values") {
  SUBCASE("leading order") {
    for (const BlackHoleParams& p : {BlackHoleParams{1.0, 0.0}, BlackHoleParams{0.7, 0.05}}) {
      const double a = std::sqrt(1.0 - 9.0 * p.lambda * p.m * p.m) / (3.0 * std::sqrt(3.0) * p.m);
      Series1<cplx> g0(1);
      g0[0] = a;
      g0[1] = cplx(0.0, -a / (2.0 * kPi));
      const auto g = level_zero(g0);
      for (int ell : {1, 2, 7})
        for (int n : {0, 1, 4}) {
          const cplx expect = cplx(ell + 0.5, -(n + 0.5)) * a;
          CHECK(std::abs(qnm::lattice_value(g, ell, n) - expect) < 1e-14 * std::abs(expect));
        }
    }
  }
  SUBCASE("ell = 1 uses h = 2/3") {
    Series1<cplx> g0(1);
    g0[0] = 0.0;
    g0[1] = 1.0;
    CHECK(std::abs(qnm::lattice_value(level_zero(g0), 1, 0) - cplx(kPi)) < 1e-15);
  }
  SUBCASE("quartic at ell = 2, n = 0") {
    const Series1<cplx> quartic = schwarzschild_symbol().G_qnm.level(0).truncated(4);
    const cplx lam = qnm::lattice_value(level_zero(quartic), 2, 0);
    const cplx oracle = 2.5 * quartic_formula(cplx(0.4 * kPi));
    CHECK(std::abs(lam - oracle) < 1e-10);
    CHECK(std::abs(lam - cplx(0.4785, -0.0965)) < 1e-4);
  }
  CHECK_THROWS_AS(qnm::lattice_value(level_zero(Series1<cplx>::constant(1.0, 1)), 0, 0), std::invalid_argument);
}

TEST_CASE("lattice, recomputability and counting") {
  const auto& g = schwarzschild_symbol().G_qnm;
  const SectorSpec s{25.0, 0.1};
  const auto lat = qnm::lattice(g, 200, s);
  REQUIRE(lat.truncated_ells.empty());
  REQUIRE(lat.ell_range_covers);
  REQUIRE_FALSE(lat.entries.empty());
  for (const auto& e : lat.entries) {
    CHECK(e.multiplicity == 2 * e.ell + 1);
    CHECK(s.contains(e.lambda));
    const cplx again = qnm::lattice_value(g, e.ell, e.n);
    CHECK(again.real() == e.lambda.real());
    CHECK(again.imag() == e.lambda.imag());
  }
  const long long n_stored = qnm::count_modes(lat, s);
  const auto arithmetic = qnm::count_lattice(g, s);
  CHECK(arithmetic.count == n_stored);

  // independent double loop over a box that certainly contains the sector
  long long n_box = 0;
  for (int ell = 1; ell <= 200; ++ell)
    for (int n = 0; n <= 40; ++n)
      if (s.contains(qnm::lattice_value(g, ell, n))) n_box += 2 * ell + 1;
  CHECK(n_box == n_stored);

  // cubic growth
  const auto doubled = qnm::count_lattice(g, SectorSpec{50.0, 0.1});
  const double growth = static_cast<double>(doubled.count) / static_cast<double>(arithmetic.count);
  CHECK(growth == doctest::Approx(8.0).epsilon(0.1));
}

TEST_CASE("counting edge cases") {
  const auto& g = schwarzschild_symbol().G_qnm;
  SUBCASE("empty sector") {
    const SectorSpec s{2.0, 1e-4};
    CHECK(qnm::count_modes(qnm::lattice(g, 40, s), s) == 0);
    CHECK(qnm::count_lattice(g, s).count == 0);
  }
  SUBCASE("a single ell = 1 entry") {
    qnm::LatticeResult lat;
    lat.entries.push_back(qnm::QnmEntry{1, 0, cplx(1.5, -0.1), 3});
    lat.ell_range_covers = true;
    CHECK(qnm::count_modes(lat, SectorSpec{2.0, 0.1}) == 3);
  }
  SUBCASE("coverage gaps are reported") {
    const SectorSpec s{25.0, 0.1};
    const auto short_range = qnm::lattice(g, 20, s);
    CHECK_FALSE(short_range.ell_range_covers);
    CHECK_THROWS_AS(qnm::count_modes(short_range, s), qnm::NumericalError);
    const auto quartic = level_zero(g.level(0).truncated(4));
    const auto tight = qnm::lattice(quartic, 200, s, 1e-6);
    CHECK(tight.validity_radius < 1.0);
    CHECK_FALSE(tight.truncated_ells.empty());
    CHECK_THROWS_AS(qnm::count_modes(tight, s), qnm::NumericalError);
  }
}

TEST_CASE("counting constant") {
  const BlackHoleParams p{1.0, 0.0};
  const Series1<cplx> quartic = schwarzschild_symbol().G_qnm.level(0).truncated(4);
  SUBCASE("bisection against a dense scan") {
    const double t = 0.05;
    const double len = qnm::sector_interval_length(quartic, t, qnm::validity_radius(quartic));
    const int n = 1000000;
    const double x_end = 1.0;
    double x_prev = 0.0;
    double a_prev = 0.0;
    double root = -1.0;
    for (int j = 1; j <= n; ++j) {
      const double x = x_end * j / n;
      const double a = std::arg(quartic_formula(cplx(x)));
      if (a <= -t) {
        root = x_prev + (x - x_prev) * (a_prev + t) / (a_prev - a);
        break;
      }
      x_prev = x;
      a_prev = a;
    }
    REQUIRE(root > 0.0);
    CHECK(std::abs(len - root) < 1e-8);
  }
  SUBCASE("small aperture") {
    for (const BlackHoleParams& q : {p, BlackHoleParams{2.0, 0.01}}) {
      const Series1<cplx> g0 = qnm::qnm_symbol(q, 12, 0).G_qnm.level(0);
      const double t = 0.01;
      const double s = 1.0 - 9.0 * q.lambda * q.m * q.m;
      const double expect = 2.0 * std::pow(3.0, 3.5) * std::pow(q.m, 3) * std::pow(s, -1.5) * t;
      CHECK(qnm::counting_constant(t, q, g0) == doctest::Approx(expect).epsilon(1e-3));
    }
    CHECK(qnm::counting_constant(1e-9, p, quartic) < 1e-6);
  }
  SUBCASE("two formula paths") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> um(0.1, 5.0);
    std::uniform_real_distribution<double> uf(0.0, 0.99);
    std::uniform_real_distribution<double> ui(0.0, 2.0);
    for (int k = 0; k < 200; ++k) {
      const double m = um(rng);
      const BlackHoleParams q{m, uf(rng) / (9.0 * m * m)};
      const double len = ui(rng);
      const double a = qnm::counting_constant_from_interval(len, q);
      const double b = qnm::cubic_law_prefactor(len, q);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
  SUBCASE("aperture beyond the validity radius") {
    Series1<cplx> g0(1);
    g0[0] = 1.0;
    g0[1] = cplx(0.0, -0.01);
    CHECK_THROWS_AS(qnm::sector_interval_length(g0, 0.2, 1.0), qnm::NumericalError);
  }
}

TEST_CASE("asymptotic check") {
  const auto& g = schwarzschild_symbol().G_qnm;
  const BlackHoleParams p{1.0, 0.0};
  const auto rep = qnm::asymptotic_check(p, g, 0.05, {25.0, 50.0});
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.predicted == doctest::Approx(rep.constant * row.r * row.r * row.r).epsilon(1e-14));
    CHECK(row.ratio == doctest::Approx(1.0).epsilon(0.1));
  }
  CHECK_FALSE(rep.notes.empty());

  const BlackHoleParams pl{1.0, 0.02};
  const auto rep_l = qnm::asymptotic_check(pl, qnm::qnm_symbol(pl, 16, 2).G_qnm, 0.05, {50.0});
  REQUIRE(rep_l.rows.size() == 1);
  CHECK(rep_l.rows[0].ratio == doctest::Approx(1.0).epsilon(0.1));
  CHECK(rep_l.notes.size() == 1);

  CHECK_THROWS_AS(qnm::asymptotic_check(p, g, 0.05, {50.0, 25.0}), std::invalid_argument);
  CHECK_THROWS_AS(qnm::asymptotic_check(p, g, 0.05, {}), std::invalid_argument);
}
