// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qnm/graded.hpp"
#include "qnm/qnm_entry.hpp"
#include "qnm/scalar.hpp"
#include "qnm/series.hpp"
#include "qnm/spacetime.hpp"

namespace qnm {

/// A_t(r) = {lambda : 1 <= |lambda| <= r, arg lambda > -t}.
struct SectorSpec {
  double r = 1.0;
  double t = 0.05;

  void validate() const;
  bool contains(cplx lambda) const;
};

/// Largest x such that the top retained term of g0 stays below
/// tail_fraction |g0(x)| on all of [0, x].
double validity_radius(const Series1<cplx>& g0, double tail_fraction = 0.05);

/// h^{-1} sum_k h^k G_k(2 pi (n + 1/2) h), h = (ell + 1/2)^{-1}.
cplx lattice_value(const GradedSeries1<cplx>& g, int ell, int n);

struct LatticeResult {
  std::vector<QnmEntry> entries;
  std::vector<int> truncated_ells;  ///< validity radius reached while still inside the sector
  double validity_radius = 0.0;
  bool ell_range_covers = false;  ///< every mode at ell_max already has |lambda| > r
};

/// All lattice points with lambda in the sector for ell = 1..ell_max.
LatticeResult lattice(const GradedSeries1<cplx>& g, int ell_max, const SectorSpec& sector, double tail_fraction = 0.05);

/// Sum of multiplicities of the entries inside the sector. Throws
/// NumericalError when the lattice reported a coverage gap.
long long count_modes(const LatticeResult& lat, const SectorSpec& sector);

struct CountResult {
  long long count = 0;
  int ell_last = 0;  ///< last ell that contributed
  std::vector<int> truncated_ells;
};

/// Same count as count_modes(lattice(...)) without storing entries; ell runs
/// until every admitted mode lies outside |lambda| <= r.
CountResult count_lattice(const GradedSeries1<cplx>& g, const SectorSpec& sector, double tail_fraction = 0.05);

/// |{x > 0 : arg g0(x) > -t}| with arg continued from arg g0(0) = 0; x limited to [0, x_max].
double sector_interval_length(const Series1<cplx>& g0, double t, double x_max);

/// pi^{-1} (1 - 9 Lambda m^2)^{-3/2} 3^{7/2} m^3 |I_t|.
double counting_constant_from_interval(double interval, const BlackHoleParams& p);

/// (|I_t| / 3 pi) (3 sqrt 3 m)^3 (1 - 9 Lambda m^2)^{-3/2}, from summing (2 ell + 1) |I_t| / (2 pi h) over ell.
double cubic_law_prefactor(double interval, const BlackHoleParams& p);

/// c(t, m, Lambda) using g0 up to its validity radius.
double counting_constant(double t, const BlackHoleParams& p, const Series1<cplx>& g0, double tail_fraction = 0.05);

struct AsymptoticRow {
  double r = 0.0;
  long long count = 0;
  double predicted = 0.0;  ///< c r^3
  double ratio = 0.0;
  int ell_last = 0;
};

struct AsymptoticReport {
  double t = 0.0;
  double interval = 0.0;
  double constant = 0.0;
  std::vector<AsymptoticRow> rows;
  std::vector<std::string> notes;
};

/// N(r) / (c r^3) for each r in the increasing list.
AsymptoticReport asymptotic_check(const BlackHoleParams& p, const GradedSeries1<cplx>& g, double t, const std::vector<double>& r_list,
                                  double tail_fraction = 0.05);

}  // namespace qnm
