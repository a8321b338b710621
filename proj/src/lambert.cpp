// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/lambert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnm {

namespace {

constexpr int kMaxIter = 8;
constexpr double kTol = 1e-15;

double initial_guess(double x) {
  if (x < -0.32) {
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  const double branch = -1.0 / std::exp(1.0);
  if (std::isnan(x) || x < branch - 4.0 * std::numeric_limits<double>::epsilon())
    throw std::domain_error("lambert_w0: argument below -1/e");
  if (x <= branch) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  double w = initial_guess(x);
  for (int it = 0; it < kMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= kTol * (1.0 + std::abs(w))) break;
  }
  return w;
}

double wright_omega(double z) {
  if (std::isnan(z)) throw std::domain_error("wright_omega: NaN argument");
  if (z < 1.0) {
    if (z < -745.0) return 0.0;
    return lambert_w0(std::exp(z));
  }
  // Halley on f(w) = w + log w - z, with w ~ z - log z for large z.
  double w = z - std::log(z) + std::log(z) / z;
  for (int it = 0; it < kMaxIter; ++it) {
    const double f = w + std::log(w) - z;
    const double d1 = 1.0 + 1.0 / w;
    const double d2 = -1.0 / (w * w);
    const double step = f / (d1 - 0.5 * f * d2 / d1);
    w -= step;
    if (std::abs(step) <= kTol * std::abs(w)) break;
  }
  return w;
}

}  // namespace qnm
