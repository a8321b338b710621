// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/complex_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qnm/hermite.hpp"

namespace qnm {

namespace {

int continuation_steps(cplx x) { return std::max(8, static_cast<int>(std::ceil(std::abs(x.imag()) / 0.5))); }

double model_curvature(const ScalingConfig& cfg, const BlackHoleParams& p) {
  if (cfg.model == PotentialModel::kReggeWheeler) return critical_data(p).c0;
  return 1.0;
}

}  // namespace

void ScalingConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 0.4)) throw std::invalid_argument("ScalingConfig: theta must lie in [0, 0.4]");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("ScalingConfig: h must be positive");
  if (basis_size < 64 || basis_size > 2000) throw std::invalid_argument("ScalingConfig: basis_size must lie in [64, 2000]");
  if (!(basis_scale > 0.0) || !std::isfinite(basis_scale)) throw std::invalid_argument("ScalingConfig: basis_scale must be positive");
  if (!(window > 0.0 && window < 1.0)) throw std::invalid_argument("ScalingConfig: window must lie in (0, 1)");
}

cplx scaled_symbol(double x, double xi, const ScalingConfig& cfg, const BlackHoleParams& p) {
  const CriticalData c = critical_data(p);
  const TortoiseContinuation tc(p);
  const cplx beta(1.0, cfg.theta);
  const cplx xc = c.x0 + beta * x;
  const cplx v = w0_at(tc.at(xc, continuation_steps(xc - c.x0)), p) - c.e0;
  const cplx k = xi / beta;
  return k * k + v;
}

EllipticityReport ellipticity_scan(const ScalingConfig& cfg, const BlackHoleParams& p, double eps, const EllipticityGrid& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("ellipticity_scan: eps must be positive");
  if (grid.nx < 1 || grid.nxi < 1) throw std::invalid_argument("ellipticity_scan: empty grid");
  const CriticalData c = critical_data(p);
  const TortoiseContinuation tc(p);
  const cplx beta(1.0, cfg.theta);
  EllipticityReport rep;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.nx == 1 ? grid.x_min : grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
    const cplx xc = c.x0 + beta * x;
    const cplx v = w0_at(tc.at(xc, continuation_steps(xc - c.x0)), p) - c.e0;
    for (int j = 0; j < grid.nxi; ++j) {
      const double xi = grid.nxi == 1 ? grid.xi_min : grid.xi_min + (grid.xi_max - grid.xi_min) * j / (grid.nxi - 1);
      if (x * x + xi * xi < eps * eps) continue;
      const cplx k = xi / beta;
      const double ratio = std::abs(k * k + v) / (1.0 + xi * xi);
      if (rep.empty || ratio < rep.min_ratio) {
        rep.empty = false;
        rep.min_ratio = ratio;
        rep.argmin_x = x;
        rep.argmin_xi = xi;
      }
    }
  }
  return rep;
}

double imaginary_part_constant(const ScalingConfig& cfg, const BlackHoleParams& p, double delta, int n) {
  if (!(cfg.theta > 0.0)) throw std::invalid_argument("imaginary_part_constant: theta must be positive");
  if (n < 2 || !(delta > 0.0)) throw std::invalid_argument("imaginary_part_constant: need n >= 2 and delta > 0");
  double c1 = 1e300;
  for (int i = 0; i < n; ++i) {
    const double x = -delta + 2.0 * delta * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double xi = -delta + 2.0 * delta * j / (n - 1);
      const double r2 = x * x + xi * xi;
      if (r2 < 1e-12 * delta * delta) continue;
      c1 = std::min(c1, -scaled_symbol(x, xi, cfg, p).imag() / (cfg.theta * r2));
    }
  }
  return c1;
}

DenseComplexMatrix build_scaled_operator(const ScalingConfig& cfg, const BlackHoleParams& p) {
  cfg.validate();
  const int n = cfg.basis_size;
  const cplx beta(1.0, cfg.theta);
  const double sigma = std::pow(model_curvature(cfg, p), -0.25) * std::sqrt(cfg.h) * cfg.basis_scale;

  DenseComplexMatrix m;
  m.basis = "hermite";
  m.scale = sigma;
  m.complex_symmetric = true;
  m.a = Eigen::MatrixXcd::Zero(n, n);

  // -d^2/du^2 in Hermite functions: (n + 1/2) on the diagonal, -sqrt((n+1)(n+2))/2 two off.
  const cplx kin = cfg.h * cfg.h / (beta * beta * sigma * sigma);
  for (int k = 0; k < n; ++k) {
    m.a(k, k) += kin * (k + 0.5);
    if (k + 2 < n) {
      const cplx off = -0.5 * kin * std::sqrt((k + 1.0) * (k + 2.0));
      m.a(k, k + 2) += off;
      m.a(k + 2, k) += off;
    }
  }
  if (cfg.model == PotentialModel::kFree) return m;

  std::optional<TortoiseContinuation> tc;
  double x0 = 0.0;
  if (cfg.model == PotentialModel::kReggeWheeler) {
    tc.emplace(p);
    x0 = critical_data(p).x0;
  }
  m.center = x0;
  const auto potential = [&](double u) -> cplx {
    const cplx y = beta * sigma * u;
    if (cfg.model == PotentialModel::kHarmonic) return y * y;
    const cplx x = x0 + y;
    const RadialPoint pt = tc->at(x, continuation_steps(y));
    return w0_at(pt, p) + cfg.h * cfg.h * w1_at(pt, p);
  };
  const auto assemble = [&](int q) {
    const HermiteQuadrature hq = hermite_quadrature(q, n);
    Eigen::MatrixXd phi(q, n);
    Eigen::VectorXcd w(q);
    for (int i = 0; i < q; ++i) {
      for (int k = 0; k < n; ++k) phi(i, k) = hq.value(i, k);
      w[i] = potential(hq.x[i]);
    }
    const Eigen::MatrixXcd wphi = w.asDiagonal() * phi.cast<cplx>();
    Eigen::MatrixXcd v = phi.transpose().cast<cplx>() * wphi;
    return v;
  };
  int q = 2 * n;
  Eigen::MatrixXcd v = assemble(q);
  for (int round = 0; round < 3; ++round) {
    q *= 2;
    Eigen::MatrixXcd next = assemble(q);
    const double change = (next - v).cwiseAbs().maxCoeff();
    const double scale = std::max(next.cwiseAbs().maxCoeff(), 1e-300);
    v = std::move(next);
    if (change <= 1e-12 * scale) break;
    if (round == 2) throw NumericalError("build_scaled_operator: potential quadrature did not converge");
  }
  m.a += v;
  return m;
}

std::vector<QnmEntry> qnm_direct(int ell, const ScalingConfig& cfg, const BlackHoleParams& p) {
  if (ell < 1) throw std::invalid_argument("qnm_direct: ell must be at least 1");
  const double h = 1.0 / (ell + 0.5);
  if (std::abs(cfg.h - h) > 1e-14 * h) throw std::invalid_argument("qnm_direct: cfg.h must equal 1 / (ell + 1/2)");
  if (cfg.model != PotentialModel::kReggeWheeler) throw std::invalid_argument("qnm_direct: requires the Regge-Wheeler potential");
  if (!(cfg.theta > 0.0)) throw std::invalid_argument("qnm_direct: theta must be positive");
  const double e0 = critical_data(p).e0;
  const std::vector<cplx> eig = eigensolve(build_scaled_operator(cfg, p));
  std::vector<QnmEntry> out;
  for (const cplx& z : eig) {
    if (std::abs(z - e0) >= cfg.window * e0) continue;
    cplx lam = std::sqrt(z) / h;
    if (lam.real() < 0.0) lam = -lam;
    if (!(std::arg(lam) > -2.0 * cfg.theta)) continue;
    out.push_back(QnmEntry{ell, 0, lam, 2 * ell + 1});
  }
  std::sort(out.begin(), out.end(), [](const QnmEntry& a, const QnmEntry& b) {
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() > b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
  for (std::size_t k = 0; k < out.size(); ++k) out[k].n = static_cast<int>(k);
  if (out.empty()) throw NumericalError("qnm_direct: no eigenvalues in the spectral window");
  return out;
}

}  // namespace qnm
