// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "qnm/graded.hpp"
#include "qnm/scalar.hpp"
#include "qnm/series.hpp"
#include "qnm/spacetime.hpp"
#include "qnm/symbol_calculus.hpp"

namespace qnm {

/// Linear symplectic change of variables (x, xi) = L (z, zeta) with
/// q(L(z, zeta)) = mu z zeta.
struct QuadraticReduction {
  cplx mu;
  std::array<cplx, 4> linmap;  ///< row-major l11, l12, l21, l22

  cplx det() const { return linmap[0] * linmap[3] - linmap[1] * linmap[2]; }
};

/// True when q on the real unit circle of (x, xi) stays in an open half-plane
/// away from 0, sampled at the given number of points.
bool quadratic_range_condition(const Series2<cplx>& q, int samples = 720);

/// Factors the quadratic part q = A x^2 + B x xi + C xi^2 as
/// A (x - a_+ xi)(x - a_- xi) with Im a_+ > 0 > Im a_-; q = B x xi is passed
/// through unchanged. Throws NumericalError for degenerate forms.
QuadraticReduction quad_reduce(const Series2<cplx>& q);

/// (z, zeta) -> (zeta, -z) composed with the reduction, flipping the sign of mu.
QuadraticReduction swap_reduction(const QuadraticReduction& r);

struct NormalFormResult {
  QuadraticReduction reduction;
  cplx mu;
  Series1<cplx> g;    ///< normalized eigen-curve: the symbol is mu g(z zeta), g'(0) = 1
  Series1<cplx> g_w;  ///< mu g
  Series1<cplx> f;    ///< g'(t) f(g(t)) = 1
  Series1<cplx> S;    ///< mu S'(w) = 2 pi f(w), S(0) = 0
  std::vector<Series2<cplx>> generators;  ///< applied in order as exp({chi, .})
  Series2<cplx> normalized;               ///< the symbol after all generators
  GradedSeries1<cplx> g_spec;  ///< spectral function: eigenvalue on z^n is g_spec(-ih(n+1/2); h)
  GradedSeries1<cplx> G_qnm;   ///< lambda = h^{-1} G(2 pi (n + 1/2) h; h)
};

/// Birkhoff normal form of a symbol with vanishing constant and linear parts,
/// through total degree `degree` in (x, xi).
NormalFormResult classical_bnf(const Series2<cplx>& p_taylor, int degree);

/// Reuses a fixed reduction (e.g. after a branch choice).
NormalFormResult classical_bnf(const Series2<cplx>& p_taylor, int degree, const QuadraticReduction& red);

struct AveragingResult {
  PhaseSymbol<cplx> symbol;   ///< conjugated symbol, diagonal at every level
  GradedSeries1<cplx> average;  ///< its diagonal part as G(w; h)
  std::vector<PhaseSymbol<cplx>> generators;  ///< applied in order via the Moyal bracket
};

/// Removes the off-diagonal part of q level by level and weight by weight.
/// Requires q_0 = z zeta + (diagonal terms of degree >= 4).
AveragingResult quantum_average(const PhaseSymbol<cplx>& q);

/// Taylor expansion at the barrier top of the complex-scaled symbol
/// ((1 + i theta)^{-1} xi)^2 + V((1 + i theta) x) + h^2 W1(x0 + (1 + i theta) x),
/// V = W0(x0 + .) - E0, as a phase symbol of weight `degree`.
PhaseSymbol<cplx> scaled_symbol_taylor(const BlackHoleParams& p, int degree, int h_order, double theta);

/// Scale between the lattice argument x = 2 pi (n + 1/2) h and the model
/// eigenvalue -i h (n + 1/2).
inline const cplx kLatticeArgumentScale{0.0, -1.0 / (2.0 * std::numbers::pi)};

/// Full pipeline: G(x; h) with lambda_{l,n} = h^{-1} G(2 pi (n + 1/2) h; h).
/// Requires degree >= 2 h_order + 4. G has total order degree / 2 in (x, h).
NormalFormResult qnm_symbol(const BlackHoleParams& p, int degree, int h_order, double theta = 0.3);

}  // namespace qnm
