// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnm/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include <lapacke.h>

namespace qnm {

namespace {

bool value_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void check_input(const DenseComplexMatrix& m) {
  if (m.a.rows() != m.a.cols()) throw std::invalid_argument("eigensolve: matrix must be square");
  if (m.a.rows() > 2000) throw std::invalid_argument("eigensolve: dimension above 2000");
  if (!m.a.allFinite()) throw NumericalError("eigensolve: non-finite matrix entries");
}

// zgeev on a column-major copy; w receives the eigenvalues, vr the right eigenvectors if requested.
void geev(const DenseComplexMatrix& m, Eigen::VectorXcd& w, Eigen::MatrixXcd* vr) {
  const lapack_int n = m.dim();
  Eigen::MatrixXcd a = m.a;
  w.resize(n);
  lapack_complex_double dummy{};
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vr ? 'V' : 'N', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                    reinterpret_cast<lapack_complex_double*>(w.data()), &dummy, 1,
                    vr ? reinterpret_cast<lapack_complex_double*>(vr->data()) : &dummy, vr ? n : 1);
  if (info > 0) throw NumericalError("eigensolve: QR iteration did not converge");
  if (info < 0) throw std::logic_error("eigensolve: invalid zgeev argument");
}

}  // namespace

std::vector<cplx> eigensolve(const DenseComplexMatrix& m) {
  check_input(m);
  if (m.dim() == 0) return {};
  Eigen::VectorXcd w;
  geev(m, w, nullptr);
  std::vector<cplx> out(w.data(), w.data() + w.size());
  std::sort(out.begin(), out.end(), value_less);
  return out;
}

std::vector<EigenPair> eigensolve_with_vectors(const DenseComplexMatrix& m, double tol) {
  check_input(m);
  if (m.dim() == 0) return {};
  Eigen::VectorXcd w;
  Eigen::MatrixXcd vr(m.dim(), m.dim());
  geev(m, w, &vr);
  std::vector<EigenPair> out;
  const double scale = std::max(1.0, m.a.norm());
  for (int k = 0; k < m.dim(); ++k) {
    EigenPair p;
    p.value = w[k];
    p.vector = vr.col(k);
    p.residual = (m.a * p.vector - p.value * p.vector).norm() / p.vector.norm();
    if (p.residual > tol * scale) throw NumericalError("eigensolve: eigenpair residual above tolerance");
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) { return value_less(a.value, b.value); });
  return out;
}

}  // namespace qnm
