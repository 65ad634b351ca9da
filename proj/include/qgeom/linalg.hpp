#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qgeom {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

inline CMatrix hermitian_part(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

inline double hermiticity_residual(const CMatrix& x) { return (x - x.adjoint()).norm(); }

inline CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// Hilbert-Schmidt pairing <X,Y> = Tr(X^dagger Y).
inline Complex hs_inner(const CMatrix& x, const CMatrix& y) { return (x.adjoint() * y).trace(); }

/// Tr(X Y) without forming the product.
inline Complex trace_product(const CMatrix& x, const CMatrix& y) {
  return (x.transpose().array() * y.array()).sum();
}

}  // namespace qgeom
