#pragma once

#include "qgeom/fop.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

/// Eigenvalues below this fraction of the largest one count as zero.
inline constexpr double kFaithfulThreshold = 1e-12;

/// Hermitian eigendecomposition X = U diag(lambda) U^dagger with ascending
/// eigenvalues. L_X and R_X are diagonal in this basis: a superoperator
/// s(L_X, R_X) multiplies entry (i,j) of U^dagger Y U by s(lambda_i, lambda_j).
class SpectralDecomposition {
 public:
  /// Rejects inputs with ||X - X^dagger|| > 1e-10 ||X||.
  explicit SpectralDecomposition(const CMatrix& hermitian);

  /// Assemble from a known eigensystem; eigenvalues are sorted ascending and
  /// eigenvectors must be unitary within 1e-10.
  static SpectralDecomposition from_parts(const RVector& eigenvalues, const CMatrix& eigenvectors);

  [[nodiscard]] const RVector& eigenvalues() const { return eigenvalues_; }
  [[nodiscard]] const CMatrix& eigenvectors() const { return eigenvectors_; }
  [[nodiscard]] Eigen::Index dim() const { return eigenvalues_.size(); }
  [[nodiscard]] double hermiticity_residual() const { return hermiticity_residual_; }

  [[nodiscard]] CMatrix reconstruct() const;
  [[nodiscard]] CMatrix to_eigenbasis(const CMatrix& x) const;
  [[nodiscard]] CMatrix from_eigenbasis(const CMatrix& x) const;
  [[nodiscard]] bool faithful() const;
  [[nodiscard]] double min_eigenvalue() const { return eigenvalues_(0); }
  [[nodiscard]] double max_eigenvalue() const { return eigenvalues_(dim() - 1); }

 private:
  SpectralDecomposition() = default;
  RVector eigenvalues_;
  CMatrix eigenvectors_;
  double hermiticity_residual_ = 0.0;
};

/// Apply a real function to the spectrum of a Hermitian matrix.
template <typename F>
CMatrix apply_spectral(const SpectralDecomposition& s, F&& fn) {
  RVector mapped = s.eigenvalues().unaryExpr(std::forward<F>(fn));
  const CMatrix& u = s.eigenvectors();
  return u * mapped.cast<Complex>().asDiagonal() * u.adjoint();
}

/// m_f(x,y) = y f(x/y) for x,y >= 0. On the boundary the continuous limit
/// m_f(0,y) = y f(0) is returned; m_f(0,0) = 0.
double scalar_mean(const MonotoneFunction& f, double x, double y);

/// c_f(x,y) = 1/m_f(x,y), x,y > 0.
double cm_function(const MonotoneFunction& f, double x, double y);

/// Two Hermitian positive definite matrices of equal size.
class PositiveMatrixPair {
 public:
  PositiveMatrixPair(CMatrix a, CMatrix b);
  [[nodiscard]] const CMatrix& a() const { return a_; }
  [[nodiscard]] const CMatrix& b() const { return b_; }

 private:
  CMatrix a_;
  CMatrix b_;
};

/// Kubo-Ando mean A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}, Hermitized.
CMatrix matrix_mean(const MonotoneFunction& f, const PositiveMatrixPair& pair);

enum class SuperopMode {
  mean,    // m_f(L, R)
  cm,      // c_f(L, R) = m_f(L, R)^{-1}
  hat_cm,  // (L - R)^2 c_f(L, R)
};

struct SuperopResult {
  CMatrix value;
  /// Frobenius norm of the anti-Hermitian part removed from the result
  /// (zero when the input was not Hermitian and nothing was removed).
  double discarded_antihermitian_norm = 0.0;
};

/// Kernel matrix S_ij = s(lambda_i, lambda_j) for the requested mode.
/// cm refuses states with an eigenvalue below the faithfulness threshold.
RMatrix superop_kernel(const MonotoneFunction& f, const RVector& eigenvalues, SuperopMode mode);

/// U (S o (U^dagger X U)) U^dagger. Hermitian X gives a Hermitized result.
SuperopResult superop_apply_with_diagnostics(const MonotoneFunction& f,
                                             const SpectralDecomposition& spec, const CMatrix& x,
                                             SuperopMode mode);

CMatrix superop_apply(const MonotoneFunction& f, const SpectralDecomposition& spec,
                      const CMatrix& x, SuperopMode mode);

}  // namespace qgeom
