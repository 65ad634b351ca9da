#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "qgeom/linalg.hpp"
#include "qgeom/means.hpp"

namespace qgeom {

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 16;

/// Hermitian matrix (within 1e-10); stored exactly Hermitian.
class Observable {
 public:
  explicit Observable(const CMatrix& m);
  [[nodiscard]] const CMatrix& matrix() const { return m_; }
  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

/// Traceless Hermitian matrix: a tangent vector to the state manifold.
class TangentVector {
 public:
  explicit TangentVector(const CMatrix& m);
  [[nodiscard]] const CMatrix& matrix() const { return m_; }
  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

/// Unit-trace positive semidefinite matrix with its cached eigensystem.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& m);

  /// From a known spectrum; the stored matrix is U diag(lambda) U^dagger.
  static DensityMatrix from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors);
  static DensityMatrix diagonal(const std::vector<double>& eigenvalues);
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  [[nodiscard]] const CMatrix& matrix() const { return m_; }
  [[nodiscard]] const SpectralDecomposition& spectral() const { return spec_; }
  [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
  [[nodiscard]] bool faithful() const { return spec_.faithful(); }
  /// All but the largest eigenvalue below tol.
  [[nodiscard]] bool is_pure(double tol = 1e-10) const;
  /// Tr(rho A), real for Hermitian A.
  [[nodiscard]] double expectation(const Observable& a) const;

 private:
  DensityMatrix(CMatrix m, SpectralDecomposition spec) : m_(std::move(m)), spec_(std::move(spec)) {}
  void validate() const;

  CMatrix m_;
  SpectralDecomposition spec_;
};

enum class Ensemble { hilbert_schmidt, diagonal_dirichlet, pure };

struct SamplerConfig {
  int dimension = 2;
  std::uint64_t seed = 0;
  /// With require_faithful, draws repeat until lambda_min >= purity_floor / dimension.
  double purity_floor = 1e-3;
  Ensemble ensemble = Ensemble::hilbert_schmidt;
  bool require_faithful = false;

  void validate() const;
};

/// Deterministic in the config.
DensityMatrix sample(const SamplerConfig& config);

/// GUE-like: N(0,1) diagonal, unit-variance complex Gaussian off-diagonals, times scale.
Observable sample_observable(int dimension, std::uint64_t seed, double scale = 1.0);

/// A - Tr(rho A) I.
Observable center(const DensityMatrix& rho, const Observable& a);

/// Tr(rho A B) - Tr(rho A) Tr(rho B).
Complex covariance(const DensityMatrix& rho, const Observable& a, const Observable& b);
double variance(const DensityMatrix& rho, const Observable& a);
/// Re Cov.
double sym_covariance(const DensityMatrix& rho, const Observable& a, const Observable& b);

/// i (rho A - A rho).
TangentVector commutator_tangent(const DensityMatrix& rho, const Observable& a);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// {"dim": n, "re": [[...]], "im": [[...]]}
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what);

}  // namespace qgeom
