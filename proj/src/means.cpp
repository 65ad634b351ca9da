#include "qgeom/means.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qgeom/errors.hpp"

namespace qgeom {

SpectralDecomposition::SpectralDecomposition(const CMatrix& hermitian) {
  if (hermitian.rows() != hermitian.cols() || hermitian.rows() == 0) {
    throw DimensionError("spectral decomposition needs a nonempty square matrix");
  }
  if (!hermitian.allFinite()) throw DomainError("spectral decomposition: non-finite entries");
  hermiticity_residual_ = qgeom::hermiticity_residual(hermitian);
  if (hermiticity_residual_ > 1e-10 * hermitian.norm()) {
    throw DomainError("spectral decomposition: matrix is not Hermitian (residual " +
                      std::to_string(hermiticity_residual_) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(hermitian));
  if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

SpectralDecomposition SpectralDecomposition::from_parts(const RVector& eigenvalues,
                                                        const CMatrix& eigenvectors) {
  const Eigen::Index n = eigenvalues.size();
  if (n == 0 || eigenvectors.rows() != n || eigenvectors.cols() != n) {
    throw DimensionError("from_parts: eigenvalue/eigenvector sizes differ");
  }
  if ((eigenvectors.adjoint() * eigenvectors - identity(n)).norm() > 1e-10) {
    throw DomainError("from_parts: eigenvectors are not unitary");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return eigenvalues(a) < eigenvalues(b); });
  SpectralDecomposition s;
  s.eigenvalues_.resize(n);
  s.eigenvectors_.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues_(k) = eigenvalues(order[static_cast<std::size_t>(k)]);
    s.eigenvectors_.col(k) = eigenvectors.col(order[static_cast<std::size_t>(k)]);
  }
  return s;
}

CMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
}

CMatrix SpectralDecomposition::to_eigenbasis(const CMatrix& x) const {
  return eigenvectors_.adjoint() * x * eigenvectors_;
}

CMatrix SpectralDecomposition::from_eigenbasis(const CMatrix& x) const {
  return eigenvectors_ * x * eigenvectors_.adjoint();
}

bool SpectralDecomposition::faithful() const {
  return max_eigenvalue() > 0.0 && min_eigenvalue() > kFaithfulThreshold * max_eigenvalue();
}

double scalar_mean(const MonotoneFunction& f, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("scalar_mean: arguments must be finite and nonnegative");
  }
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  if (hi == 0.0) return 0.0;
  const double r = lo / hi;
  if (r == 0.0) return hi * f.f_at_zero();
  return hi * f(r);
}

double cm_function(const MonotoneFunction& f, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("cm_function: arguments must be positive");
  return 1.0 / scalar_mean(f, x, y);
}

namespace {

void require_positive_definite(const CMatrix& m, const char* which) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("matrix pair: not square");
  const SpectralDecomposition s(m);
  if (!(s.max_eigenvalue() > 0.0) || !(s.min_eigenvalue() > kFaithfulThreshold * s.max_eigenvalue())) {
    throw DomainError(std::string("matrix pair: ") + which + " is not positive definite");
  }
}

}  // namespace

PositiveMatrixPair::PositiveMatrixPair(CMatrix a, CMatrix b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix pair: dimensions differ");
  }
  require_positive_definite(a, "A");
  require_positive_definite(b, "B");
  a_ = hermitian_part(a);
  b_ = hermitian_part(b);
}

CMatrix matrix_mean(const MonotoneFunction& f, const PositiveMatrixPair& pair) {
  const SpectralDecomposition sa(pair.a());
  const CMatrix a_half = apply_spectral(sa, [](double l) { return std::sqrt(l); });
  const CMatrix a_inv_half = apply_spectral(sa, [](double l) { return 1.0 / std::sqrt(l); });
  const SpectralDecomposition inner(hermitian_part(a_inv_half * pair.b() * a_inv_half));
  const CMatrix f_inner =
      apply_spectral(inner, [&f](double l) { return l > 0.0 ? f(l) : f.f_at_zero(); });
  return hermitian_part(a_half * f_inner * a_half);
}

RMatrix superop_kernel(const MonotoneFunction& f, const RVector& eigenvalues, SuperopMode mode) {
  const Eigen::Index n = eigenvalues.size();
  const RVector lam = eigenvalues.cwiseMax(0.0);
  if (mode == SuperopMode::cm && n > 0) {
    const double top = lam.maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(eigenvalues(i) > kFaithfulThreshold * top)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "state is not faithful: eigenvalue " << i << " = " << eigenvalues(i)
            << " (largest " << top << ")";
        throw SingularStateError(msg.str());
      }
    }
  }
  RMatrix s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double m = scalar_mean(f, lam(i), lam(j));
      switch (mode) {
        case SuperopMode::mean:
          s(i, j) = m;
          break;
        case SuperopMode::cm:
          s(i, j) = 1.0 / m;
          break;
        case SuperopMode::hat_cm: {
          const double d = lam(i) - lam(j);
          if (d == 0.0) {
            s(i, j) = 0.0;
          } else if (m > 0.0) {
            s(i, j) = d * d / m;
          } else {
            throw SingularStateError("hat_cm: mean vanishes at a pair of distinct eigenvalues");
          }
          break;
        }
      }
    }
  }
  return s;
}

SuperopResult superop_apply_with_diagnostics(const MonotoneFunction& f,
                                             const SpectralDecomposition& spec, const CMatrix& x,
                                             SuperopMode mode) {
  if (x.rows() != spec.dim() || x.cols() != spec.dim()) {
    throw DimensionError("superop_apply: operand dimension does not match the state");
  }
  const RMatrix kernel = superop_kernel(f, spec.eigenvalues(), mode);
  const CMatrix coeffs = spec.to_eigenbasis(x);
  const CMatrix mapped = kernel.cast<Complex>().cwiseProduct(coeffs);
  SuperopResult out{spec.from_eigenbasis(mapped), 0.0};
  if (qgeom::hermiticity_residual(x) <= 1e-10 * x.norm()) {
    const CMatrix h = hermitian_part(out.value);
    out.discarded_antihermitian_norm = (out.value - h).norm();
    out.value = h;
  }
  return out;
}

CMatrix superop_apply(const MonotoneFunction& f, const SpectralDecomposition& spec,
                      const CMatrix& x, SuperopMode mode) {
  return superop_apply_with_diagnostics(f, spec, x, mode).value;
}

}  // namespace qgeom
