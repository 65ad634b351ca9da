#include "qgeom/states.hpp"

#include <cmath>
#include <string>

#include "qgeom/errors.hpp"
#include "qgeom/rng.hpp"

namespace qgeom {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

void require_hermitian(const CMatrix& m, double tol, const char* what) {
  if (hermiticity_residual(m) > tol) {
    throw DomainError(std::string(what) + ": matrix is not Hermitian");
  }
}

}  // namespace

void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

Observable::Observable(const CMatrix& m) {
  require_square(m, "observable");
  require_hermitian(m, 1e-10 * std::max(1.0, m.norm()), "observable");
  m_ = hermitian_part(m);
}

TangentVector::TangentVector(const CMatrix& m) {
  require_square(m, "tangent vector");
  require_hermitian(m, 1e-10 * std::max(1.0, m.norm()), "tangent vector");
  if (std::abs(m.trace()) > 1e-10 * m.norm()) {
    throw DomainError("tangent vector: matrix is not traceless");
  }
  m_ = hermitian_part(m);
}

DensityMatrix::DensityMatrix(const CMatrix& m) : m_(), spec_(SpectralDecomposition(hermitian_part(m))) {
  require_square(m, "density matrix");
  require_hermitian(m, 1e-10, "density matrix");
  m_ = hermitian_part(m);
  validate();
}

void DensityMatrix::validate() const {
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw DomainError("density matrix: trace " + std::to_string(tr) + " differs from 1");
  }
  if (spec_.min_eigenvalue() < -1e-12) {
    throw DomainError("density matrix: negative eigenvalue " +
                      std::to_string(spec_.min_eigenvalue()));
  }
}

DensityMatrix DensityMatrix::from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors) {
  SpectralDecomposition spec = SpectralDecomposition::from_parts(eigenvalues, eigenvectors);
  CMatrix m = hermitian_part(spec.reconstruct());
  DensityMatrix rho(std::move(m), std::move(spec));
  rho.validate();
  return rho;
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& eigenvalues) {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  if (n == 0) throw DimensionError("density matrix: empty spectrum");
  const RVector lam = Eigen::Map<const RVector>(eigenvalues.data(), n);
  return from_spectrum(lam, identity(n));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const Eigen::Index n = psi.size();
  if (n == 0) throw DimensionError("pure state: empty vector");
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("pure state: zero vector");
  const CVector v = psi / norm;

  // Complete v to a unitary; v goes last so the eigenvalues (0,...,0,1) are ascending.
  const CMatrix column = v;
  Eigen::HouseholderQR<CMatrix> qr(column);
  const CMatrix q = qr.householderQ() * identity(n);
  CMatrix u(n, n);
  for (Eigen::Index k = 1; k < n; ++k) u.col(k - 1) = q.col(k);
  u.col(n - 1) = v;
  RVector lam = RVector::Zero(n);
  lam(n - 1) = 1.0;
  SpectralDecomposition spec = SpectralDecomposition::from_parts(lam, u);
  DensityMatrix rho(hermitian_part(v * v.adjoint()), std::move(spec));
  rho.validate();
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("density matrix: dimension must be positive");
  return diagonal(std::vector<double>(static_cast<std::size_t>(dim), 1.0 / dim));
}

bool DensityMatrix::is_pure(double tol) const {
  const RVector& lam = spec_.eigenvalues();
  for (Eigen::Index i = 0; i + 1 < lam.size(); ++i) {
    if (lam(i) >= tol) return false;
  }
  return true;
}

double DensityMatrix::expectation(const Observable& a) const {
  check_same_dim(dim(), a.dim(), "expectation");
  return trace_product(m_, a.matrix()).real();
}

void SamplerConfig::validate() const {
  if (dimension < kMinDimension || dimension > kMaxDimension) {
    throw DimensionError("sampler: dimension must lie in [2,16], got " + std::to_string(dimension));
  }
  if (!(purity_floor > 0.0 && purity_floor <= 1.0)) {
    throw ParameterError("sampler: purity_floor must lie in (0,1]");
  }
  if (require_faithful && ensemble == Ensemble::pure) {
    throw ParameterError("sampler: a pure ensemble cannot be faithful");
  }
}

namespace {

constexpr int kMaxRedraws = 10000;

DensityMatrix draw(const SamplerConfig& c, std::uint64_t key) {
  CounterRng rng(key);
  const int n = c.dimension;
  switch (c.ensemble) {
    case Ensemble::hilbert_schmidt: {
      CMatrix g(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
      }
      CMatrix m = g * g.adjoint();
      m /= m.trace().real();
      return DensityMatrix(hermitian_part(m));
    }
    case Ensemble::diagonal_dirichlet: {
      std::vector<double> lam(static_cast<std::size_t>(n));
      double total = 0.0;
      for (auto& l : lam) total += (l = rng.exponential());
      for (auto& l : lam) l /= total;
      return DensityMatrix::diagonal(lam);
    }
    case Ensemble::pure: {
      CVector psi(n);
      for (int i = 0; i < n; ++i) psi(i) = rng.complex_normal();
      return DensityMatrix::pure(psi);
    }
  }
  throw ParameterError("sampler: unknown ensemble");
}

}  // namespace

DensityMatrix sample(const SamplerConfig& config) {
  config.validate();
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    DensityMatrix rho = draw(config, derive_seed(config.seed, static_cast<std::uint64_t>(attempt), 0x5A));
    if (!config.require_faithful) return rho;
    if (rho.spectral().min_eigenvalue() >= config.purity_floor / config.dimension) return rho;
  }
  throw DomainError("sampler: no draw met the purity floor");
}

Observable sample_observable(int dimension, std::uint64_t seed, double scale) {
  if (dimension < kMinDimension || dimension > kMaxDimension) {
    throw DimensionError("sampler: dimension must lie in [2,16], got " + std::to_string(dimension));
  }
  CounterRng rng(derive_seed(seed, 0, 0x0B));
  CMatrix a = CMatrix::Zero(dimension, dimension);
  for (int i = 0; i < dimension; ++i) {
    a(i, i) = rng.normal();
    for (int j = i + 1; j < dimension; ++j) {
      a(i, j) = rng.complex_normal();
      a(j, i) = std::conj(a(i, j));
    }
  }
  return Observable(scale * a);
}

Observable center(const DensityMatrix& rho, const Observable& a) {
  check_same_dim(rho.dim(), a.dim(), "center");
  CMatrix c = a.matrix();
  c.diagonal().array() -= rho.expectation(a);
  return Observable(c);
}

Complex covariance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  check_same_dim(rho.dim(), a.dim(), "covariance");
  check_same_dim(rho.dim(), b.dim(), "covariance");
  // Centered form: Tr(rho A0 B0) equals the definition and avoids cancellation.
  const CMatrix a0 = center(rho, a).matrix();
  const CMatrix b0 = center(rho, b).matrix();
  return trace_product(rho.matrix() * a0, b0);
}

double variance(const DensityMatrix& rho, const Observable& a) {
  return covariance(rho, a, a).real();
}

double sym_covariance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  return covariance(rho, a, b).real();
}

TangentVector commutator_tangent(const DensityMatrix& rho, const Observable& a) {
  check_same_dim(rho.dim(), a.dim(), "commutator_tangent");
  return TangentVector(kI * commutator(rho.matrix(), a.matrix()));
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real() + 0.0);
      ri.push_back(m(i, j).imag() + 0.0);
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto n = j.at("dim").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (n <= 0 || re.size() != static_cast<std::size_t>(n) || im.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("matrix json: row count does not match dim");
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& rr = re.at(static_cast<std::size_t>(i));
    const auto& ri = im.at(static_cast<std::size_t>(i));
    if (rr.size() != static_cast<std::size_t>(n) || ri.size() != static_cast<std::size_t>(n)) {
      throw DimensionError("matrix json: column count does not match dim");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = Complex(rr.at(static_cast<std::size_t>(k)).get<double>(),
                        ri.at(static_cast<std::size_t>(k)).get<double>());
    }
  }
  return m;
}

}  // namespace qgeom
