#include "qgeom/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

CMatrix centered_coeffs(const DensityMatrix& rho, const Observable& a) {
  return rho.spectral().to_eigenbasis(center(rho, a).matrix());
}

// sum_ij k_ij x_ij y_ji for Hermitian x, y given in the eigenbasis.
Complex kernel_pairing(const RMatrix& k, const CMatrix& x, const CMatrix& y) {
  return (k.cast<Complex>().array() * x.array() * y.transpose().array()).sum();
}

}  // namespace

MetricContext::MetricContext(DensityMatrix rho, MonotoneFunction f)
    : rho_(std::move(rho)), f_(std::move(f)), f_tilde_(tilde(f_)) {}

double clamp_nonnegative(double v, double tol, const char* what) {
  if (v >= 0.0) return v;
  if (v >= -tol) return 0.0;
  throw ConsistencyError(std::string(what) + " is negative beyond tolerance: " + std::to_string(v));
}

double inner(const MetricContext& ctx, const TangentVector& u, const TangentVector& v) {
  const auto& spec = ctx.rho().spectral();
  check_same_dim(spec.dim(), u.dim(), "inner");
  check_same_dim(spec.dim(), v.dim(), "inner");
  const RMatrix c = superop_kernel(ctx.f(), spec.eigenvalues(), SuperopMode::cm);
  const CMatrix ut = spec.to_eigenbasis(u.matrix());
  const CMatrix vt = spec.to_eigenbasis(v.matrix());
  return (c.cast<Complex>().array() * ut.conjugate().array() * vt.array()).sum().real();
}

double norm_squared(const MetricContext& ctx, const TangentVector& u) {
  const double g = inner(ctx, u, u);
  return clamp_nonnegative(g, 1e-10, "metric norm");
}

double area_radicand(const MetricContext& ctx, const TangentVector& u, const TangentVector& v) {
  const double guu = norm_squared(ctx, u);
  const double gvv = norm_squared(ctx, v);
  const double guv = inner(ctx, u, v);
  const double r = guu * gvv - guv * guv;
  return clamp_nonnegative(r, 1e-10 * std::max(1.0, guu * gvv), "area radicand");
}

double area(const MetricContext& ctx, const TangentVector& u, const TangentVector& v) {
  return std::sqrt(area_radicand(ctx, u, v));
}

double c_correlation_raw(const DensityMatrix& rho, const MonotoneFunction& g, const Observable& a,
                         const Observable& b) {
  const auto& spec = rho.spectral();
  check_same_dim(spec.dim(), a.dim(), "c_correlation");
  check_same_dim(spec.dim(), b.dim(), "c_correlation");
  const RMatrix m = superop_kernel(g, spec.eigenvalues(), SuperopMode::mean);
  return kernel_pairing(m, spec.to_eigenbasis(a.matrix()), spec.to_eigenbasis(b.matrix())).real();
}

double c_correlation(const DensityMatrix& rho, const MonotoneFunction& g, const Observable& a,
                     const Observable& b) {
  check_same_dim(rho.dim(), a.dim(), "c_correlation");
  check_same_dim(rho.dim(), b.dim(), "c_correlation");
  const RMatrix m = superop_kernel(g, rho.spectral().eigenvalues(), SuperopMode::mean);
  return kernel_pairing(m, centered_coeffs(rho, a), centered_coeffs(rho, b)).real();
}

Complex f_correlation(const MetricContext& ctx, const Observable& a, const Observable& b) {
  const auto& rho = ctx.rho();
  check_same_dim(rho.dim(), a.dim(), "f_correlation");
  check_same_dim(rho.dim(), b.dim(), "f_correlation");
  const RVector& lam = rho.spectral().eigenvalues();
  // Translation invariant, so the centered observables give the same value
  // with less cancellation.
  RMatrix k = -superop_kernel(ctx.f_tilde(), lam, SuperopMode::mean);
  k.colwise() += lam;
  return kernel_pairing(k, centered_coeffs(rho, a), centered_coeffs(rho, b));
}

double skew_information(const MetricContext& ctx, const Observable& a) {
  const auto& rho = ctx.rho();
  check_same_dim(rho.dim(), a.dim(), "skew_information");
  const RVector lam = rho.spectral().eigenvalues().cwiseMax(0.0);
  const RMatrix m = superop_kernel(ctx.f_tilde(), lam, SuperopMode::mean);
  const CMatrix at = centered_coeffs(rho, a);
  double sum = 0.0;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    for (Eigen::Index j = 0; j < lam.size(); ++j) {
      const double w = std::norm(at(i, j));
      const double s = 0.5 * (lam(i) + lam(j));
      sum += (s - m(i, j)) * w;
      scale += s * w;
    }
  }
  return clamp_nonnegative(sum, 1e-10 * std::max(1.0, scale), "skew information");
}

VarianceSplit variance_split(const MetricContext& ctx, const Observable& a) {
  VarianceSplit v;
  v.quantum = skew_information(ctx, a);
  v.classical = clamp_nonnegative(c_correlation(ctx.rho(), ctx.f_tilde(), a, a), 1e-10,
                                  "classical variance part");
  return v;
}

}  // namespace qgeom
