#pragma once

// Monotone metrics, f-correlation and metric adjusted skew information.
//
// Everything is evaluated from eigenbasis coefficients of the state: with
// rho = sum_i lambda_i |phi_i><phi_i| and x_ij = <phi_i| X |phi_j>, a
// superoperator s(L_rho, R_rho) acts as x_ij -> s(lambda_i, lambda_j) x_ij.

#include "qgeom/fop.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// A state together with the function selecting the monotone metric.
class MetricContext {
 public:
  MetricContext(DensityMatrix rho, MonotoneFunction f);

  [[nodiscard]] const DensityMatrix& rho() const { return rho_; }
  [[nodiscard]] const MonotoneFunction& f() const { return f_; }
  [[nodiscard]] const MonotoneFunction& f_tilde() const { return f_tilde_; }

 private:
  DensityMatrix rho_;
  MonotoneFunction f_;
  MonotoneFunction f_tilde_;
};

/// <u,v>_{rho,f} = Tr(u c_f(L_rho, R_rho)(v)). Requires a faithful state.
double inner(const MetricContext& ctx, const TangentVector& u, const TangentVector& v);
double norm_squared(const MetricContext& ctx, const TangentVector& u);

/// g(u,u) g(v,v) - g(u,v)^2, clamped at 0 when within -1e-10 of it.
double area_radicand(const MetricContext& ctx, const TangentVector& u, const TangentVector& v);
double area(const MetricContext& ctx, const TangentVector& u, const TangentVector& v);

/// C^g(A0, B0) = Tr(m_g(L_rho, R_rho)(A0) B0) on the centered observables.
/// Works on boundary states through the continuous extension of m_g.
double c_correlation(const DensityMatrix& rho, const MonotoneFunction& g, const Observable& a,
                     const Observable& b);
/// Same, without centering.
double c_correlation_raw(const DensityMatrix& rho, const MonotoneFunction& g,
                         const Observable& a, const Observable& b);

/// Corr^f(A,B) = Tr(rho A B) - C^{f~}(A,B).
Complex f_correlation(const MetricContext& ctx, const Observable& a, const Observable& b);

/// I^f(A) = Var(A) - C^{f~}(A0) >= 0.
double skew_information(const MetricContext& ctx, const Observable& a);

struct VarianceSplit {
  double quantum = 0.0;    // I^f(A)
  double classical = 0.0;  // C^{f~}(A0)
};

VarianceSplit variance_split(const MetricContext& ctx, const Observable& a);

/// Returns v, or 0 when v is negative but within tol; throws ConsistencyError otherwise.
double clamp_nonnegative(double v, double tol, const char* what);

}  // namespace qgeom
