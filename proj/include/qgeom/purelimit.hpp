#pragma once

#include <string>
#include <vector>

#include "qgeom/fop.hpp"
#include "qgeom/report.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// Faithful states D_eps = (1-eps) P + eps (I-P)/(n-1) converging radially to
/// the pure state P: the top eigenvector of every member is the ray of P.
class RadialFamily {
 public:
  RadialFamily(DensityMatrix pure, std::vector<double> epsilons);

  [[nodiscard]] const DensityMatrix& pure() const { return pure_; }
  [[nodiscard]] const std::vector<double>& epsilons() const { return epsilons_; }
  /// Unitary whose last column is the pure ray.
  [[nodiscard]] const CMatrix& basis() const { return basis_; }

 private:
  DensityMatrix pure_;
  std::vector<double> epsilons_;
  CMatrix basis_;
};

/// Throws DomainError unless eps is one of fam.epsilons().
DensityMatrix member(const RadialFamily& fam, double eps);
/// Any eps in (0, 1/2), built from the exact spectrum.
DensityMatrix radial_state(const RadialFamily& fam, double eps);

struct PureEqualityReport {
  GapReport area_equality;     // Var Var - (Re Cov)^2 = I I - (Re Corr)^2
  GapReport variance_product;  // Var Var = I I
  GapReport corr_equals_cov;   // |Corr - Cov| = 0
  GapReport skew_equals_var;   // |I(A) - Var(A)| = 0
  GapReport c_tilde_vanishes;  // C^{f~}(A0,B0) = 0

  [[nodiscard]] bool ok() const {
    return area_equality.ok() && variance_product.ok() && corr_equals_cov.ok() &&
           skew_equals_var.ok() && c_tilde_vanishes.ok();
  }
};

/// Equalities that hold on pure states, each within 1e-9 * max(1, scale).
/// Throws DomainError for non-pure input.
PureEqualityReport pure_equalities(const DensityMatrix& pure, const MonotoneFunction& f,
                                   const Observable& a, const Observable& b);

/// ((f(0)/2) Area^f_D(i[D,A], i[D,B]))^2 through the metric (faithful D).
double radial_q(const DensityMatrix& d, const MonotoneFunction& f, const Observable& a,
                const Observable& b);
/// Same value through I I - (Re Corr)^2; valid on any state.
double radial_q_correlation(const DensityMatrix& d, const MonotoneFunction& f,
                            const Observable& a, const Observable& b);

struct RadialRow {
  std::string f_label;
  double epsilon = 0.0;
  double q = 0.0;
  double residual = 0.0;  // |q - limit|
  double spread = 0.0;    // max_f q - min_f q at this epsilon
};

struct RadialSweepReport {
  double limit = 0.0;  // Var Var - (Re Cov)^2 at the pure state
  double scale = 0.0;  // Var Var at the pure state
  std::vector<RadialRow> rows;
  std::vector<double> epsilons;
  std::vector<double> spreads;        // per epsilon
  std::vector<double> max_residuals;  // per epsilon, over f

  [[nodiscard]] bool spread_monotone() const;
  [[nodiscard]] bool residual_monotone() const;
  [[nodiscard]] double final_spread() const { return spreads.back(); }
  [[nodiscard]] double final_residual() const { return max_residuals.back(); }
};

/// Throws ParameterError if some f is not regular. Members below the
/// faithfulness threshold are evaluated through radial_q_correlation.
RadialSweepReport radial_limit_sweep(const RadialFamily& fam, const std::vector<MonotoneFunction>& fs,
                                     const Observable& a, const Observable& b);

std::vector<double> decade_epsilons(double from, double to);

}  // namespace qgeom
