#pragma once

// Catalog of normalized symmetric operator monotone functions and the
// f -> f~ transform that drives skew information.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgeom/report.hpp"

namespace qgeom {

enum class FunctionKind { SLD, WY, WYD, RLD, BKM, PowerBridge, Sqrt, TildeOf, Custom };

/// Immutable handle on one member of F_op (or a user-supplied evaluator).
///
/// f(0) is stored analytically; it is never obtained by evaluating near 0.
/// Custom evaluators must supply it and are flagged unverified: only the
/// scalar axioms can be checked for them, not operator monotonicity.
class MonotoneFunction {
 public:
  static MonotoneFunction sld();
  static MonotoneFunction wy();
  /// Wigner-Yanase-Dyson, beta in (-1,0) or (0,1/2].
  static MonotoneFunction wyd(double beta);
  static MonotoneFunction rld();
  static MonotoneFunction bkm();
  /// ((1 + x^gamma)/2)^(1/gamma), gamma in [1/2,1].
  static MonotoneFunction power_bridge(double gamma);
  static MonotoneFunction sqrt_fn();
  static MonotoneFunction custom(std::function<double(double)> evaluator, double f_at_zero,
                                 std::string label);

  [[nodiscard]] FunctionKind kind() const { return kind_; }
  [[nodiscard]] double f_at_zero() const { return f_at_zero_; }
  [[nodiscard]] bool regular() const { return f_at_zero_ > 0.0; }
  [[nodiscard]] bool verified() const { return kind_ != FunctionKind::Custom; }
  [[nodiscard]] const std::string& label() const { return label_; }
  /// beta for WYD, gamma for PowerBridge.
  [[nodiscard]] std::optional<double> parameter() const { return parameter_; }
  /// The transformed function for TildeOf, null otherwise.
  [[nodiscard]] const MonotoneFunction* inner() const { return inner_.get(); }

  /// f(x) for x > 0. Throws DomainError otherwise.
  double operator()(double x) const;

 private:
  friend MonotoneFunction tilde(const MonotoneFunction& f);

  MonotoneFunction(FunctionKind kind, double f_at_zero, std::string label)
      : kind_(kind), f_at_zero_(f_at_zero), label_(std::move(label)) {}

  FunctionKind kind_;
  double f_at_zero_;
  std::string label_;
  std::optional<double> parameter_;
  std::shared_ptr<const MonotoneFunction> inner_;
  std::shared_ptr<const std::function<double(double)>> evaluator_;
};

/// Removable singularities of the WYD and BKM closed forms at x = 1 are
/// handled with a second-order series inside this distance.
inline constexpr double kSeriesRadius = 1e-6;

double eval_f(const MonotoneFunction& f, double x);
double f_zero(const MonotoneFunction& f);

/// f~(x) = ((x+1) - (x-1)^2 f(0)/f(x)) / 2. Non-regular f maps to (1+x)/2
/// without evaluating f; regular f maps to a non-regular function.
MonotoneFunction tilde(const MonotoneFunction& f);

/// Strictly increasing positive sample points with at least one point on each
/// side of 1.
class FunctionGrid {
 public:
  explicit FunctionGrid(std::vector<double> points);

  /// 41 log-spaced points on [1e-4, 1e4] plus {1-1e-6, 1, 1+1e-6}, sorted.
  static FunctionGrid default_grid();

  [[nodiscard]] const std::vector<double>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
};

/// f~ <= g~ pointwise on the grid (slack 1e-12). The equivalent criterion
/// f(0)/f(x) >= g(0)/g(x) is evaluated alongside; a disagreement between the
/// two throws ConsistencyError.
bool tilde_leq(const MonotoneFunction& f, const MonotoneFunction& g, const FunctionGrid& grid);

/// Normalization, symmetry, monotone increase and the harmonic/arithmetic
/// envelope on the grid. rhs carries the worst relative violation.
GapReport check_axioms(const MonotoneFunction& f, const FunctionGrid& grid);

/// Text keys: sld, wy, wyd:<beta>, rld, bkm, bridge:<gamma>, sqrt, tilde:<key>.
MonotoneFunction parse_function_key(std::string_view key);

/// Every built-in entry used by the suites: sld, wy, wyd:0.1, wyd:0.25,
/// wyd:0.49, wyd:-0.5, rld, bkm, bridge:0.75, sqrt.
std::vector<MonotoneFunction> catalog();
std::vector<MonotoneFunction> regular_catalog();

}  // namespace qgeom
