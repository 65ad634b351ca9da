#pragma once

#include <optional>
#include <vector>

#include "qgeom/fop.hpp"
#include "qgeom/qfi.hpp"
#include "qgeom/report.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// H_f(x,y,w,z) = ((x+y)(w+z) - (x-y)^2/y (w-z)^2/z f(0)/f(x/y) f(0)/f(w/z)) / 2.
double h_function(const MonotoneFunction& f, double x, double y, double w, double z);

/// Every quantity entering the variance/covariance bounds for one (rho, f, A, B).
struct UncertaintyTerms {
  double var_a = 0.0;
  double var_b = 0.0;
  double cov_sym = 0.0;       // Re Cov(A,B)
  double cov_im = 0.0;        // Im Cov(A,B); Tr(rho[A,B]) = 2i cov_im
  double skew_a = 0.0;        // I^f(A)
  double skew_b = 0.0;        // I^f(B)
  double corr_re = 0.0;       // Re Corr^f(A,B)
  double rhs_area = 0.0;      // ((f(0)/2) Area^f(i[rho,A], i[rho,B]))^2, metric route
  double rhs_corr = 0.0;      // I^f(A) I^f(B) - (Re Corr^f)^2
  bool has_area_route = false;

  [[nodiscard]] double lhs() const { return var_a * var_b - cov_sym * cov_sym; }
  [[nodiscard]] double scale() const { return var_a * var_b; }
  /// (1/4) |Tr(rho [A,B])|^2.
  [[nodiscard]] double commutator_term() const { return cov_im * cov_im; }
};

UncertaintyTerms uncertainty_terms(const DensityMatrix& rho, const MonotoneFunction& f,
                                   const Observable& a, const Observable& b);

/// Var(A)Var(B) - (Re Cov)^2 >= ((f(0)/2) Area^f(i[rho,A], i[rho,B]))^2.
/// The right side is evaluated through the metric and through the
/// f-correlation; a disagreement beyond 1e-9 (relative to the problem scale)
/// throws ConsistencyError. Non-faithful states use the correlation route only.
GapReport main_gap(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                   const Observable& b);

/// F(f) = (1/4) sum_{ijkl} H_f(lambda_i,lambda_j,lambda_k,lambda_l) K_ijkl.
class HKDecomposition {
 public:
  HKDecomposition(Eigen::Index n, std::vector<double> h, std::vector<double> k, double f_of_f);

  [[nodiscard]] Eigen::Index dim() const { return n_; }
  [[nodiscard]] double h(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) const {
    return h_[index(i, j, k, l)];
  }
  [[nodiscard]] double k(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) const {
    return k_[index(i, j, k, l)];
  }
  [[nodiscard]] const std::vector<double>& h_values() const { return h_; }
  [[nodiscard]] const std::vector<double>& k_values() const { return k_; }
  [[nodiscard]] double f_of_f() const { return f_of_f_; }

 private:
  [[nodiscard]] std::size_t index(Eigen::Index i, Eigen::Index j, Eigen::Index k,
                                  Eigen::Index l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }
  Eigen::Index n_;
  std::vector<double> h_;
  std::vector<double> k_;
  double f_of_f_;
};

/// Throws ConsistencyError if some H <= 0 or some K is clearly negative.
HKDecomposition hk_decompose(const DensityMatrix& rho, const MonotoneFunction& f,
                             const Observable& a, const Observable& b);

enum class EqualityClass { proportional, strict };

/// A0 and B0 proportional: ||A0 - c* B0||_F <= 1e-10 max(||A0||, ||B0||) with
/// c* = Re<B0,A0>/<B0,B0>, or B0 = 0.
EqualityClass equality_certificate(const DensityMatrix& rho, const Observable& a,
                                   const Observable& b);

struct RefinedReport {
  GapReport product;   // Var(A)Var(B) >= [I(A) + C^RLD(A0)][I(B) + C^RLD(B0)]
  GapReport factor_a;  // Var(A) >= I(A) + C^RLD(A0)
  GapReport factor_b;
  GapReport hansen;    // Var(A)Var(B) >= I(A) I(B)

  [[nodiscard]] bool ok() const {
    return product.ok() && factor_a.ok() && factor_b.ok() && hansen.ok();
  }
};

RefinedReport refined_heisenberg_gap(const DensityMatrix& rho, const MonotoneFunction& f,
                                     const Observable& a, const Observable& b);

/// Var(A)Var(B) >= C^f(A0) C^f(B0) + (1/4)|Tr(rho[A,B])|^2 with the mean of f itself.
GapReport park_luo_gap(const DensityMatrix& rho, const MonotoneFunction& f,
                       const Observable& a, const Observable& b);

/// rho = diag(l1, 1-l1), A = -sigma_2, B = sigma_1.
struct TwoLevelSetup {
  DensityMatrix rho;
  Observable a;
  Observable b;
};

TwoLevelSetup two_level_setup(double lambda1);

struct ParkLuoWitness {
  double ratio;  // lambda1 / lambda2 = x0 with f(x0) > sqrt(x0)
  TwoLevelSetup setup;
  GapReport report;
};

/// The two-level construction at the grid point x0 > 1 where f exceeds sqrt
/// the most, verified to violate; nullopt when f <= sqrt on the grid.
std::optional<ParkLuoWitness> witness_park_luo(const MonotoneFunction& f,
                                               const FunctionGrid& grid = FunctionGrid::default_grid());

std::vector<double> default_lambda_sweep();

struct CounterexampleRow {
  double lambda1 = 0.0;
  std::string f_label;
  double var_a = 0.0;
  double var_b = 0.0;
  double skew_product = 0.0;     // I^f(A) I^f(B)
  double commutator_term = 0.0;  // (1/4)|Tr(rho[A,B])|^2
  double m_tilde = 0.0;          // m_{f~}(lambda1, lambda2)
  bool reduced_condition = false;  // lambda2 < m_{f~}(lambda1, lambda2)
  /// lhs = (1/4)|Tr(rho[A,B])|^2, rhs = I I: "holds" means the Heisenberg
  /// bound is NOT implied by skew information, i.e. the counterexample works.
  GapReport report;
  /// |Corr(A,B)|^2 vs Corr(A,A) Corr(B,B): lhs = Corr(A,A)Corr(B,B), rhs = |Corr(A,B)|^2.
  GapReport cauchy_schwarz;
};

/// Throws ParameterError unless 1/2 < lambda1 < 1.
CounterexampleRow independence_counterexample(double lambda1, const MonotoneFunction& f);

struct CounterexampleSweep {
  std::vector<CounterexampleRow> rows;
  [[nodiscard]] bool all_violate() const;
};

CounterexampleSweep independence_sweep(const std::vector<double>& lambdas,
                                       const std::vector<MonotoneFunction>& fs);

/// A = B: (1/4)|Tr(rho[A,A])|^2 = 0 while I^f(A)^2 > 0 for regular f.
struct ConverseCase {
  double commutator_term = 0.0;
  double skew_product = 0.0;
};
ConverseCase converse_case(double lambda1, const MonotoneFunction& f);

/// Commuting A, B whose commutators with rho still span a positive f-area.
struct ReverseIndependence {
  DensityMatrix rho;
  Observable a;
  Observable b;
  double commutator_term = 0.0;  // (1/4)|Tr(rho[A,B])|^2, zero
  double area_bound = 0.0;       // ((f(0)/2) Area^f)^2 > 0
};
ReverseIndependence reverse_independence_example(const MonotoneFunction& f, std::uint64_t seed);

struct SchrodingerReport {
  GapReport schrodinger;  // Var Var - (Re Cov)^2 >= (1/4)|Tr(rho[A,B])|^2
  GapReport heisenberg;   // Var Var >= (1/4)|Tr(rho[A,B])|^2
};
SchrodingerReport schrodinger_gap(const DensityMatrix& rho, const Observable& a,
                                  const Observable& b);

/// lhs = Corr(A,A) Corr(B,B), rhs = |Corr(A,B)|^2. A violated verdict is a
/// witness that the Cauchy-Schwarz estimate fails for the f-correlation.
GapReport corr_cauchy_schwarz(const MetricContext& ctx, const Observable& a, const Observable& b);

}  // namespace qgeom
