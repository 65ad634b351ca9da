#include "qgeom/purelimit.hpp"

#include <algorithm>
#include <cmath>

#include "qgeom/errors.hpp"
#include "qgeom/inequalities.hpp"
#include "qgeom/qfi.hpp"

namespace qgeom {

RadialFamily::RadialFamily(DensityMatrix pure, std::vector<double> epsilons)
    : pure_(std::move(pure)), epsilons_(std::move(epsilons)), basis_(pure_.spectral().eigenvectors()) {
  if (pure_.dim() < 2) throw DimensionError("radial family: dimension must be at least 2");
  if (!pure_.is_pure(1e-12)) throw DomainError("radial family: base state is not pure");
  for (std::size_t i = 0; i < epsilons_.size(); ++i) {
    const double e = epsilons_[i];
    if (!(e > 0.0 && e < 0.5)) throw DomainError("radial family: epsilon must lie in (0,1/2)");
    if (i > 0 && !(e < epsilons_[i - 1])) {
      throw DomainError("radial family: epsilons must be strictly decreasing");
    }
  }
}

DensityMatrix radial_state(const RadialFamily& fam, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("radial state: epsilon must lie in (0,1/2)");
  const Eigen::Index n = fam.pure().dim();
  RVector lam = RVector::Constant(n, eps / static_cast<double>(n - 1));
  lam(n - 1) = 1.0 - eps;
  return DensityMatrix::from_spectrum(lam, fam.basis());
}

DensityMatrix member(const RadialFamily& fam, double eps) {
  const auto& es = fam.epsilons();
  if (std::find(es.begin(), es.end(), eps) == es.end()) {
    throw DomainError("member: epsilon " + format_double(eps) + " is not in the family");
  }
  return radial_state(fam, eps);
}

PureEqualityReport pure_equalities(const DensityMatrix& pure, const MonotoneFunction& f,
                                   const Observable& a, const Observable& b) {
  if (!pure.is_pure(1e-10)) throw DomainError("pure_equalities: state is not pure");
  const UncertaintyTerms t = uncertainty_terms(pure, f, a, b);
  const double tol = gap_tolerance(t.scale());
  const MetricContext ctx(pure, f);
  const Complex corr = f_correlation(ctx, a, b);
  const Complex cov = covariance(pure, a, b);
  const double c_tilde = c_correlation(pure, ctx.f_tilde(), a, b);
  auto stamped = [&](GapReport r) {
    r.dim = static_cast<int>(pure.dim());
    r.state_fingerprint = fingerprint(pure.matrix());
    return r;
  };
  // Two-sided: lhs 0, rhs |difference|, so any mismatch is a violation.
  auto equality = [&](const char* name, double left, double right) {
    GapReport r = GapReport::make(name, 0.0, std::abs(left - right), tol, f.label());
    r.detail = "left=" + format_double(left) + ";right=" + format_double(right);
    return stamped(std::move(r));
  };
  return {
      equality("pure_area_equality", t.lhs(), t.rhs_corr),
      equality("pure_variance_product", t.scale(), t.skew_a * t.skew_b),
      stamped(GapReport::make("pure_corr_equals_cov", 0.0, std::abs(corr - cov), tol, f.label())),
      stamped(GapReport::make("pure_skew_equals_var", 0.0, std::abs(t.skew_a - t.var_a), tol,
                              f.label())),
      stamped(GapReport::make("pure_c_tilde_vanishes", 0.0, std::abs(c_tilde), tol, f.label())),
  };
}

double radial_q(const DensityMatrix& d, const MonotoneFunction& f, const Observable& a,
                const Observable& b) {
  const MetricContext ctx(d, f);
  const double half_f0 = f.f_at_zero() / 2.0;
  return half_f0 * half_f0 *
         area_radicand(ctx, commutator_tangent(d, a), commutator_tangent(d, b));
}

double radial_q_correlation(const DensityMatrix& d, const MonotoneFunction& f, const Observable& a,
                            const Observable& b) {
  const MetricContext ctx(d, f);
  const double re = f_correlation(ctx, a, b).real();
  return skew_information(ctx, a) * skew_information(ctx, b) - re * re;
}

bool RadialSweepReport::spread_monotone() const {
  return std::is_sorted(spreads.rbegin(), spreads.rend());
}

bool RadialSweepReport::residual_monotone() const {
  return std::is_sorted(max_residuals.rbegin(), max_residuals.rend());
}

RadialSweepReport radial_limit_sweep(const RadialFamily& fam, const std::vector<MonotoneFunction>& fs,
                                     const Observable& a, const Observable& b) {
  if (fs.empty()) throw ParameterError("radial sweep: no functions given");
  for (const auto& f : fs) {
    if (!f.regular()) throw ParameterError("radial sweep: " + f.label() + " is not regular");
  }
  if (fam.epsilons().empty()) throw ParameterError("radial sweep: no epsilons given");
  RadialSweepReport rep;
  const double var_a = variance(fam.pure(), a);
  const double var_b = variance(fam.pure(), b);
  const double cov_s = sym_covariance(fam.pure(), a, b);
  rep.scale = var_a * var_b;
  rep.limit = rep.scale - cov_s * cov_s;
  rep.epsilons = fam.epsilons();

  for (double eps : fam.epsilons()) {
    const DensityMatrix d = member(fam, eps);
    const std::size_t first = rep.rows.size();
    double lo = 0.0;
    double hi = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const double q = d.faithful() ? radial_q(d, fs[i], a, b) : radial_q_correlation(d, fs[i], a, b);
      const double res = std::abs(q - rep.limit);
      rep.rows.push_back({fs[i].label(), eps, q, res, 0.0});
      lo = i == 0 ? q : std::min(lo, q);
      hi = i == 0 ? q : std::max(hi, q);
      worst = std::max(worst, res);
    }
    for (std::size_t i = first; i < rep.rows.size(); ++i) rep.rows[i].spread = hi - lo;
    rep.spreads.push_back(hi - lo);
    rep.max_residuals.push_back(worst);
  }
  return rep;
}

std::vector<double> decade_epsilons(double from, double to) {
  if (!(from > 0.0 && to > 0.0 && to <= from)) {
    throw ParameterError("decade_epsilons: need 0 < to <= from");
  }
  const int hi = static_cast<int>(std::lround(std::log10(from)));
  const int lo = static_cast<int>(std::lround(std::log10(to)));
  std::vector<double> out;
  for (int k = hi; k >= lo; --k) out.push_back(std::pow(10.0, k));
  return out;
}

}  // namespace qgeom
