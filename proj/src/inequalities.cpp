#include "qgeom/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

GapReport stamp(GapReport r, const DensityMatrix& rho) {
  r.dim = static_cast<int>(rho.dim());
  r.state_fingerprint = fingerprint(rho.matrix());
  return r;
}

void check_triple(const DensityMatrix& rho, const Observable& a, const Observable& b,
                  const char* what) {
  check_same_dim(rho.dim(), a.dim(), what);
  check_same_dim(rho.dim(), b.dim(), what);
}

std::string kv(const char* key, double v) { return std::string(key) + "=" + format_double(v); }

}  // namespace

double h_function(const MonotoneFunction& f, double x, double y, double w, double z) {
  for (double v : {x, y, w, z}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("h_function: arguments must be positive");
  }
  const double arithmetic = 0.5 * (x + y) * (w + z);
  if (!f.regular()) return arithmetic;
  const double f0 = f.f_at_zero();
  // (x-y)^2/y * f(0)/f(x/y) = f(0) (x-y)^2 / m_f(x,y)
  const double cx = f0 * (x - y) * (x - y) / scalar_mean(f, x, y);
  const double cw = f0 * (w - z) * (w - z) / scalar_mean(f, w, z);
  return arithmetic - 0.5 * cx * cw;
}

UncertaintyTerms uncertainty_terms(const DensityMatrix& rho, const MonotoneFunction& f,
                                   const Observable& a, const Observable& b) {
  check_triple(rho, a, b, "uncertainty_terms");
  UncertaintyTerms t;
  const Complex cov = covariance(rho, a, b);
  t.var_a = clamp_nonnegative(variance(rho, a), 1e-12, "variance");
  t.var_b = clamp_nonnegative(variance(rho, b), 1e-12, "variance");
  t.cov_sym = cov.real();
  t.cov_im = cov.imag();

  const MetricContext ctx(rho, f);
  t.skew_a = skew_information(ctx, a);
  t.skew_b = skew_information(ctx, b);
  t.corr_re = f_correlation(ctx, a, b).real();
  const double tol = 1e-10 * std::max(1.0, t.scale());
  t.rhs_corr = clamp_nonnegative(t.skew_a * t.skew_b - t.corr_re * t.corr_re, tol,
                                 "correlation-route bound");
  if (rho.faithful()) {
    const double half_f0 = f.f_at_zero() / 2.0;
    const double radicand =
        area_radicand(ctx, commutator_tangent(rho, a), commutator_tangent(rho, b));
    t.rhs_area = half_f0 * half_f0 * radicand;
    t.has_area_route = true;
  }
  return t;
}

GapReport main_gap(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                   const Observable& b) {
  const UncertaintyTerms t = uncertainty_terms(rho, f, a, b);
  double rhs = t.rhs_corr;
  if (t.has_area_route) {
    const double agree = 1e-9 * std::max({1.0, t.scale(), std::abs(t.rhs_area)});
    if (std::abs(t.rhs_area - t.rhs_corr) > agree) {
      throw ConsistencyError("main_gap: metric-area and correlation routes disagree (" +
                             format_double(t.rhs_area) + " vs " + format_double(t.rhs_corr) + ")");
    }
    rhs = t.rhs_area;
  }
  GapReport r = GapReport::make("main", t.lhs(), rhs, gap_tolerance(t.scale()), f.label());
  r.detail = kv("rhs_area", t.rhs_area) + ";" + kv("rhs_corr", t.rhs_corr);
  return stamp(std::move(r), rho);
}

HKDecomposition::HKDecomposition(Eigen::Index n, std::vector<double> h, std::vector<double> k,
                                 double f_of_f)
    : n_(n), h_(std::move(h)), k_(std::move(k)), f_of_f_(f_of_f) {
  const auto expected = static_cast<std::size_t>(n * n * n * n);
  if (h_.size() != expected || k_.size() != expected) {
    throw DimensionError("HKDecomposition: array sizes do not match n^4");
  }
}

HKDecomposition hk_decompose(const DensityMatrix& rho, const MonotoneFunction& f,
                             const Observable& a, const Observable& b) {
  check_triple(rho, a, b, "hk_decompose");
  if (!rho.faithful()) throw SingularStateError("hk_decompose: state is not faithful");
  const auto& spec = rho.spectral();
  const RVector& lam = spec.eigenvalues();
  const Eigen::Index n = spec.dim();
  const CMatrix at = spec.to_eigenbasis(center(rho, a).matrix());
  const CMatrix bt = spec.to_eigenbasis(center(rho, b).matrix());

  // Pair quantities indexed by p = i*n + j.
  const Eigen::Index np = n * n;
  std::vector<double> abs_a(static_cast<std::size_t>(np));
  std::vector<double> abs_b(static_cast<std::size_t>(np));
  std::vector<double> re_ab(static_cast<std::size_t>(np));
  double max_a = 0.0;
  double max_b = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto p = static_cast<std::size_t>(i * n + j);
      abs_a[p] = std::norm(at(i, j));
      abs_b[p] = std::norm(bt(i, j));
      re_ab[p] = (at(i, j) * bt(j, i)).real();
      max_a = std::max(max_a, abs_a[p]);
      max_b = std::max(max_b, abs_b[p]);
    }
  }
  const double k_floor = -1e-12 * std::max(1.0, max_a * max_b);

  const auto total = static_cast<std::size_t>(np * np);
  std::vector<double> h(total);
  std::vector<double> k(total);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto p = static_cast<std::size_t>(i * n + j);
      for (Eigen::Index kk = 0; kk < n; ++kk) {
        for (Eigen::Index l = 0; l < n; ++l) {
          const auto q = static_cast<std::size_t>(kk * n + l);
          const std::size_t idx = p * static_cast<std::size_t>(np) + q;
          const double hv = h_function(f, lam(i), lam(j), lam(kk), lam(l));
          if (!(hv > 0.0)) throw ConsistencyError("hk_decompose: H is not positive");
          const double kv =
              abs_a[p] * abs_b[q] + abs_a[q] * abs_b[p] - 2.0 * re_ab[p] * re_ab[q];
          if (kv < k_floor) throw ConsistencyError("hk_decompose: K is negative");
          h[idx] = hv;
          k[idx] = kv;
          sum += hv * kv;
        }
      }
    }
  }
  const double f_of_f = 0.25 * sum;

  const UncertaintyTerms t = uncertainty_terms(rho, f, a, b);
  const double gap = t.lhs() - t.rhs_corr;
  if (std::abs(f_of_f - gap) > 1e-8 * std::max(1.0, t.scale())) {
    throw ConsistencyError("hk_decompose: sum of H*K does not reproduce the gap (" +
                           format_double(f_of_f) + " vs " + format_double(gap) + ")");
  }
  return HKDecomposition(n, std::move(h), std::move(k), f_of_f);
}

EqualityClass equality_certificate(const DensityMatrix& rho, const Observable& a,
                                   const Observable& b) {
  check_triple(rho, a, b, "equality_certificate");
  const CMatrix a0 = center(rho, a).matrix();
  const CMatrix b0 = center(rho, b).matrix();
  const double na = a0.norm();
  const double nb = b0.norm();
  if (nb == 0.0 || nb <= 1e-10 * na) return EqualityClass::proportional;
  const double c = hs_inner(b0, a0).real() / (nb * nb);
  const double residual = (a0 - c * b0).norm();
  return residual <= 1e-10 * std::max(na, nb) ? EqualityClass::proportional
                                               : EqualityClass::strict;
}

RefinedReport refined_heisenberg_gap(const DensityMatrix& rho, const MonotoneFunction& f,
                                     const Observable& a, const Observable& b) {
  check_triple(rho, a, b, "refined_heisenberg_gap");
  const MetricContext ctx(rho, f);
  const MonotoneFunction harmonic = MonotoneFunction::rld();
  const double var_a = variance(rho, a);
  const double var_b = variance(rho, b);
  const double skew_a = skew_information(ctx, a);
  const double skew_b = skew_information(ctx, b);
  const double ca = c_correlation(rho, harmonic, a, a);
  const double cb = c_correlation(rho, harmonic, b, b);
  const double scale = var_a * var_b;

  RefinedReport r{
      stamp(GapReport::make("refined", scale, (skew_a + ca) * (skew_b + cb), gap_tolerance(scale),
                            f.label()),
            rho),
      stamp(GapReport::make("refined_factor_a", var_a, skew_a + ca, gap_tolerance(var_a), f.label()),
            rho),
      stamp(GapReport::make("refined_factor_b", var_b, skew_b + cb, gap_tolerance(var_b), f.label()),
            rho),
      stamp(GapReport::make("hansen", scale, skew_a * skew_b, gap_tolerance(scale), f.label()), rho),
  };
  r.product.detail = kv("c_rld_a", ca) + ";" + kv("c_rld_b", cb);
  return r;
}

GapReport park_luo_gap(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                       const Observable& b) {
  check_triple(rho, a, b, "park_luo_gap");
  const double var_a = variance(rho, a);
  const double var_b = variance(rho, b);
  const double im = covariance(rho, a, b).imag();
  const double ca = c_correlation(rho, f, a, a);
  const double cb = c_correlation(rho, f, b, b);
  const double scale = var_a * var_b;
  GapReport r = GapReport::make("park_luo", scale, ca * cb + im * im, gap_tolerance(scale), f.label());
  r.detail = kv("c_a", ca) + ";" + kv("c_b", cb) + ";" + kv("commutator_term", im * im);
  return stamp(std::move(r), rho);
}

TwoLevelSetup two_level_setup(double lambda1) {
  if (!(lambda1 > 0.0 && lambda1 < 1.0)) {
    throw ParameterError("two-level setup: lambda1 must lie in (0,1)");
  }
  return {DensityMatrix::diagonal({lambda1, 1.0 - lambda1}), Observable(-pauli_y()),
          Observable(pauli_x())};
}

std::optional<ParkLuoWitness> witness_park_luo(const MonotoneFunction& f, const FunctionGrid& grid) {
  std::vector<std::pair<double, double>> candidates;  // (excess, x0)
  for (double x : grid.points()) {
    if (x <= 1.0) continue;
    const double excess = f(x) - std::sqrt(x);
    if (excess > 0.0) candidates.emplace_back(excess, x);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& p, const auto& q) {
    return p.first > q.first || (p.first == q.first && p.second < q.second);
  });
  for (const auto& [excess, x0] : candidates) {
    TwoLevelSetup s = two_level_setup(x0 / (1.0 + x0));
    GapReport r = park_luo_gap(s.rho, f, s.a, s.b);
    if (r.verdict == Verdict::violated) {
      r.name = "park_luo_witness";
      r.detail += ";" + kv("x0", x0) + ";" + kv("excess", excess);
      return ParkLuoWitness{x0, std::move(s), std::move(r)};
    }
  }
  return std::nullopt;
}

std::vector<double> default_lambda_sweep() {
  return {0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
}

CounterexampleRow independence_counterexample(double lambda1, const MonotoneFunction& f) {
  if (!(lambda1 > 0.5 && lambda1 < 1.0)) {
    throw ParameterError("counterexample: lambda1 must lie in (1/2,1)");
  }
  const TwoLevelSetup s = two_level_setup(lambda1);
  const double lambda2 = 1.0 - lambda1;
  const MetricContext ctx(s.rho, f);
  CounterexampleRow row;
  row.lambda1 = lambda1;
  row.f_label = f.label();
  row.var_a = variance(s.rho, s.a);
  row.var_b = variance(s.rho, s.b);
  const double skew_a = skew_information(ctx, s.a);
  const double skew_b = skew_information(ctx, s.b);
  row.skew_product = skew_a * skew_b;
  const double im = covariance(s.rho, s.a, s.b).imag();
  row.commutator_term = im * im;
  row.m_tilde = scalar_mean(ctx.f_tilde(), lambda1, lambda2);
  row.reduced_condition = lambda2 < row.m_tilde;
  row.report = stamp(GapReport::make("heisenberg_not_implied", row.commutator_term,
                                     row.skew_product, 1e-12, f.label()),
                     s.rho);
  row.report.detail = kv("lambda1", lambda1);
  row.cauchy_schwarz = corr_cauchy_schwarz(ctx, s.a, s.b);
  row.cauchy_schwarz.detail = kv("lambda1", lambda1);
  return row;
}

bool CounterexampleSweep::all_violate() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CounterexampleRow& r) {
           return r.report.verdict == Verdict::holds && r.reduced_condition;
         });
}

CounterexampleSweep independence_sweep(const std::vector<double>& lambdas,
                                       const std::vector<MonotoneFunction>& fs) {
  CounterexampleSweep sweep;
  for (const auto& f : fs) {
    for (double l : lambdas) sweep.rows.push_back(independence_counterexample(l, f));
  }
  return sweep;
}

ConverseCase converse_case(double lambda1, const MonotoneFunction& f) {
  const TwoLevelSetup s = two_level_setup(lambda1);
  const MetricContext ctx(s.rho, f);
  const double skew = skew_information(ctx, s.a);
  const double im = covariance(s.rho, s.a, s.a).imag();
  return {im * im, skew * skew};
}

ReverseIndependence reverse_independence_example(const MonotoneFunction& f, std::uint64_t seed) {
  if (!f.regular()) throw ParameterError("reverse independence: f must be regular");
  SamplerConfig cfg;
  cfg.dimension = 3;
  cfg.seed = seed;
  cfg.require_faithful = true;
  cfg.purity_floor = 0.05;
  DensityMatrix rho = sample(cfg);
  CMatrix a = CMatrix::Zero(3, 3);
  CMatrix b = CMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  const Observable oa(a);
  const Observable ob(b);
  const UncertaintyTerms t = uncertainty_terms(rho, f, oa, ob);
  return {std::move(rho), oa, ob, t.commutator_term(), t.rhs_area};
}

SchrodingerReport schrodinger_gap(const DensityMatrix& rho, const Observable& a,
                                  const Observable& b) {
  check_triple(rho, a, b, "schrodinger_gap");
  const double var_a = variance(rho, a);
  const double var_b = variance(rho, b);
  const Complex cov = covariance(rho, a, b);
  const double scale = var_a * var_b;
  const double comm = cov.imag() * cov.imag();
  return {stamp(GapReport::make("schrodinger", scale - cov.real() * cov.real(), comm,
                                gap_tolerance(scale)),
                rho),
          stamp(GapReport::make("heisenberg", scale, comm, gap_tolerance(scale)), rho)};
}

GapReport corr_cauchy_schwarz(const MetricContext& ctx, const Observable& a, const Observable& b) {
  const double caa = f_correlation(ctx, a, a).real();
  const double cbb = f_correlation(ctx, b, b).real();
  const double cab = std::norm(f_correlation(ctx, a, b));
  GapReport r = GapReport::make("corr_cauchy_schwarz", caa * cbb, cab,
                                gap_tolerance(caa * cbb), ctx.f().label());
  return stamp(std::move(r), ctx.rho());
}

}  // namespace qgeom
