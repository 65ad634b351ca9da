#include "qgeom/fop.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

std::string short_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// expm1(a u) / (a u), with the series 1 + a u/2 + (a u)^2/6 near 0.
double phi(double a, double u, bool series) {
  const double au = a * u;
  if (series || au == 0.0) return 1.0 + au / 2.0 + au * au / 6.0;
  return std::expm1(au) / au;
}

// x in (0, 1]: the closed forms in log variables, u = log x.
double wyd_below_one(double beta, double x) {
  const bool series = std::abs(x - 1.0) < kSeriesRadius;
  const double u = std::log(x);
  const double p1 = phi(1.0, u, series);
  return p1 * p1 / (phi(beta, u, series) * phi(1.0 - beta, u, series));
}

double bkm_below_one(double x) {
  const bool series = std::abs(x - 1.0) < kSeriesRadius;
  return phi(1.0, std::log(x), series);
}

// Evaluate on (0,1] and extend by f(x) = x f(1/x); the stored symmetry is then exact
// up to the rounding of 1/x.
template <typename G>
double via_symmetry(double x, G&& g) {
  if (x <= 1.0) return g(x);
  return x * g(1.0 / x);
}

}  // namespace

MonotoneFunction MonotoneFunction::sld() { return {FunctionKind::SLD, 0.5, "sld"}; }

MonotoneFunction MonotoneFunction::wy() { return {FunctionKind::WY, 0.25, "wy"}; }

MonotoneFunction MonotoneFunction::wyd(double beta) {
  const bool positive = beta > 0.0 && beta <= 0.5;
  const bool negative = beta > -1.0 && beta < 0.0;
  if (!(positive || negative)) {
    throw ParameterError("wyd: beta must lie in (-1,0) or (0,1/2], got " + short_number(beta));
  }
  MonotoneFunction f(FunctionKind::WYD, positive ? beta * (1.0 - beta) : 0.0,
                     "wyd:" + short_number(beta));
  f.parameter_ = beta;
  return f;
}

MonotoneFunction MonotoneFunction::rld() { return {FunctionKind::RLD, 0.0, "rld"}; }

MonotoneFunction MonotoneFunction::bkm() { return {FunctionKind::BKM, 0.0, "bkm"}; }

MonotoneFunction MonotoneFunction::power_bridge(double gamma) {
  if (!(gamma >= 0.5 && gamma <= 1.0)) {
    throw ParameterError("bridge: gamma must lie in [1/2,1], got " + short_number(gamma));
  }
  MonotoneFunction f(FunctionKind::PowerBridge, std::pow(0.5, 1.0 / gamma),
                     "bridge:" + short_number(gamma));
  f.parameter_ = gamma;
  return f;
}

MonotoneFunction MonotoneFunction::sqrt_fn() { return {FunctionKind::Sqrt, 0.0, "sqrt"}; }

MonotoneFunction MonotoneFunction::custom(std::function<double(double)> evaluator,
                                          double f_at_zero, std::string label) {
  if (!evaluator) throw ParameterError("custom: empty evaluator");
  if (!std::isfinite(f_at_zero) || f_at_zero < 0.0) {
    throw ParameterError("custom: f(0) must be finite and nonnegative");
  }
  MonotoneFunction f(FunctionKind::Custom, f_at_zero, std::move(label));
  f.evaluator_ = std::make_shared<const std::function<double(double)>>(std::move(evaluator));
  return f;
}

double MonotoneFunction::operator()(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(label_ + ": argument must be positive and finite, got " + short_number(x));
  }
  switch (kind_) {
    case FunctionKind::SLD:
      return (1.0 + x) / 2.0;
    case FunctionKind::WY: {
      const double s = (1.0 + std::sqrt(x)) / 2.0;
      return s * s;
    }
    case FunctionKind::WYD: {
      const double beta = *parameter_;
      return via_symmetry(x, [beta](double t) { return wyd_below_one(beta, t); });
    }
    case FunctionKind::RLD:
      return 2.0 * x / (1.0 + x);
    case FunctionKind::BKM:
      return via_symmetry(x, bkm_below_one);
    case FunctionKind::PowerBridge: {
      const double g = *parameter_;
      return std::pow((1.0 + std::pow(x, g)) / 2.0, 1.0 / g);
    }
    case FunctionKind::Sqrt:
      return std::sqrt(x);
    case FunctionKind::TildeOf: {
      const MonotoneFunction& f = *inner_;
      if (!f.regular()) return (1.0 + x) / 2.0;
      const double f0 = f.f_at_zero();
      return via_symmetry(x, [&f, f0](double t) {
        const double d = t - 1.0;
        return 0.5 * ((t + 1.0) - d * d * f0 / f(t));
      });
    }
    case FunctionKind::Custom:
      return (*evaluator_)(x);
  }
  throw DomainError("unknown function kind");
}

double eval_f(const MonotoneFunction& f, double x) { return f(x); }

double f_zero(const MonotoneFunction& f) { return f.f_at_zero(); }

MonotoneFunction tilde(const MonotoneFunction& f) {
  MonotoneFunction g(FunctionKind::TildeOf, f.regular() ? 0.0 : 0.5, "tilde:" + f.label());
  g.inner_ = std::make_shared<const MonotoneFunction>(f);
  return g;
}

FunctionGrid::FunctionGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw ParameterError("grid: no points");
  bool below = false;
  bool above = false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double x = points_[i];
    if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("grid: points must be positive");
    if (i > 0 && !(x > points_[i - 1])) {
      throw ParameterError("grid: points must be strictly increasing");
    }
    below = below || x < 1.0;
    above = above || x > 1.0;
  }
  if (!below || !above) throw ParameterError("grid: need points on both sides of 1");
}

FunctionGrid FunctionGrid::default_grid() {
  std::vector<double> pts;
  for (int k = 0; k <= 40; ++k) pts.push_back(std::pow(10.0, -4.0 + 0.2 * k));
  pts.push_back(1.0 - 1e-6);
  pts.push_back(1.0);
  pts.push_back(1.0 + 1e-6);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return FunctionGrid(std::move(pts));
}

bool tilde_leq(const MonotoneFunction& f, const MonotoneFunction& g, const FunctionGrid& grid) {
  constexpr double slack = 1e-12;
  const MonotoneFunction ft = tilde(f);
  const MonotoneFunction gt = tilde(g);
  auto ratio = [](const MonotoneFunction& h, double x) {
    return h.regular() ? h.f_at_zero() / h(x) : 0.0;
  };
  bool all = true;
  for (double x : grid.points()) {
    const double direct = gt(x) - ft(x);
    const double d = x - 1.0;
    const double via_ratio = 0.5 * d * d * (ratio(f, x) - ratio(g, x));
    const bool ok_direct = direct >= -slack;
    const bool ok_ratio = via_ratio >= -slack;
    if (ok_direct != ok_ratio && std::abs(direct - via_ratio) > slack * std::max(1.0, x)) {
      throw ConsistencyError("tilde_leq: pointwise and ratio criteria disagree at x = " +
                             short_number(x));
    }
    all = all && ok_direct;
  }
  return all;
}

GapReport check_axioms(const MonotoneFunction& f, const FunctionGrid& grid) {
  double worst = 0.0;
  std::string worst_axiom = "none";
  auto record = [&](double v, const char* axiom) {
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (v > worst) {
      worst = v;
      worst_axiom = axiom;
    }
  };
  auto safe = [&f](double x) {
    try {
      return f(x);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  record(std::abs(safe(1.0) - 1.0), "normalization");
  const auto& pts = grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i];
    const double fx = safe(x);
    const double rel = std::max(1.0, std::abs(fx));
    record(std::abs(x * safe(1.0 / x) - fx) / rel, "symmetry");
    record(std::max(0.0, 2.0 * x / (1.0 + x) - fx) / rel, "harmonic bound");
    record(std::max(0.0, fx - (1.0 + x) / 2.0) / rel, "arithmetic bound");
    if (i + 1 < pts.size()) {
      const double next = safe(pts[i + 1]);
      record(std::max(0.0, fx - next) / std::max(1.0, std::abs(next)), "monotonicity");
    }
  }
  GapReport r = GapReport::make("axioms", 0.0, worst, 1e-12, f.label());
  r.detail = "worst=" + worst_axiom;
  if (!f.verified()) r.detail += ";unverified";
  return r;
}

namespace {

double parse_number(std::string_view text, std::string_view key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last) {
    throw ParameterError("unknown function key '" + std::string(key) + "'");
  }
  return v;
}

}  // namespace

MonotoneFunction parse_function_key(std::string_view key) {
  if (key == "sld") return MonotoneFunction::sld();
  if (key == "wy") return MonotoneFunction::wy();
  if (key == "rld") return MonotoneFunction::rld();
  if (key == "bkm") return MonotoneFunction::bkm();
  if (key == "sqrt") return MonotoneFunction::sqrt_fn();
  if (key.starts_with("wyd:")) return MonotoneFunction::wyd(parse_number(key.substr(4), key));
  if (key.starts_with("bridge:")) {
    return MonotoneFunction::power_bridge(parse_number(key.substr(7), key));
  }
  if (key.starts_with("tilde:")) return tilde(parse_function_key(key.substr(6)));
  throw ParameterError("unknown function key '" + std::string(key) + "'");
}

std::vector<MonotoneFunction> catalog() {
  return {MonotoneFunction::sld(),       MonotoneFunction::wy(),
          MonotoneFunction::wyd(0.1),    MonotoneFunction::wyd(0.25),
          MonotoneFunction::wyd(0.49),   MonotoneFunction::wyd(-0.5),
          MonotoneFunction::rld(),       MonotoneFunction::bkm(),
          MonotoneFunction::power_bridge(0.75), MonotoneFunction::sqrt_fn()};
}

std::vector<MonotoneFunction> regular_catalog() {
  std::vector<MonotoneFunction> out;
  for (auto& f : catalog()) {
    if (f.regular()) out.push_back(f);
  }
  return out;
}

}  // namespace qgeom
