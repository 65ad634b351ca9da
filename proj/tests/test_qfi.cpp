#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/qfi.hpp"

using namespace qgeom;

namespace {

// Reference values go through the materialized superoperator and the library's
// scalar means only; nothing below touches the coefficient sums under test.
double oracle_inner(const CMatrix& rho, const MonotoneFunction& f, const CMatrix& u, const CMatrix& v) {
  const CMatrix cv = oracle::superop_apply(rho, v, [&](double l, double r) {
    return 1.0 / scalar_mean(f, l, r);
  });
  return oracle::tr(u.adjoint() * cv).real();
}

Complex oracle_c(const CMatrix& rho, const MonotoneFunction& g, const CMatrix& a, const CMatrix& b) {
  const CMatrix ma = oracle::superop_apply(rho, a, [&](double l, double r) {
    return scalar_mean(g, std::max(l, 0.0), std::max(r, 0.0));
  });
  return oracle::tr(ma * b);
}

CMatrix centered(const CMatrix& rho, const CMatrix& a) {
  return a - oracle::tr(rho * a) * CMatrix::Identity(a.rows(), a.cols());
}

TangentVector tangent(const DensityMatrix& rho, const CMatrix& a) {
  return commutator_tangent(rho, Observable(a));
}

}  // namespace

TEST_CASE("inner product examples") {
  // Commuting traceless u: every monotone metric reduces to Tr(rho^-1 u^2).
  oracle::Gen g(1);
  const CMatrix u = g.unitary(3);
  const auto rho = DensityMatrix::from_spectrum((RVector(3) << 0.2, 0.3, 0.5).finished(), u);
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 0.5;
  d(2, 2) = -1.5;
  const TangentVector a(u * d * u.adjoint());
  const double want = oracle::tr(rho.matrix().inverse() * a.matrix() * a.matrix()).real();
  for (const auto& f : catalog()) {
    MetricContext ctx(rho, f);
    CHECK(inner(ctx, a, a) == doctest::Approx(want).epsilon(1e-12));
  }
  const auto half = DensityMatrix::maximally_mixed(2);
  const TangentVector z(pauli_z());
  for (const auto& f : catalog()) {
    CHECK(inner(MetricContext(half, f), z, z) == doctest::Approx(4.0).epsilon(1e-14));
  }
}

TEST_CASE("inner product against the materialized superoperator") {
  oracle::Gen g(2);
  for (const auto& f : catalog()) {
    for (int n = 2; n <= 4; ++n) {
      const CMatrix r = g.state(n);
      const DensityMatrix rho(r);
      const MetricContext ctx(rho, f);
      const auto u = tangent(rho, g.hermitian(n));
      const auto v = tangent(rho, g.hermitian(n));
      const double got = inner(ctx, u, v);
      const double want = oracle_inner(r, f, u.matrix(), v.matrix());
      CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
      CHECK(std::abs(got - inner(ctx, v, u)) <= 1e-10 * std::max(1.0, std::abs(got)));
      CHECK(norm_squared(ctx, u) >= 0.0);
      const double au = area(ctx, u, v);
      CHECK(au >= 0.0);
      CHECK(au <= std::sqrt(norm_squared(ctx, u) * norm_squared(ctx, v)) * (1.0 + 1e-12));
      CHECK(area(ctx, u, TangentVector(-2.5 * u.matrix())) <= 1e-4 * std::sqrt(norm_squared(ctx, u)));
      CHECK(area_radicand(ctx, u, TangentVector(-2.5 * u.matrix())) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("metric on a boundary state is refused") {
  const auto rho = DensityMatrix::diagonal({0.7, 0.3, 0.0});
  const MetricContext ctx(rho, MonotoneFunction::wy());
  const TangentVector z(CMatrix((Eigen::VectorXcd(3) << 1.0, -1.0, 0.0).finished().asDiagonal()));
  CHECK_THROWS_AS(inner(ctx, z, z), SingularStateError);
}

TEST_CASE("C correlation against the materialized superoperator") {
  oracle::Gen g(3);
  for (const auto& f : catalog()) {
    const auto ft = tilde(f);
    for (int n = 2; n <= 4; ++n) {
      const CMatrix r = g.state(n);
      const DensityMatrix rho(r);
      const CMatrix a = g.hermitian(n);
      const CMatrix b = g.hermitian(n);
      const double got = c_correlation(rho, ft, Observable(a), Observable(b));
      const Complex want = oracle_c(r, ft, centered(r, a), centered(r, b));
      CHECK(std::abs(got - want.real()) <= 1e-10);
      CHECK(std::abs(want.imag()) <= 1e-10);
      CHECK(got == doctest::Approx(c_correlation(rho, ft, Observable(b), Observable(a))).epsilon(1e-12));
      const double raw = c_correlation_raw(rho, f, Observable(a), Observable(b));
      CHECK(std::abs(raw - oracle_c(r, f, a, b).real()) <= 1e-10);
      CHECK(c_correlation(rho, f, Observable(a), Observable(a)) >= 0.0);
    }
  }
}

TEST_CASE("two-level C correlation is 2 m_tilde(l1, l2)") {
  const Observable a(-pauli_y());
  for (double l1 : {0.55, 0.75, 0.95}) {
    const auto rho = DensityMatrix::diagonal({l1, 1.0 - l1});
    for (const auto& f : catalog()) {
      const auto ft = tilde(f);
      CHECK(c_correlation(rho, ft, a, a) ==
            doctest::Approx(2.0 * scalar_mean(ft, l1, 1.0 - l1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("pure states: C correlation of vanishing-boundary means is zero") {
  oracle::Gen g(4);
  for (int n = 2; n <= 4; ++n) {
    const auto rho = DensityMatrix::pure(g.ray(n));
    const Observable a(g.hermitian(n));
    const Observable b(g.hermitian(n));
    for (const auto& f : regular_catalog()) {
      CHECK(std::abs(c_correlation(rho, tilde(f), a, b)) <= 1e-12);
      const MetricContext ctx(rho, f);
      CHECK(skew_information(ctx, a) == doctest::Approx(variance(rho, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("arithmetic C correlation on commuting observables is the variance") {
  oracle::Gen g(5);
  const CMatrix u = g.unitary(3);
  const auto rho = DensityMatrix::from_spectrum((RVector(3) << 0.1, 0.3, 0.6).finished(), u);
  const Observable a(u * CMatrix((Eigen::VectorXcd(3) << 2.0, -1.0, 0.5).finished().asDiagonal()) *
                     u.adjoint());
  const auto arith = tilde(MonotoneFunction::rld());
  CHECK(c_correlation(rho, arith, a, a) == doctest::Approx(variance(rho, a)).epsilon(1e-12));
  // Commuting A has no quantum part for any f.
  for (const auto& f : catalog()) {
    CHECK(std::abs(skew_information(MetricContext(rho, f), a)) <= 1e-12);
  }
}

TEST_CASE("WYD skew information matches the commutator formula") {
  oracle::Gen g(6);
  for (double beta : {0.1, 0.25, 0.49, 0.5}) {
    const auto f = MonotoneFunction::wyd(beta);
    for (int n = 2; n <= 5; ++n) {
      const CMatrix r = g.state(n);
      const DensityMatrix rho(r);
      const CMatrix a = g.hermitian(n);
      const CMatrix rb = oracle::herm_pow(r, beta);
      const CMatrix rb1 = oracle::herm_pow(r, 1.0 - beta);
      const double want = -0.5 * oracle::tr(commutator(rb, a) * commutator(rb1, a)).real();
      CHECK(std::abs(skew_information(MetricContext(rho, f), Observable(a)) - want) <= 1e-9);
    }
  }
}

TEST_CASE("f-correlation identities") {
  oracle::Gen g(7);
  for (const auto& f : catalog()) {
    for (int k = 0; k < 12; ++k) {
      const int n = 2 + k % 4;
      const CMatrix r = g.state(n);
      const DensityMatrix rho(r);
      const MetricContext ctx(rho, f);
      const CMatrix am = g.hermitian(n);
      const CMatrix bm = g.hermitian(n);
      const Observable a(am);
      const Observable b(bm);
      const Complex corr = f_correlation(ctx, a, b);
      INFO(f.label() << " n=" << n);
      // Definition with uncentered observables.
      const Complex raw = oracle::tr(r * am * bm) - c_correlation_raw(rho, ctx.f_tilde(), a, b);
      CHECK(std::abs(corr - raw) <= 1e-10 * std::max(1.0, std::abs(raw)));
      // Imaginary part carries the commutator.
      CHECK(std::abs(2.0 * kI * corr.imag() - oracle::tr(r * commutator(am, bm))) <= 1e-10);
      const double isk = skew_information(ctx, a);
      CHECK(std::abs(f_correlation(ctx, a, a) - Complex(isk, 0.0)) <= 1e-10);
      CHECK(isk <= variance(rho, a) + 1e-12);
      if (f.regular()) {
        const auto ua = tangent(rho, am);
        const auto ub = tangent(rho, bm);
        const double f0 = f.f_at_zero();
        CHECK(std::abs(2.0 * corr.real() - f0 * inner(ctx, ua, ub)) <= 1e-9 * std::max(1.0, std::abs(corr)));
        CHECK(std::abs(isk - 0.5 * f0 * norm_squared(ctx, ua)) <= 1e-9 * std::max(1.0, isk));
        // f(0) <i[rho,A], i[rho,B]> = 2 (Re Cov - Tr(Delta(A0) B0)), Delta = m_tilde(L,R).
        const double delta = c_correlation(rho, ctx.f_tilde(), a, b);
        CHECK(std::abs(f0 * inner(ctx, ua, ub) - 2.0 * (sym_covariance(rho, a, b) - delta)) <= 1e-9);
        // Area route against the correlation route.
        const double lhs = 0.5 * f0 * area(ctx, ua, ub);
        const double rhs2 = isk * skew_information(ctx, b) - corr.real() * corr.real();
        CHECK(std::abs(lhs - std::sqrt(std::max(rhs2, 0.0))) <= 1e-7 * std::max(1.0, lhs));
      } else {
        CHECK(isk <= 1e-15 * std::max(1.0, variance(rho, a)));
      }
    }
  }
}

TEST_CASE("Delta = m_tilde(L,R) identities") {
  oracle::Gen g(8);
  for (const auto& f : catalog()) {
    const CMatrix r = g.state(4);
    const DensityMatrix rho(r);
    const auto ft = tilde(f);
    const CMatrix b0 = center(rho, Observable(g.hermitian(4))).matrix();
    const CMatrix di = superop_apply(ft, rho.spectral(), identity(4), SuperopMode::mean);
    const CMatrix db = superop_apply(ft, rho.spectral(), b0, SuperopMode::mean);
    CHECK(std::abs(oracle::tr(di) - 1.0) <= 1e-10);
    CHECK(std::abs(oracle::tr(b0 * di)) <= 1e-10);
    CHECK(std::abs(oracle::tr(db)) <= 1e-10);
  }
}

TEST_CASE("commutator tangent of A and A0 coincide") {
  oracle::Gen g(9);
  const DensityMatrix rho(g.state(3));
  const Observable a(g.hermitian(3) + 4.0 * identity(3));
  const auto t1 = commutator_tangent(rho, a);
  const auto t2 = commutator_tangent(rho, center(rho, a));
  CHECK((t1.matrix() - t2.matrix()).norm() <= 1e-13);
  const MetricContext ctx(rho, MonotoneFunction::bkm());
  CHECK(inner(ctx, t1, t1) == doctest::Approx(inner(ctx, t2, t2)).epsilon(1e-12));
}

TEST_CASE("variance split") {
  const auto rho = DensityMatrix::diagonal({0.75, 0.25});
  const Observable a(-pauli_y());
  const auto split = variance_split(MetricContext(rho, MonotoneFunction::sld()), a);
  CHECK(split.classical == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(split.quantum == doctest::Approx(0.25).epsilon(1e-14));

  oracle::Gen g(10);
  for (const auto& f : catalog()) {
    for (int n = 2; n <= 4; ++n) {
      const DensityMatrix r(g.state(n));
      const Observable b(g.hermitian(n));
      const auto s = variance_split(MetricContext(r, f), b);
      CHECK(s.quantum >= 0.0);
      CHECK(s.classical >= 0.0);
      CHECK(std::abs(s.quantum + s.classical - variance(r, b)) <= 1e-10);
      const auto c = variance_split(MetricContext(r, f), Observable(2.0 * identity(n)));
      CHECK(c.quantum <= 1e-15);
      CHECK(std::abs(c.classical) <= 1e-15);
    }
    const auto pure = DensityMatrix::pure(g.ray(3));
    const Observable p(g.hermitian(3));
    if (f.regular()) {
      const auto s = variance_split(MetricContext(pure, f), p);
      CHECK(std::abs(s.classical) <= 1e-12);
      CHECK(s.quantum == doctest::Approx(variance(pure, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("monotonicity in f") {
  // Pointwise-ordered pairs: harmonic <= geometric <= logarithmic <= arithmetic, sqrt <= WY <= SLD.
  const std::vector<std::pair<MonotoneFunction, MonotoneFunction>> pairs = {
      {MonotoneFunction::rld(), MonotoneFunction::sqrt_fn()},
      {MonotoneFunction::sqrt_fn(), MonotoneFunction::bkm()},
      {MonotoneFunction::bkm(), MonotoneFunction::sld()},
      {MonotoneFunction::sqrt_fn(), MonotoneFunction::wy()},
      {MonotoneFunction::wy(), MonotoneFunction::sld()},
      {MonotoneFunction::wy(), MonotoneFunction::power_bridge(0.75)}};
  const auto grid = FunctionGrid::default_grid();
  for (const auto& [f, h] : pairs) {
    for (double x : grid.points()) REQUIRE(f(x) <= h(x) + 1e-15);
  }
  oracle::Gen g(11);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 4;
    const DensityMatrix rho(g.state(n, 0.001));
    const Observable a(g.hermitian(n));
    for (const auto& [f, h] : pairs) {
      CHECK(c_correlation(rho, f, a, a) <= c_correlation(rho, h, a, a) + 1e-10);
    }
    const double isld = skew_information(MetricContext(rho, MonotoneFunction::sld()), a);
    for (const auto& f : catalog()) {
      CHECK(isld >= skew_information(MetricContext(rho, f), a) - 1e-10);
    }
    for (const auto& f : catalog()) {
      for (const auto& h : catalog()) {
        if (!tilde_leq(f, h, grid)) continue;
        CHECK(skew_information(MetricContext(rho, f), a) >=
              skew_information(MetricContext(rho, h), a) - 1e-10);
      }
    }
  }
}

TEST_CASE("skew information is continuous up to the boundary") {
  oracle::Gen g(12);
  const CMatrix u = g.unitary(3);
  const Observable a(g.hermitian(3));
  const auto edge = DensityMatrix::from_spectrum((RVector(3) << 0.0, 0.3, 0.7).finished(), u);
  for (const auto& f : catalog()) {
    const double at_edge = skew_information(MetricContext(edge, f), a);
    // WYD(0.1) approaches its boundary value like eps^0.1, so only monotone
    // approach is asserted.
    double first = -1.0;
    double prev = INFINITY;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
      const auto near = DensityMatrix::from_spectrum((RVector(3) << eps, 0.3, 0.7 - eps).finished(), u);
      const double err = std::abs(skew_information(MetricContext(near, f), a) - at_edge);
      CHECK(err <= prev + 1e-15);
      if (first < 0.0) first = err;
      prev = err;
    }
    if (f.regular()) CHECK(prev <= 0.5 * first);
  }
}

TEST_CASE("clamp_nonnegative") {
  CHECK(clamp_nonnegative(0.5, 1e-10, "x") == 0.5);
  CHECK(clamp_nonnegative(-1e-11, 1e-10, "x") == 0.0);
  CHECK_THROWS_AS(clamp_nonnegative(-1e-9, 1e-10, "x"), ConsistencyError);
}
