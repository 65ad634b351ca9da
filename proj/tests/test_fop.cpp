#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <stdexcept>

#include "oracles.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/fop.hpp"

using namespace qgeom;

namespace {

const std::vector<std::string> kKeys = {"sld", "wy",  "wyd:0.1", "wyd:0.25", "wyd:0.49",
                                        "wyd:-0.5", "rld", "bkm", "bridge:0.75", "sqrt"};

const FunctionGrid kGrid = FunctionGrid::default_grid();

}  // namespace

TEST_CASE("closed forms at table points") {
  CHECK(eval_f(MonotoneFunction::sld(), 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eval_f(MonotoneFunction::wy(), 4.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(eval_f(MonotoneFunction::bkm(), 1.0) == 1.0);
}

TEST_CASE("WYD removable singularity matches extrapolated long double oracle") {
  const auto f = MonotoneFunction::wyd(0.25);
  const double x = 1.0 + 1e-9;
  const double expected = static_cast<double>(oracle::by_key("wyd:0.25", x));
  CHECK(std::abs(f(x) - expected) <= 1e-8);
  CHECK(std::abs(f(x) - 1.0) <= 1e-8);
  CHECK(f(1.0) == 1.0);
}

TEST_CASE("every catalog entry agrees with the long double closed form on the grid") {
  const auto grid = FunctionGrid::default_grid();
  for (const auto& key : kKeys) {
    const auto f = parse_function_key(key);
    for (double x : grid.points()) {
      const double want = static_cast<double>(oracle::by_key(key, x));
      INFO(key << " x=" << x);
      // Near x = 1 the oracle itself is an O(h^4) extrapolation.
      const double tol = std::abs(x - 1.0) < 1e-3 ? 1e-10 : 1e-13;
      CHECK(std::abs(f(x) - want) <= tol * std::max(1.0, want));
    }
  }
}

TEST_CASE("series branch is continuous across its radius") {
  for (const char* key : {"bkm", "wyd:0.25", "wyd:-0.5", "wyd:0.1"}) {
    const auto f = parse_function_key(key);
    for (double side : {-1.0, 1.0}) {
      const double inside = 1.0 + side * kSeriesRadius * (1.0 - 1e-9);
      const double outside = 1.0 + side * kSeriesRadius * (1.0 + 1e-9);
      INFO(key);
      CHECK(std::abs(f(inside) - f(outside)) <= 1e-12);
    }
  }
}

TEST_CASE("f(0) column") {
  CHECK(f_zero(MonotoneFunction::sld()) == 0.5);
  CHECK(f_zero(MonotoneFunction::wyd(0.25)) == 0.1875);
  CHECK(f_zero(MonotoneFunction::rld()) == 0.0);
  CHECK(f_zero(MonotoneFunction::wy()) == 0.25);
  CHECK(f_zero(MonotoneFunction::bkm()) == 0.0);
  CHECK(f_zero(MonotoneFunction::wyd(-0.5)) == 0.0);
  CHECK(f_zero(MonotoneFunction::sqrt_fn()) == 0.0);
  CHECK(f_zero(MonotoneFunction::power_bridge(0.75)) == std::pow(0.5, 1.0 / 0.75));
  for (const auto& key : kKeys) {
    const auto f = parse_function_key(key);
    CHECK(f.regular() == (f.f_at_zero() > 0.0));
  }
}

TEST_CASE("f(0) agrees with the limit of f(x)/x") {
  // f(x)/x = f(1/x) by symmetry, so the probe converges to f(0); the rate
  // depends on the entry (1/x for SLD, x^-beta for WYD, 1/log x for BKM).
  for (const auto& key : kKeys) {
    const auto f = parse_function_key(key);
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {1e2, 1e4, 1e6, 1e8}) {
      const double probe = f(x) / x;
      const double err = std::abs(probe - f.f_at_zero());
      INFO(key << " x=" << x);
      CHECK(err <= prev);
      CHECK(std::abs(probe - f(1.0 / x)) <= 1e-12);
      prev = err;
    }
  }
  const auto sld = MonotoneFunction::sld();
  CHECK(std::abs(sld(1e8) / 1e8 - 0.5) <= 1e-8);
}

TEST_CASE("tilde at table points") {
  CHECK(tilde(MonotoneFunction::sld())(3.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(tilde(MonotoneFunction::wy())(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tilde(MonotoneFunction::rld())(3.0) == 2.0);
}

TEST_CASE("tilde of a non-regular function never evaluates it") {
  const auto f = MonotoneFunction::custom(
      [](double) -> double { throw std::logic_error("evaluated"); }, 0.0, "never");
  const auto g = tilde(f);
  CHECK(g(3.0) == 2.0);
  CHECK(g.regular());
  CHECK(g.f_at_zero() == 0.5);
}

TEST_CASE("tilde regularity flags and double tilde") {
  const auto grid = FunctionGrid::default_grid();
  for (const auto& f : catalog()) {
    const auto t = tilde(f);
    CHECK(t.regular() == !f.regular());
    CHECK(t.kind() == FunctionKind::TildeOf);
    REQUIRE(t.inner() != nullptr);
    CHECK(t.inner()->label() == f.label());
    if (f.regular()) {
      const auto tt = tilde(t);
      for (double x : grid.points()) CHECK(tt(x) == doctest::Approx((1.0 + x) / 2.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("tilde matches the printed closed forms") {
  const auto grid = FunctionGrid::default_grid();
  for (double beta : {0.1, 0.25, 0.49}) {
    const auto t = tilde(MonotoneFunction::wyd(beta));
    for (double x : grid.points()) {
      const double want = (std::pow(x, beta) + std::pow(x, 1.0 - beta)) / 2.0;
      CHECK(std::abs(t(x) - want) <= 1e-10);
    }
  }
  const auto ts = tilde(MonotoneFunction::sld());
  const auto tw = tilde(MonotoneFunction::wy());
  for (double x : grid.points()) {
    CHECK(std::abs(ts(x) - 2.0 * x / (1.0 + x)) <= 1e-10);
    CHECK(std::abs(tw(x) - std::sqrt(x)) <= 1e-10);
  }
  // Same transform evaluated independently in long double.
  for (const auto& key : kKeys) {
    const auto t = tilde(parse_function_key(key));
    for (double x : grid.points()) {
      INFO(key << " x=" << x);
      CHECK(std::abs(t(x) - static_cast<double>(oracle::tilde_by_key(key, x))) <=
            1e-10 * std::max(1.0, x));
    }
  }
}

TEST_CASE("tilde_leq examples and the chain") {
  const auto grid = FunctionGrid::default_grid();
  const auto sld = MonotoneFunction::sld();
  const auto wy = MonotoneFunction::wy();
  const auto rld = MonotoneFunction::rld();
  CHECK(tilde_leq(sld, wy, grid));
  CHECK_FALSE(tilde_leq(MonotoneFunction::wyd(0.25), wy, grid));
  for (const auto& f : catalog()) CHECK(tilde_leq(f, f, grid));
  for (double beta : {0.1, 0.25, 0.49}) {
    const auto w = MonotoneFunction::wyd(beta);
    CHECK(tilde_leq(wy, w, grid));
    CHECK(tilde_leq(w, rld, grid));
    CHECK(tilde_leq(sld, w, grid));
  }
  CHECK(tilde_leq(MonotoneFunction::wyd(0.49), MonotoneFunction::wyd(0.1), grid));
  CHECK(tilde_leq(sld, rld, grid));
}

TEST_CASE("SLD ratio strictly dominates WY off x = 1") {
  const auto sld = MonotoneFunction::sld();
  const auto wy = MonotoneFunction::wy();
  for (double x : kGrid.points()) {
    if (x == 1.0) continue;
    CHECK(sld.f_at_zero() / sld(x) > wy.f_at_zero() / wy(x));
  }
}

TEST_CASE("check_axioms") {
  const auto grid = FunctionGrid::default_grid();
  const GapReport bkm = check_axioms(MonotoneFunction::bkm(), grid);
  CHECK(bkm.ok());
  CHECK(bkm.rhs <= 1e-12);
  CHECK(check_axioms(MonotoneFunction::wyd(-0.5), grid).ok());
  for (const auto& f : catalog()) {
    INFO(f.label());
    CHECK(check_axioms(f, grid).ok());
    CHECK(check_axioms(tilde(f), grid).ok());
  }
  const auto sq = MonotoneFunction::custom([](double x) { return x * x; }, 0.0, "square");
  const GapReport bad = check_axioms(sq, grid);
  CHECK(bad.verdict == Verdict::violated);
  CHECK(bad.detail.find("symmetry") != std::string::npos);
  CHECK(bad.detail.find("unverified") != std::string::npos);
  CHECK_FALSE(sq.verified());
}

TEST_CASE("harmonic <= f <= arithmetic pointwise") {
  for (const auto& f : catalog()) {
    for (double x : kGrid.points()) {
      CHECK(f(x) >= 2.0 * x / (1.0 + x) - 1e-12 * std::max(1.0, x));
      CHECK(f(x) <= (1.0 + x) / 2.0 + 1e-12 * std::max(1.0, x));
    }
  }
}

TEST_CASE("WYD at beta = 1/2 coincides with WY") {
  const auto a = MonotoneFunction::wyd(0.5);
  const auto b = MonotoneFunction::wy();
  CHECK(a.f_at_zero() == b.f_at_zero());
  for (double x : kGrid.points()) {
    CHECK(a(x) == doctest::Approx(b(x)).epsilon(1e-13));
  }
}

TEST_CASE("parameter and domain errors") {
  CHECK_THROWS_AS(MonotoneFunction::wyd(0.0), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::wyd(0.6), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::wyd(-1.0), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::wyd(std::nan("")), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::power_bridge(0.4), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::power_bridge(1.1), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::custom({}, 0.0, "x"), ParameterError);
  CHECK_THROWS_AS(MonotoneFunction::custom([](double x) { return x; }, -1.0, "x"), ParameterError);
  const auto f = MonotoneFunction::sld();
  CHECK_THROWS_AS(f(0.0), DomainError);
  CHECK_THROWS_AS(f(-1.0), DomainError);
  CHECK_THROWS_AS(f(std::nan("")), DomainError);
  CHECK_THROWS_AS(f(INFINITY), DomainError);
}

TEST_CASE("power bridge endpoints") {
  const auto b1 = MonotoneFunction::power_bridge(1.0);
  const auto bh = MonotoneFunction::power_bridge(0.5);
  for (double x : kGrid.points()) {
    CHECK(b1(x) == doctest::Approx(MonotoneFunction::sld()(x)).epsilon(1e-14));
    CHECK(bh(x) == doctest::Approx(MonotoneFunction::wy()(x)).epsilon(1e-14));
  }
  CHECK(b1.f_at_zero() == 0.5);
  CHECK(bh.f_at_zero() == 0.25);
}

TEST_CASE("keys round-trip") {
  for (const auto& key : kKeys) CHECK(parse_function_key(key).label() == key);
  CHECK(parse_function_key("tilde:wy").label() == "tilde:wy");
  CHECK(parse_function_key("wyd:0.25").parameter().value() == 0.25);
  CHECK_THROWS_AS(parse_function_key("nope"), ParameterError);
  CHECK_THROWS_AS(parse_function_key("wyd:abc"), ParameterError);
  CHECK_THROWS_AS(parse_function_key("wyd:"), ParameterError);
  CHECK_THROWS_AS(parse_function_key("wyd:0.25x"), ParameterError);
  CHECK_THROWS_AS(parse_function_key("bridge:2"), ParameterError);
  CHECK(catalog().size() == 10);
  for (const auto& f : regular_catalog()) CHECK(f.regular());
  CHECK(regular_catalog().size() == 6);
}

TEST_CASE("grid") {
  const auto g = FunctionGrid::default_grid();
  // 41 log-spaced points already contain 1, so 43 distinct points.
  CHECK(g.size() == 43);
  CHECK(g.points().front() == doctest::Approx(1e-4));
  CHECK(g.points().back() == doctest::Approx(1e4));
  for (double special : {1.0 - 1e-6, 1.0, 1.0 + 1e-6}) {
    CHECK(std::find(g.points().begin(), g.points().end(), special) != g.points().end());
  }
  CHECK_THROWS_AS(FunctionGrid({}), ParameterError);
  CHECK_THROWS_AS(FunctionGrid({0.5, 0.7}), ParameterError);
  CHECK_THROWS_AS(FunctionGrid({2.0, 0.5}), ParameterError);
  CHECK_THROWS_AS(FunctionGrid({-1.0, 2.0}), ParameterError);
  CHECK_THROWS_AS(FunctionGrid({0.5, 0.5, 2.0}), ParameterError);
  CHECK_NOTHROW(FunctionGrid({0.5, 2.0}));
}

TEST_CASE("functions are shareable across threads") {
  const auto f = parse_function_key("tilde:wyd:0.25");
  std::vector<double> out(4);
  std::vector<std::thread> ts;
  for (int k = 0; k < 4; ++k) {
    ts.emplace_back([&, k] {
      double s = 0.0;
      for (double x : kGrid.points()) s += f(x * (k + 1));
      out[static_cast<std::size_t>(k)] = s;
    });
  }
  for (auto& t : ts) t.join();
  for (int k = 0; k < 4; ++k) CHECK(std::isfinite(out[static_cast<std::size_t>(k)]));
}
