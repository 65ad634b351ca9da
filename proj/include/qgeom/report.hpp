#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeom/linalg.hpp"

namespace qgeom {

enum class Verdict { holds, equality, violated };

std::string to_string(Verdict v);

/// Equality when |gap| <= tol, holds when gap > tol, violated when gap < -tol.
Verdict classify(double gap, double tolerance);

/// Default tolerance for inequalities homogeneous of degree 4 in the observables:
/// 1e-9 * max(1, Var(A) Var(B)).
double gap_tolerance(double lhs_scale);

/// One evaluation of one inequality (or identity) on one input.
struct GapReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::equality;
  std::string f_label;
  std::string state_fingerprint;
  std::optional<std::uint64_t> seed;
  int dim = 0;
  std::string detail;

  static GapReport make(std::string name, double lhs, double rhs, double tolerance,
                        std::string f_label = {});

  [[nodiscard]] bool ok() const { return verdict != Verdict::violated; }
};

/// FNV-1a over the IEEE bytes of the real and imaginary parts, as 16 hex digits.
std::string fingerprint(const CMatrix& m);

/// Round-trip exact decimal: 17 significant digits, '.' separator.
std::string format_double(double x);

nlohmann::json to_json(const GapReport& r);

/// RFC-4180 CSV with columns name,f_label,dim,seed,lhs,rhs,gap,tol,verdict.
std::string csv_header();
std::string to_csv_row(const GapReport& r);
std::string csv_escape(const std::string& field);

}  // namespace qgeom
