#include "qgeom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace qgeom {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::equality:
      return "equality";
    case Verdict::violated:
      return "violated";
  }
  return "violated";
}

Verdict classify(double gap, double tolerance) {
  if (std::isnan(gap)) return Verdict::violated;
  if (std::abs(gap) <= tolerance) return Verdict::equality;
  return gap > tolerance ? Verdict::holds : Verdict::violated;
}

double gap_tolerance(double lhs_scale) { return 1e-9 * std::max(1.0, lhs_scale); }

GapReport GapReport::make(std::string name, double lhs, double rhs, double tolerance,
                          std::string f_label) {
  GapReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.tolerance = tolerance;
  r.verdict = classify(r.gap, tolerance);
  r.f_label = std::move(f_label);
  return r;
}

std::string fingerprint(const CMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  mix(dims, sizeof dims);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      // +0.0 and -0.0 hash alike.
      const double parts[2] = {m(i, j).real() + 0.0, m(i, j).imag() + 0.0};
      mix(parts, sizeof parts);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

nlohmann::json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

nlohmann::json to_json(const GapReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["f_label"] = r.f_label;
  j["dim"] = r.dim;
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
  j["lhs"] = number_or_null(r.lhs);
  j["rhs"] = number_or_null(r.rhs);
  j["gap"] = number_or_null(r.gap);
  j["tol"] = number_or_null(r.tolerance);
  j["verdict"] = to_string(r.verdict);
  j["state_fingerprint"] = r.state_fingerprint;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_header() { return "name,f_label,dim,seed,lhs,rhs,gap,tol,verdict\r\n"; }

std::string to_csv_row(const GapReport& r) {
  std::string row;
  row += csv_escape(r.name) + ',';
  row += csv_escape(r.f_label) + ',';
  row += std::to_string(r.dim) + ',';
  row += (r.seed ? std::to_string(*r.seed) : std::string()) + ',';
  row += format_double(r.lhs) + ',';
  row += format_double(r.rhs) + ',';
  row += format_double(r.gap) + ',';
  row += format_double(r.tolerance) + ',';
  row += to_string(r.verdict);
  row += "\r\n";
  return row;
}

}  // namespace qgeom
