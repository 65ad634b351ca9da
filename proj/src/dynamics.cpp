#include "qgeom/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qgeom/errors.hpp"
#include "qgeom/inequalities.hpp"
#include "qgeom/qfi.hpp"

namespace qgeom {

namespace {

CMatrix trace_free(const Observable& h) {
  CMatrix m = h.matrix();
  const double shift = m.trace().real() / static_cast<double>(m.rows());
  m.diagonal().array() -= shift;
  return m;
}

}  // namespace

Evolution::Evolution(DensityMatrix rho0, Observable hamiltonian, std::vector<double> times)
    : rho0_(std::move(rho0)),
      h_(std::move(hamiltonian)),
      times_(std::move(times)),
      h_spec_(trace_free(h_)) {
  check_same_dim(rho0_.dim(), h_.dim(), "evolution");
  for (double t : times_) {
    if (!std::isfinite(t)) throw DomainError("evolution: times must be finite");
  }
}

DensityMatrix evolve(const Evolution& ev, double t) {
  if (!std::isfinite(t)) throw DomainError("evolve: time must be finite");
  const SpectralDecomposition& hs = ev.h_spectral();
  const CVector phases =
      (hs.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  const CMatrix u = hs.eigenvectors() * phases.asDiagonal() * hs.eigenvectors().adjoint();
  // Conjugating the eigenvectors keeps the spectrum exact.
  const auto& s0 = ev.rho0().spectral();
  return DensityMatrix::from_spectrum(s0.eigenvalues(), u * s0.eigenvectors());
}

TangentVector velocity(const DensityMatrix& rho, const Observable& h) {
  return commutator_tangent(rho, h);
}

GapReport derivative_check(const Evolution& ev, double step) {
  if (!(step > 0.0)) throw ParameterError("derivative_check: step must be positive");
  const CMatrix plus = evolve(ev, step).matrix();
  const CMatrix minus = evolve(ev, -step).matrix();
  const CMatrix fd = (plus - minus) / (2.0 * step);
  const CMatrix exact = velocity(ev.rho0(), ev.hamiltonian()).matrix();
  const double h0 = trace_free(ev.hamiltonian()).norm();
  const double denom = std::max(exact.norm(), 1e-12 * std::max(1.0, ev.rho0().matrix().norm() * h0));
  const double residual = (fd - exact).norm() / denom;
  GapReport r = GapReport::make("lvn_derivative", 0.0, residual, 1e-6);
  r.dim = static_cast<int>(ev.rho0().dim());
  r.state_fingerprint = fingerprint(ev.rho0().matrix());
  r.detail = "step=" + format_double(step);
  return r;
}

GapReport dynamic_bound(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& h,
                        const Observable& k) {
  const UncertaintyTerms t = uncertainty_terms(rho, f, h, k);
  const double tol_sq = gap_tolerance(t.scale());
  const double lhs = std::sqrt(clamp_nonnegative(t.lhs(), tol_sq, "covariance area"));
  const MetricContext ctx(rho, f);
  const double rhs =
      f.f_at_zero() / 2.0 * area(ctx, velocity(rho, h), velocity(rho, k));
  const double tol = tol_sq / std::max(lhs + rhs, std::sqrt(tol_sq));
  GapReport r = GapReport::make("dynamic_bound", lhs, rhs, tol, f.label());
  r.dim = static_cast<int>(rho.dim());
  r.state_fingerprint = fingerprint(rho.matrix());

  const GapReport squared = main_gap(rho, f, h, k);
  const bool near_edge = std::abs(std::abs(squared.gap) - squared.tolerance) <= squared.tolerance;
  if (squared.verdict != r.verdict && !near_edge) {
    throw ConsistencyError("dynamic_bound: verdict differs from main_gap (" + to_string(r.verdict) +
                           " vs " + to_string(squared.verdict) + ")");
  }
  r.detail = "main_gap=" + format_double(squared.gap);
  return r;
}

std::vector<TrajectoryPoint> dynamic_trajectory(const Evolution& ev, const MonotoneFunction& f,
                                                const Observable& k) {
  std::vector<TrajectoryPoint> out;
  out.reserve(ev.times().size());
  for (double t : ev.times()) {
    GapReport r = dynamic_bound(evolve(ev, t), f, ev.hamiltonian(), k);
    r.detail += ";t=" + format_double(t);
    out.push_back({t, std::move(r)});
  }
  return out;
}

}  // namespace qgeom
