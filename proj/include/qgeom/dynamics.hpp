#pragma once

#include <vector>

#include "qgeom/fop.hpp"
#include "qgeom/report.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// rho(t) = exp(-itH) rho0 exp(itH).
class Evolution {
 public:
  Evolution(DensityMatrix rho0, Observable hamiltonian, std::vector<double> times = {});

  [[nodiscard]] const DensityMatrix& rho0() const { return rho0_; }
  [[nodiscard]] const Observable& hamiltonian() const { return h_; }
  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  /// Eigensystem of the trace-free part of H (the scalar part is a global phase).
  [[nodiscard]] const SpectralDecomposition& h_spectral() const { return h_spec_; }

 private:
  DensityMatrix rho0_;
  Observable h_;
  std::vector<double> times_;
  SpectralDecomposition h_spec_;
};

DensityMatrix evolve(const Evolution& ev, double t);

/// d/dt rho_H(t) at t = 0: i[rho, H].
TangentVector velocity(const DensityMatrix& rho, const Observable& h);

/// Central difference (rho(h) - rho(-h)) / 2h against i[rho, H]; the relative
/// Frobenius residual must be <= 1e-6.
GapReport derivative_check(const Evolution& ev, double step = 1e-5);

/// Area^{Cov}(H,K) >= (f(0)/2) Area^f(rho_H'(0), rho_K'(0)). Verdict matches
/// main_gap for the same inputs (checked; ConsistencyError otherwise).
GapReport dynamic_bound(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& h,
                        const Observable& k);

struct TrajectoryPoint {
  double t = 0.0;
  GapReport report;
};

/// dynamic_bound(rho_H(t), f, H, K) along ev.times().
std::vector<TrajectoryPoint> dynamic_trajectory(const Evolution& ev, const MonotoneFunction& f,
                                                const Observable& k);

}  // namespace qgeom
