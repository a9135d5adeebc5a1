#pragma once

// Explicit adaptive Runge-Kutta (Dormand-Prince 5(4)) on Eigen vectors.

#include "sasaki/geometry_core.hpp"

#include <functional>
#include <limits>
#include <span>

namespace sasaki::ode {

using Rhs = std::function<void(double t, const Vector& y, Vector& dydt)>;

/// Called after every accepted step; returning false stops the integration.
using Observer = std::function<bool(double t, const Vector& y)>;

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct AdaptiveOptions {
  Tolerance tol;
  double initial_step = 0.0;  // 0 selects a step from the local scale of the problem
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 2'000'000;
};

struct Endpoint {
  double t = 0.0;
  Vector y;
};

/// One unconditioned fifth-order step of size h from (t, y).
Vector dopri_step(const Rhs& f, double t, const Vector& y, double h);

/// Integrates from t0 to t1 (t1 > t0). Every time in `stops` that lies in
/// (t0, t1] is hit exactly and reported to the observer. Throws NumericalError
/// on step-size underflow, naming the time where it happened.
Endpoint integrate(const Rhs& f, double t0, const Vector& y0, double t1,
                   const AdaptiveOptions& opts, const Observer& observer,
                   std::span<const double> stops = {});

}  // namespace sasaki::ode
