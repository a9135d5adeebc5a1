#pragma once

// Entire functions of x = k t^2 that appear in every constant-curvature
// formula. With tau = sqrt(x) they read as trigonometric expressions for
// x > 0 and continue to hyperbolic ones for x < 0 (tau = i sqrt(-x)). Each is
// evaluated by its power series for |x| < 1 and by the closed form otherwise,
// so the k -> 0 limits and the sign change of k are handled by one code path.

namespace sasaki::special {

/// cos(tau)
double cos_sqrt(double x);

/// sin(tau) / tau
double sinc_sqrt(double x);

/// (1 - cos(tau)) / tau^2, equal to 1/2 at x = 0
double one_minus_cos_over_x(double x);

/// (tau - sin(tau)) / tau^3, equal to 1/6 at x = 0
double tau_minus_sin_over_cube(double x);

/// (2 - 2 cos(tau) - tau sin(tau)) / tau^4, equal to 1/12 at x = 0.
/// First positive zero at tau = 2 pi.
double s_hat(double x);

/// (tau^2 cos(tau) - tau sin(tau)) / tau^4, equal to -1/3 at x = 0
double e_hat(double x);

/// tau cot(tau), equal to 1 at x = 0; pole at tau = pi
double tau_cot(double x);

}  // namespace sasaki::special
