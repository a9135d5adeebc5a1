#pragma once

// Closed-form comparison quantities for Sasakian manifolds whose
// Tanaka-Webster curvature is bounded below by (k1, k2).
//
// All functions are written in terms of the effective curvatures
//   frak1 = z^2 + k1 r^2,   frak2 = z^2 / 4 + k2 r^2
// of a covector with |p^h| = r and p(v0) = z. Negative values continue the
// trigonometric expressions to hyperbolic ones.

#include <utility>

namespace sasaki {

struct CurvatureBounds {
  double k1 = 0.0;
  double k2 = 0.0;
  int n = 1;
};

struct FrakPair {
  double frak1 = 0.0;
  double frak2 = 0.0;
};

FrakPair frak(double r, double z, const CurvatureBounds& bounds);

/// (2 pi / sqrt(z^2 + k1 r^2), 2 pi / sqrt(z^2 + 4 k2 r^2)); +inf where the
/// radicand is not positive.
std::pair<double, double> conjugate_bounds(double r, double z, const CurvatureBounds& bounds);

/// Smallest applicable conjugate-time bound. For n = 1 the k2 block is empty
/// and only the first bound applies.
double conjugate_time_bound(double r, double z, const CurvatureBounds& bounds);

/// Lower bound for tr(C2 S(t)); attained by the constant-curvature Riccati
/// solution. Throws NumericalError within 1e-12 of a pole.
double trace_bound(double t, const FrakPair& fk, int n);

enum class HForm {
  trace,      // -(trace bound at t = 1) / r: coefficient (2n-2) on the cot term plus 1/r
  displayed,  // (2n-1) cot coefficient, no separate 1/r term
};

/// Laplacian comparison function h(r, z). Equal to (2n+3)/r when frak = 0.
double laplace_h(double r, double z, const CurvatureBounds& bounds, HForm form = HForm::trace);

/// Volume comparison integrand
///   k(r, z) = r^2 sin^{2n-2}(sqrt frak2) s(sqrt frak1) / (frak1^2 frak2^{n-1}),
/// s(x) = 2 - 2 cos x - x sin x. Tends to r^2 / 12 as frak -> 0.
double volume_k(double r, double z, const CurvatureBounds& bounds);

}  // namespace sasaki
