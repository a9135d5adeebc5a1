#pragma once

// Structural equations of the canonical frame along one geodesic.
//
// The linear system
//   A' = -A C1 + B R(t),   B' = -A C2 + B C1^T,   A(0) = I, B(0) = 0
// and the Riccati equation for S = B^{-1} A
//   S' = S C2 S - C1^T S - S C1 + R(t),   S(t)^{-1} -> 0 as t -> 0.
// A conjugate time is a zero of det B.

#include "sasaki/geometry_core.hpp"
#include "sasaki/ode.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace sasaki {

using CurvatureProfile = std::function<CanonicalCurvature(double t)>;

CurvatureProfile constant_profile(const CanonicalCurvature& r);

struct JacobiOptions {
  ode::Tolerance tol{1e-10, 1e-10};
  /// Extra times the integrator must land on (they are added to the grid).
  std::vector<double> output_times;
};

struct ConjugateBracket {
  double t = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

class JacobiSolution {
 public:
  JacobiSolution(int n, CurvatureProfile profile, JacobiOptions options);

  int n() const { return n_; }
  double horizon() const { return grid.back(); }

  /// (A(t), B(t)) for any t in [0, horizon], by one fifth-order step from the
  /// nearest grid time at or below t.
  std::pair<Matrix, Matrix> evaluate(double t) const;

  std::vector<double> grid;
  std::vector<Matrix> A;
  std::vector<Matrix> B;
  std::vector<double> detB;
  std::vector<double> sigma_min;  // smallest singular value of B
  std::vector<double> sigma_max;

  /// Set by first_conjugate_time.
  std::optional<ConjugateBracket> conjugate_time;

 private:
  int n_;
  CurvatureProfile profile_;
  JacobiOptions options_;
};

JacobiSolution integrate_jacobi(int n, const CurvatureProfile& profile, double T,
                                const JacobiOptions& options = {});

/// Smallest t > 0 with det B(t) = 0, or nullopt if there is none on the grid.
/// Sign changes of det B are refined by bisection; zeros of even multiplicity
/// (no sign change) are found as vanishing local minima of sigma_min(B) and
/// refined by golden-section search. Throws NumericalError when B is
/// numerically singular at two consecutive grid times (indeterminate).
std::optional<double> first_conjugate_time(JacobiSolution& sol);

struct RiccatiState {
  double t = 0.0;
  Matrix S;

  int n() const { return static_cast<int>(S.rows() - 1) / 2; }
  Matrix s1() const;  // 2 x 2
  Matrix s2() const;  // 2 x (2n-2)
  Matrix s3() const;  // 2 x 1
  Matrix s4() const;  // (2n-2) x (2n-2)
  Matrix s5() const;  // (2n-2) x 1
  double s6() const;
};

struct RiccatiOptions {
  ode::Tolerance tol{1e-10, 1e-10};
  double t0 = 1e-3;
  /// Maximum relative discrepancy between the runs seeded at t0 and t0/2.
  double seed_check = 1e-9;
  int max_seed_halvings = 6;
  double blow_up = 1e12;
  /// Report states at these times only; empty reports every accepted step.
  std::vector<double> output_times;
};

struct RiccatiResult {
  std::vector<RiccatiState> states;
  double t0 = 0.0;  // seeding time actually used
  /// Set when |S|_max exceeded the blow-up threshold before T; holds the last
  /// time at which S was below it.
  std::optional<double> blow_up_time;
};

/// Taylor coefficients U_1..U_order of U = S^{-1} at t = 0 for the curvature R.
std::vector<Matrix> riccati_inverse_series(int n, const Matrix& R, int order);

RiccatiResult integrate_riccati(int n, const CurvatureProfile& profile, double T,
                                const RiccatiOptions& options = {});

/// Closed-form S(t) for the constant curvature R^{frak1, frak2}.
RiccatiState oracle_S(int n, double frak1, double frak2, double t);

/// S(t) = B^{-1} A from the matrix exponential of the constant-coefficient
/// linear system; independent of the closed form above.
RiccatiState expm_S(int n, double frak1, double frak2, double t);

/// |det B(t)| for the constant curvature R^{frak1, frak2} in closed form:
/// t^{2n+3} sinc(sqrt(frak2) t)^{2n-2} s_hat(frak1 t^2).
double closed_form_abs_det_b(int n, double frak1, double frak2, double t);

}  // namespace sasaki
