#pragma once

// Finite-difference sub-Laplacian of the Heisenberg distance function and the
// sample sweep behind the Laplacian comparison check.
//
// Left-invariant frame on H^n: X_i = d/dx_i - (y_i / 2) d/dz, Y_i = d/dy_i + (x_i / 2) d/dz.
// Their flows are affine: exp(s X_i) shifts x_i by s and z by -y_i s / 2;
// exp(s Y_i) shifts y_i by s and z by x_i s / 2.

#include "sasaki/comparison.hpp"
#include "sasaki/geometry_core.hpp"
#include "sasaki/models.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sasaki {

using ScalarField = std::function<double(const Vector&)>;

/// Point reached from x by the flow of the k-th frame field (k = 2i for X_i,
/// 2i+1 for Y_i) for time s.
Vector heisenberg_frame_flow(const Vector& x, int k, double s);

/// sum_i X_i(X_i f) + Y_i(Y_i f) by central second differences along the
/// exact flows, Richardson-extrapolated from steps (s, s/2).
double sub_laplacian_fd(const ScalarField& f, const Vector& x, double step);

/// (X_1 f, Y_1 f, ..., X_n f, Y_n f), Richardson-extrapolated central differences.
Vector horizontal_gradient_fd(const ScalarField& f, const Vector& x, double step);

/// d f / d z (the Reeb field of the Heisenberg group), same scheme.
double reeb_derivative_fd(const ScalarField& f, const Vector& x, double step);

struct LaplacianSample {
  Vector x;
  double d = 0.0;
  double v0d = 0.0;
  double lapH = 0.0;
  double bound = 0.0;            // h(d, d v0(d)) in the selected form
  double bound_displayed = 0.0;  // the (2n-1) cot form, reported alongside
  double margin = 0.0;           // bound - lapH
  double grad_norm = 0.0;        // |grad_H d|, 1 for a distance function
};

struct LaplacianOptions {
  double step_rel = 1e-3;  // finite-difference step relative to d
  double box = 2.0;        // samples uniform in [-box, box]^{2n+1}
  double exclusion = 0.05; // minimum distance to the z-axis
  HForm form = HForm::trace;
};

/// Evaluates one sample at x (Heisenberg, k = (0, 0)).
LaplacianSample laplacian_sample(const Vector& x, const LaplacianOptions& options = {});

/// Draws `samples` points, sample i depending only on (seed, i), and evaluates
/// each in parallel. The model must be Heisenberg.
std::vector<LaplacianSample> verify_laplacian_comparison(const ModelSpace& model, int samples,
                                                         std::uint64_t seed,
                                                         const LaplacianOptions& options = {});

}  // namespace sasaki
