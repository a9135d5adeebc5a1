#pragma once

// Closed-form geometry of the model spaces: the Heisenberg group R^{2n+1},
// the complex Hopf fibration S^{2n+1} -> CP^n, and a synthetic model whose
// canonical curvature is the constant R^{k1,k2} along every geodesic.
//
// Coordinates. Heisenberg points are (x1, y1, ..., xn, yn, z). Hopf points are
// (Re z1, Im z1, ..., Re z_{n+1}, Im z_{n+1}) on the unit sphere of C^{n+1}.
// Geodesics start at the origin (Heisenberg) or at a = (1, 0, ..., 0) (Hopf).

#include "sasaki/comparison.hpp"
#include "sasaki/geometry_core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace sasaki {

enum class ModelKind { heisenberg, hopf, constant_curvature };

struct ModelSpace {
  ModelKind kind = ModelKind::heisenberg;
  int n = 1;
  double k1 = 0.0;
  double k2 = 0.0;

  static ModelSpace heisenberg(int n);
  static ModelSpace hopf(int n);
  static ModelSpace constant(int n, double k1, double k2);

  CurvatureBounds bounds() const { return CurvatureBounds{k1, k2, n}; }
  std::string name() const;
};

/// Throws InvalidArgument if n < 1, the curvature constants are not finite,
/// or a named model carries constants other than its own.
void validate(const ModelSpace& model);

ModelKind parse_model_kind(const std::string& name);

struct GeodesicSample {
  double t = 0.0;
  Vector x;
  std::optional<Covector> p;
};

/// Point at time t on the unit-speed Heisenberg geodesic from the origin with
/// initial covector p (|p^h| = 1).
Vector heisenberg_point(const Covector& p, double t);

/// `steps` samples at t_i = T i / (steps - 1), with the transported covector.
std::vector<GeodesicSample> heisenberg_geodesic(const Covector& p, double T, int steps);

/// Hopf covector in ambient C^{n+1} form: v(0) = i p(v0) and v(1..n) the
/// horizontal part. Its metric norm is |v|^2 = |v^h|^2 + Im(v_1)^2 / 4.
struct HopfCovector {
  Eigen::VectorXcd v;

  int n() const { return static_cast<int>(v.size()) - 1; }
  double metric_norm() const;
};

HopfCovector to_hopf_covector(const Covector& p);

/// Checks Re(v_1) = 0, |v^h| = 1 and |v|^2 - Im(v_1)^2 / 4 = 1; the message
/// names the violated relation.
void validate(const HopfCovector& v);

Eigen::VectorXcd hopf_point(const HopfCovector& v, double t);

std::vector<GeodesicSample> hopf_geodesic(const HopfCovector& v, double T, int steps);
std::vector<GeodesicSample> hopf_geodesic(const Covector& p, double T, int steps);

/// alpha_0 = (1/2) sum (x dy - y dx) evaluated on the tangent vector `v` at `x`.
double hopf_contact_form(const Eigen::VectorXcd& x, const Eigen::VectorXcd& v);

/// Reeb field v0 = 2 sum (-y d/dx + x d/dy) = 2 i x.
Eigen::VectorXcd hopf_reeb_field(const Eigen::VectorXcd& x);

/// Cut time of the unit covector p; +inf when the geodesic minimizes forever.
/// For the constant-curvature model this is its first conjugate time.
double cut_time(const ModelSpace& model, const Covector& p);

/// Sub-Riemannian distance from the origin of the Heisenberg group to q.
double heisenberg_distance(const Vector& q);

/// Constant canonical curvature along the geodesic of p: R^{frak1, frak2} with
/// frak1 = z^2 + k1 r^2, frak2 = z^2 / 4 + k2 r^2.
CanonicalCurvature curvature_along(const ModelSpace& model, const Covector& p);

}  // namespace sasaki
