#pragma once

// Sub-Riemannian ball volumes of the model spaces.
//
// With unit covectors p = (dir, z), |dir| = 1, the Popp volume of the ball of
// radius R around the base point is
//   vol(R) = |S^{2n-1}| * 2 * int_0^inf dz int_0^{min(T(z), R)} |det B_{(1,z)}(t)| / t dt,
// where T(z) is the cut time. The integrand does not depend on dir.

#include "sasaki/models.hpp"
#include "sasaki/ode.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sasaki {

enum class VolumeMethod {
  quadrature,  // closed-form |det B| on the (t, z) domain
  k_integral,  // k(r, z) against r^{2n-1} dr dz over the region inside the cut locus
  jacobi,      // |det B| from integrating the linear Jacobi system for every z node
  monte_carlo  // stratified sampling of the (t, z) integral
};

VolumeMethod parse_volume_method(const std::string& name);
std::string to_string(VolumeMethod m);

struct VolumeOptions {
  VolumeMethod method = VolumeMethod::quadrature;
  double tol = 1e-10;      // relative tolerance of each adaptive quadrature
  int cells = 8;           // fixed cells per smooth piece of the outer domain
  int max_depth = 15;      // Gauss-Kronrod bisection depth
  long samples = 40000;    // monte_carlo only
  std::uint64_t seed = 1;  // monte_carlo only
  ode::Tolerance jacobi_tol{1e-11, 1e-11};
};

struct NodeCounts {
  long outer = 0;  // evaluations of the inner integral
  long inner = 0;  // evaluations of the integrand
  int cells = 0;
};

struct VolumeResult {
  double R = 0.0;
  double value = 0.0;
  double abs_error_estimate = 0.0;
  NodeCounts node_counts;
  ModelSpace model;
  VolumeMethod method = VolumeMethod::quadrature;
};

/// Area of the unit sphere S^{2n-1} in R^{2n}.
double sphere_area(int n);

VolumeResult ball_volume(const ModelSpace& model, double R, const VolumeOptions& options = {});

struct BishopRow {
  double R = 0.0;
  double vol_model = 0.0;
  double vol_reference = 0.0;
  double ratio = 0.0;
  bool ok = false;  // ratio <= 1 + tolerance
};

/// Compares the model's ball volumes against those of the Heisenberg (k = (0,0))
/// or Hopf (k = (4,1)) reference of the same dimension. Rejects models whose
/// curvature constants lie below the reference's.
std::vector<BishopRow> bishop_check(const ModelSpace& model, ModelKind reference,
                                    const std::vector<double>& radii,
                                    const VolumeOptions& options = {}, double tolerance = 1e-3);

}  // namespace sasaki
