#pragma once

// Direct numerical integration of the sub-Riemannian Hamiltonian flow on the
// two model spaces, used to cross-check the closed-form geodesics.

#include "sasaki/geometry_core.hpp"
#include "sasaki/models.hpp"
#include "sasaki/ode.hpp"

#include <vector>

namespace sasaki {

/// Heisenberg flow of H = (P_X^2 + P_Y^2) / 2 with P_X = p_x - y p_z / 2,
/// P_Y = p_y + x p_z / 2, started at the origin with covector p. Samples at
/// `times` (sorted, nonnegative) with the covector P in the left-invariant frame.
std::vector<GeodesicSample> heisenberg_flow(const Covector& p, const std::vector<double>& times,
                                            const ode::Tolerance& tol = {1e-12, 1e-12});

/// Hopf flow on C^{n+1} \ {0} of
///   H = (|p|^2 - (<p,x>^2 + <p,ix>^2) / |x|^2) / 2,
/// the horizontal kinetic energy of the round sphere metric, started at
/// a = (1, 0, ..., 0) with ambient covector (i z / 2, u).
std::vector<GeodesicSample> hopf_flow(const Covector& p, const std::vector<double>& times,
                                      const ode::Tolerance& tol = {1e-12, 1e-12});

}  // namespace sasaki
