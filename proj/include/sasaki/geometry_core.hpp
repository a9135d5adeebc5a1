#pragma once

// Small dense linear algebra, covector coordinates and the constant matrices
// of the canonical frame normal form.
//
// Frame ordering is (E1, E2, E3_1, ..., E3_{2n-1}); the last slot E3_{2n-1}
// is the p^h + p(v0) v0 direction. Matrices are (2n+1) x (2n+1), dense.

#include <Eigen/Dense>

#include <optional>

namespace sasaki {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Ambient dimension 2n+1 of a Sasakian manifold of complex dimension n.
constexpr int frame_dim(int n) { return 2 * n + 1; }

/// A cotangent vector at the base point: horizontal part h (length 2n, in an
/// orthonormal frame where J maps slot 2j to slot 2j+1) and Reeb component
/// z = p(v0).
struct Covector {
  Vector h;
  double z = 0.0;

  int n() const { return static_cast<int>(h.size()) / 2; }
  double r() const { return h.norm(); }
};

/// Throws InvalidArgument unless h has even positive length and every entry is
/// finite.
void validate(const Covector& p);

/// Covector with unit horizontal part built from a direction (normalized here)
/// and a Reeb component.
Covector unit_covector(const Vector& direction, double z);

struct CylCoord {
  double r = 0.0;
  double z = 0.0;
  std::optional<Vector> dir;  // unset when r == 0
};

CylCoord to_cylindrical(const Covector& p);

/// `n` is only consulted when c.r == 0 and no direction is stored.
Covector from_cylindrical(const CylCoord& c, int n);

struct StructuralConstants {
  int n = 0;
  Matrix c1;
  Matrix c2;
};

StructuralConstants assemble_structural(int n);

/// Curvature of the Jacobi curve in the canonical frame, stored by block.
/// The (1,2) block is structurally zero.
struct CanonicalCurvature {
  int n = 0;
  double r11 = 0.0;
  double r22 = 0.0;
  Matrix r33;  // (2n-1) x (2n-1), symmetric
  Vector r13;  // length 2n-1
  Vector r23;  // length 2n-1

  Matrix assemble() const;
};

/// R^{k1,k2} = diag(0, frak1, frak2 I_{2n-2}, 0).
CanonicalCurvature constant_curvature_matrix(int n, double frak1, double frak2);

}  // namespace sasaki
