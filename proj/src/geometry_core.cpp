#include "sasaki/geometry_core.hpp"

#include "sasaki/error.hpp"

#include <cmath>
#include <string>

namespace sasaki {

void validate(const Covector& p) {
  if (p.h.size() == 0 || p.h.size() % 2 != 0) {
    throw InvalidArgument("covector horizontal part must have even length 2n >= 2, got " +
                          std::to_string(p.h.size()));
  }
  if (!p.h.allFinite() || !std::isfinite(p.z)) {
    throw InvalidArgument("covector has non-finite components");
  }
}

Covector unit_covector(const Vector& direction, double z) {
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("covector direction must be a nonzero finite vector");
  }
  Covector p{direction / norm, z};
  validate(p);
  return p;
}

CylCoord to_cylindrical(const Covector& p) {
  validate(p);
  CylCoord c;
  c.r = p.h.norm();
  c.z = p.z;
  if (c.r > 0.0) c.dir = p.h / c.r;
  return c;
}

Covector from_cylindrical(const CylCoord& c, int n) {
  if (!(c.r >= 0.0) || !std::isfinite(c.r) || !std::isfinite(c.z)) {
    throw InvalidArgument("cylindrical coordinate needs finite r >= 0 and finite z");
  }
  if (c.r > 0.0) {
    if (!c.dir) throw InvalidArgument("cylindrical coordinate with r > 0 has no direction");
    Covector p{c.r * *c.dir, c.z};
    validate(p);
    return p;
  }
  if (n < 1) throw InvalidArgument("from_cylindrical: n must be >= 1 when r == 0");
  const Eigen::Index len = c.dir ? c.dir->size() : 2 * n;
  return Covector{Vector::Zero(len), c.z};
}

StructuralConstants assemble_structural(int n) {
  if (n < 1) throw InvalidArgument("complex dimension n must be >= 1, got " + std::to_string(n));
  const int dim = frame_dim(n);
  StructuralConstants sc;
  sc.n = n;
  sc.c1 = Matrix::Zero(dim, dim);
  sc.c1(0, 1) = 1.0;
  sc.c2 = Matrix::Identity(dim, dim);
  sc.c2(0, 0) = 0.0;
  return sc;
}

Matrix CanonicalCurvature::assemble() const {
  const int dim = frame_dim(n);
  const int m = dim - 2;
  Matrix out = Matrix::Zero(dim, dim);
  out(0, 0) = r11;
  out(1, 1) = r22;
  out.block(2, 2, m, m) = r33;
  out.block(0, 2, 1, m) = r13.transpose();
  out.block(2, 0, m, 1) = r13;
  out.block(1, 2, 1, m) = r23.transpose();
  out.block(2, 1, m, 1) = r23;
  return out;
}

CanonicalCurvature constant_curvature_matrix(int n, double frak1, double frak2) {
  if (n < 1) throw InvalidArgument("complex dimension n must be >= 1, got " + std::to_string(n));
  const int m = 2 * n - 1;
  CanonicalCurvature rc;
  rc.n = n;
  rc.r11 = 0.0;
  rc.r22 = frak1;
  rc.r33 = Matrix::Zero(m, m);
  for (int i = 0; i < m - 1; ++i) rc.r33(i, i) = frak2;
  rc.r13 = Vector::Zero(m);
  rc.r23 = Vector::Zero(m);
  return rc;
}

}  // namespace sasaki
