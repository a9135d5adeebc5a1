#include "sasaki/models.hpp"

#include "sasaki/error.hpp"
#include "sasaki/special.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace sasaki {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(const Covector& p, const char* who) {
  validate(p);
  if (std::abs(p.r() - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": covector must have |p^h| = 1, got " << p.r();
    throw InvalidArgument(os.str());
  }
}

void require_schedule(double T, int steps, const char* who) {
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw InvalidArgument(std::string(who) + ": duration must be finite and >= 0");
  }
  if (steps < 2) throw InvalidArgument(std::string(who) + ": steps must be >= 2");
}

// (theta - sin theta cos theta) / (4 sin^2 theta), written to stay accurate
// as theta -> 0.
double heisenberg_mu(double theta) {
  const double sc = special::sinc_sqrt(theta * theta);
  return theta * special::tau_minus_sin_over_cube(4.0 * theta * theta) / (sc * sc);
}

}  // namespace

ModelSpace ModelSpace::heisenberg(int n) { return ModelSpace{ModelKind::heisenberg, n, 0.0, 0.0}; }
ModelSpace ModelSpace::hopf(int n) { return ModelSpace{ModelKind::hopf, n, 4.0, 1.0}; }
ModelSpace ModelSpace::constant(int n, double k1, double k2) {
  return ModelSpace{ModelKind::constant_curvature, n, k1, k2};
}

std::string ModelSpace::name() const {
  switch (kind) {
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::hopf: return "hopf";
    case ModelKind::constant_curvature: return "constant";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "heisenberg") return ModelKind::heisenberg;
  if (name == "hopf") return ModelKind::hopf;
  if (name == "constant") return ModelKind::constant_curvature;
  throw InvalidArgument("unknown model '" + name + "' (expected heisenberg|hopf|constant)");
}

void validate(const ModelSpace& model) {
  if (model.n < 1) throw InvalidArgument("model: n must be >= 1");
  if (!std::isfinite(model.k1) || !std::isfinite(model.k2)) {
    throw InvalidArgument("model: curvature constants must be finite");
  }
  if (model.kind == ModelKind::heisenberg && (model.k1 != 0.0 || model.k2 != 0.0)) {
    throw InvalidArgument("model: heisenberg has (k1, k2) = (0, 0)");
  }
  if (model.kind == ModelKind::hopf && (model.k1 != 4.0 || model.k2 != 1.0)) {
    throw InvalidArgument("model: hopf has (k1, k2) = (4, 1)");
  }
}

Vector heisenberg_point(const Covector& p, double t) {
  const int n = p.n();
  const double phi = p.z * t;
  const double x = phi * phi;
  // (e^{i phi} - 1) / (i phi)
  const cplx factor(special::sinc_sqrt(x), phi * special::one_minus_cos_over_x(x));
  Vector out(2 * n + 1);
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx pj(p.h[2 * j], p.h[2 * j + 1]);
    const cplx w = pj * t * factor;
    out[2 * j] = w.real();
    out[2 * j + 1] = w.imag();
    p2 += std::norm(pj);
  }
  out[2 * n] = 0.5 * p2 * t * t * phi * special::tau_minus_sin_over_cube(x);
  return out;
}

std::vector<GeodesicSample> heisenberg_geodesic(const Covector& p, double T, int steps) {
  require_unit(p, "heisenberg_geodesic");
  require_schedule(T, steps, "heisenberg_geodesic");
  std::vector<GeodesicSample> out;
  out.reserve(steps);
  const int n = p.n();
  for (int i = 0; i < steps; ++i) {
    const double t = i == steps - 1 ? T : T * i / (steps - 1);
    Covector pt{Vector(2 * n), p.z};
    const cplx rot = std::polar(1.0, p.z * t);
    for (int j = 0; j < n; ++j) {
      const cplx pj = cplx(p.h[2 * j], p.h[2 * j + 1]) * rot;
      pt.h[2 * j] = pj.real();
      pt.h[2 * j + 1] = pj.imag();
    }
    out.push_back(GeodesicSample{t, heisenberg_point(p, t), pt});
  }
  return out;
}

double HopfCovector::metric_norm() const {
  const double im1 = v[0].imag();
  return std::sqrt(v.tail(v.size() - 1).squaredNorm() + 0.25 * im1 * im1);
}

HopfCovector to_hopf_covector(const Covector& p) {
  validate(p);
  const int n = p.n();
  HopfCovector hv;
  hv.v.resize(n + 1);
  hv.v[0] = cplx(0.0, p.z);
  for (int j = 0; j < n; ++j) hv.v[j + 1] = cplx(p.h[2 * j], p.h[2 * j + 1]);
  return hv;
}

void validate(const HopfCovector& hv) {
  if (hv.v.size() < 2) throw InvalidArgument("hopf covector: need n >= 1 (length n+1 >= 2)");
  if (!hv.v.allFinite()) throw InvalidArgument("hopf covector: non-finite component");
  if (std::abs(hv.v[0].real()) > 1e-12) {
    throw InvalidArgument("hopf covector: constraint Re(v_1) = 0 violated");
  }
  const double horiz = hv.v.tail(hv.v.size() - 1).norm();
  if (std::abs(horiz - 1.0) > 1e-12) {
    throw InvalidArgument("hopf covector: constraint |v^h| = 1 violated");
  }
  const double im1 = hv.v[0].imag();
  const double m = hv.metric_norm();
  if (std::abs(m * m - 0.25 * im1 * im1 - 1.0) > 1e-12) {
    throw InvalidArgument("hopf covector: constraint |v|^2 - Im(v_1)^2/4 = 1 violated");
  }
}

Eigen::VectorXcd hopf_point(const HopfCovector& hv, double t) {
  const double half_z = 0.5 * hv.v[0].imag();
  const double omega = hv.metric_norm();
  // Euclidean initial velocity of the rotating great circle.
  Eigen::VectorXcd w = hv.v;
  w[0] = cplx(0.0, half_z);
  Eigen::VectorXcd g = std::sin(omega * t) / omega * w;
  g[0] += std::cos(omega * t);
  return std::polar(1.0, -half_z * t) * g;
}

std::vector<GeodesicSample> hopf_geodesic(const HopfCovector& hv, double T, int steps) {
  validate(hv);
  require_schedule(T, steps, "hopf_geodesic");
  std::vector<GeodesicSample> out;
  out.reserve(steps);
  const int n = hv.n();
  for (int i = 0; i < steps; ++i) {
    const double t = i == steps - 1 ? T : T * i / (steps - 1);
    const Eigen::VectorXcd pt = hopf_point(hv, t);
    Vector x(2 * n + 2);
    for (int j = 0; j <= n; ++j) {
      x[2 * j] = pt[j].real();
      x[2 * j + 1] = pt[j].imag();
    }
    out.push_back(GeodesicSample{t, std::move(x), std::nullopt});
  }
  return out;
}

std::vector<GeodesicSample> hopf_geodesic(const Covector& p, double T, int steps) {
  require_unit(p, "hopf_geodesic");
  return hopf_geodesic(to_hopf_covector(p), T, steps);
}

double hopf_contact_form(const Eigen::VectorXcd& x, const Eigen::VectorXcd& v) {
  return 0.5 * x.dot(v).imag();  // dot conjugates x
}

Eigen::VectorXcd hopf_reeb_field(const Eigen::VectorXcd& x) { return 2.0 * cplx(0.0, 1.0) * x; }

double cut_time(const ModelSpace& model, const Covector& p) {
  validate(model);
  require_unit(p, "cut_time");
  const double z = p.z;
  switch (model.kind) {
    case ModelKind::heisenberg:
      return z == 0.0 ? kInf : 2.0 * kPi / std::abs(z);
    case ModelKind::hopf:
      return 2.0 * kPi / std::sqrt(z * z + 4.0);
    case ModelKind::constant_curvature:
      return conjugate_time_bound(1.0, z, model.bounds());
  }
  return kInf;
}

double heisenberg_distance(const Vector& q) {
  if (q.size() < 3 || q.size() % 2 == 0) {
    throw InvalidArgument("heisenberg_distance: point must have length 2n+1 >= 3");
  }
  if (!q.allFinite()) throw InvalidArgument("heisenberg_distance: non-finite point");
  const Eigen::Index m = q.size() - 1;
  const double rho = q.head(m).norm();
  const double zeta = std::abs(q[m]);
  if (rho == 0.0 && zeta == 0.0) return 0.0;
  if (zeta == 0.0) return rho;
  if (rho == 0.0) return 2.0 * std::sqrt(kPi * zeta);

  const double target = zeta / (rho * rho);
  // mu(theta) ~ pi / (4 (pi - theta)^2) near pi.
  double eps = std::min(0.5, 0.5 * std::sqrt(kPi / (4.0 * target)));
  while (heisenberg_mu(kPi - eps) <= target) {
    eps *= 0.5;
    if (eps < 1e-300) throw NumericalError("heisenberg_distance: cannot bracket the root");
  }
  boost::uintmax_t iters = 200;
  const auto f = [&](double th) { return heisenberg_mu(th) - target; };
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, 0.0, kPi - eps, -target, heisenberg_mu(kPi - eps) - target,
      boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) {
    std::ostringstream os;
    os.precision(17);
    os << "heisenberg_distance: root finder did not converge for rho=" << rho
       << " zeta=" << zeta;
    throw NumericalError(os.str());
  }
  const double theta = 0.5 * (lo + hi);
  if (theta <= 0.5 * kPi) return rho / special::sinc_sqrt(theta * theta);
  return std::sqrt(zeta / (theta * special::tau_minus_sin_over_cube(4.0 * theta * theta)));
}

CanonicalCurvature curvature_along(const ModelSpace& model, const Covector& p) {
  validate(model);
  validate(p);
  if (p.n() != model.n) throw InvalidArgument("curvature_along: covector dimension does not match model");
  const double r = p.r();
  if (!(r > 0.0)) throw InvalidArgument("curvature_along: r = 0 (characteristic covector)");
  const auto fk = frak(r, p.z, model.bounds());
  return constant_curvature_matrix(model.n, fk.frak1, fk.frak2);
}

}  // namespace sasaki
