#include <doctest.h>

#include "sasaki/error.hpp"
#include "sasaki/hamiltonian.hpp"
#include "sasaki/models.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

using namespace sasaki;

namespace {

constexpr double kPi = std::numbers::pi;

Covector cov(std::initializer_list<double> h, double z) {
  Covector p{Vector(static_cast<Eigen::Index>(h.size())), z};
  Eigen::Index i = 0;
  for (double v : h) p.h[i++] = v;
  return p;
}

Covector random_unit(std::mt19937_64& rng, int n, double zmax) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> uz(-zmax, zmax);
  Vector d(2 * n);
  for (int i = 0; i < 2 * n; ++i) d[i] = g(rng);
  return unit_covector(d, uz(rng));
}

// Independent distance oracle for n = 1: shoot unit geodesics over a grid of
// Reeb components z. The distance from the z-axis rises on (0, pi / |z|) and
// falls back on (pi / |z|, 2 pi / |z|); on each branch find when it equals the
// target's, then root-find the height mismatch in z and keep the shortest time.
double shooting_distance(double rho, double zeta) {
  const auto hit_time = [&](double z, int branch, double& t_hit) {
    const auto radius = [&](double t) {
      return heisenberg_point(cov({1.0, 0.0}, z), t).head(2).norm();
    };
    if (z == 0.0) {
      if (branch == 1) return false;
      t_hit = rho;
      return true;
    }
    const double apex = kPi / std::abs(z);
    if (radius(apex) < rho) return false;
    double lo = branch == 0 ? 0.0 : apex, hi = branch == 0 ? apex : 2 * apex;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const bool inside = radius(mid) < rho;
      ((inside == (branch == 0)) ? lo : hi) = mid;
    }
    t_hit = 0.5 * (lo + hi);
    return true;
  };
  const auto mismatch = [&](double z, int branch, double& t_hit) {
    if (!hit_time(z, branch, t_hit)) return std::numeric_limits<double>::quiet_NaN();
    return heisenberg_point(cov({1.0, 0.0}, z), t_hit)[2] - zeta;
  };
  double best = std::numeric_limits<double>::infinity();
  const int grid = 800;
  const double zmax = 12.0;
  for (int branch = 0; branch < 2; ++branch) {
    double t = 0.0;
    double z_prev = -zmax;
    double m_prev = mismatch(z_prev, branch, t);
    for (int i = 1; i <= grid; ++i) {
      const double z = -zmax + 2 * zmax * i / grid;
      const double m = mismatch(z, branch, t);
      if (std::isfinite(m) && std::isfinite(m_prev) && (m > 0) != (m_prev > 0)) {
        double lo = z_prev, hi = z, mlo = m_prev;
        for (int k = 0; k < 100; ++k) {
          const double mid = 0.5 * (lo + hi);
          const double mm = mismatch(mid, branch, t);
          if ((mm > 0) == (mlo > 0)) {
            lo = mid;
            mlo = mm;
          } else {
            hi = mid;
          }
        }
        mismatch(0.5 * (lo + hi), branch, t);
        best = std::min(best, t);
      }
      z_prev = z;
      m_prev = m;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("model spaces") {
  CHECK(ModelSpace::hopf(2).k1 == 4.0);
  CHECK(ModelSpace::hopf(2).k2 == 1.0);
  CHECK(parse_model_kind("hopf") == ModelKind::hopf);
  CHECK(parse_model_kind("constant") == ModelKind::constant_curvature);
  CHECK_THROWS_AS(parse_model_kind("sphere"), InvalidArgument);
  CHECK_THROWS_AS(validate(ModelSpace{ModelKind::hopf, 1, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(ModelSpace::heisenberg(0)), InvalidArgument);
  CHECK_NOTHROW(validate(ModelSpace::constant(3, -1.0, 2.0)));
}

TEST_CASE("Heisenberg geodesic examples") {
  auto x = heisenberg_point(cov({1.0, 0.0}, 1.0), kPi);
  CHECK(std::abs(x[0]) < 1e-15);
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(x[2] == doctest::Approx(kPi / 2).epsilon(1e-15));
  x = heisenberg_point(cov({1.0, 0.0}, 0.0), 1.0);
  CHECK((x - Eigen::Vector3d(1.0, 0.0, 0.0)).norm() == 0.0);

  const auto samples = heisenberg_geodesic(cov({1.0, 0.0}, 1.0), kPi, 100);
  REQUIRE(samples.size() == 100);
  CHECK(samples.front().t == 0.0);
  CHECK(samples.back().t == kPi);
  CHECK((samples.back().x - x).norm() > 1.0);
  CHECK(samples.back().p.has_value());
  CHECK_THROWS_AS(heisenberg_geodesic(cov({2.0, 0.0}, 1.0), 1.0, 10), InvalidArgument);
  CHECK_THROWS_AS(heisenberg_geodesic(cov({1.0, 0.0}, 1.0), 1.0, 1), InvalidArgument);
}

TEST_CASE("Heisenberg geodesics are horizontal with unit speed") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const auto p = random_unit(rng, n, 3.0);
    const double t = 0.7, h = 1e-5;
    const Vector dx = (heisenberg_point(p, t + h) - heisenberg_point(p, t - h)) / (2 * h);
    const Vector x = heisenberg_point(p, t);
    double alpha = dx[2 * n];
    for (int j = 0; j < n; ++j) alpha -= 0.5 * (x[2 * j] * dx[2 * j + 1] - x[2 * j + 1] * dx[2 * j]);
    CHECK(std::abs(alpha) < 1e-9);
    CHECK(dx.head(2 * n).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Hopf geodesic examples") {
  HopfCovector v;
  v.v = Eigen::VectorXcd::Zero(3);
  v.v[1] = {0.6, 0.0};
  v.v[2] = {0.0, 0.8};
  auto g = hopf_point(v, kPi / 2);
  CHECK((g - v.v).norm() < 1e-15);

  v.v = Eigen::VectorXcd::Zero(2);
  v.v[1] = {1.0, 0.0};
  g = hopf_point(v, kPi);
  CHECK(std::abs(g[0] + 1.0) < 1e-15);
  CHECK(std::abs(g[1]) < 1e-15);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_unit(rng, 1 + i % 3, 4.0);
    for (const auto& s : hopf_geodesic(p, 7.0, 30)) CHECK(std::abs(s.x.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("Hopf covector validation names the relation") {
  HopfCovector v;
  v.v = Eigen::VectorXcd::Zero(2);
  v.v[0] = {0.5, 1.0};
  v.v[1] = {1.0, 0.0};
  CHECK_THROWS_WITH_AS(validate(v), doctest::Contains("Re"), InvalidArgument);
  v.v[0] = {0.0, 1.0};
  v.v[1] = {2.0, 0.0};
  CHECK_THROWS_AS(validate(v), InvalidArgument);
  v.v[1] = {0.0, 1.0};
  CHECK_NOTHROW(validate(v));
  CHECK(v.metric_norm() == doctest::Approx(std::sqrt(1.25)));
}

TEST_CASE("Hopf contact form, Reeb field and horizontality") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const auto p = random_unit(rng, n, 4.0);
    const auto hv = to_hopf_covector(p);
    for (double t : {0.0, 0.4, 1.9, 5.0}) {
      const double h = 1e-5;
      const Eigen::VectorXcd x = hopf_point(hv, t);
      const Eigen::VectorXcd dx = (hopf_point(hv, t + h) - hopf_point(hv, t - h)) / (2 * h);
      CHECK(hopf_contact_form(x, hopf_reeb_field(x)) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(hopf_contact_form(x, dx)) < 1e-9);
      // Unit speed: the horizontal metric is the restriction of the Euclidean one.
      CHECK(dx.norm() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("closed-form geodesics match the Hamiltonian flow") {
  std::mt19937_64 rng(17);
  const std::vector<double> times{0.0, 0.5, 1.5, 3.0, 6.0};
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const auto p = random_unit(rng, n, 3.0);
    const auto hf = heisenberg_flow(p, times);
    const auto hc = hopf_flow(p, times);
    REQUIRE(hf.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      CHECK((hf[k].x - heisenberg_point(p, times[k])).norm() < 1e-9);
      const auto g = hopf_point(to_hopf_covector(p), times[k]);
      Vector gr(2 * g.size());
      for (Eigen::Index j = 0; j < g.size(); ++j) {
        gr[2 * j] = g[j].real();
        gr[2 * j + 1] = g[j].imag();
      }
      CHECK((hc[k].x - gr).norm() < 1e-9);
    }
  }
}

TEST_CASE("cut times") {
  CHECK(cut_time(ModelSpace::heisenberg(1), cov({1.0, 0.0}, 2.0)) == doctest::Approx(kPi));
  CHECK(cut_time(ModelSpace::hopf(1), cov({1.0, 0.0}, 0.0)) == doctest::Approx(kPi));
  CHECK(cut_time(ModelSpace::heisenberg(2), cov({0.0, 0.0, 1.0, 0.0}, 0.0)) ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(cut_time(ModelSpace::heisenberg(1), cov({2.0, 0.0}, 0.0)), InvalidArgument);
}

TEST_CASE("Heisenberg distance examples") {
  CHECK(heisenberg_distance(Eigen::Vector3d(1.0, 0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(heisenberg_distance(Eigen::Vector3d(0.0, 2.0, kPi / 2)) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(heisenberg_distance(Eigen::Vector3d::Zero()) == 0.0);
  CHECK_THROWS_AS(heisenberg_distance(Eigen::Vector4d::Zero()), InvalidArgument);
  // A circle of length L encloses area L^2 / (4 pi).
  for (double zeta : {0.1, 1.0, 3.0}) {
    CHECK(heisenberg_distance(Eigen::Vector3d(0.0, 0.0, zeta)) ==
          doctest::Approx(std::sqrt(4 * kPi * zeta)).epsilon(1e-10));
  }
}

TEST_CASE("Heisenberg distance against the shooting oracle") {
  const double targets[][3] = {{0.5, 0.0, 0.3}, {1.0, 0.2, -0.8}, {0.1, 0.1, 1.0}, {2.0, -1.0, 0.05}};
  for (const auto& q : targets) {
    const double rho = std::hypot(q[0], q[1]);
    const double oracle = shooting_distance(rho, q[2]);
    CAPTURE(q[2]);
    CHECK(heisenberg_distance(Eigen::Vector3d(q[0], q[1], q[2])) ==
          doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("distance along minimizing geodesics equals time") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 3;
    const auto p = random_unit(rng, n, 4.0);
    const double T = std::min(cut_time(ModelSpace::heisenberg(n), p), 6.0);
    const double t = frac(rng) * T;
    CHECK(heisenberg_distance(heisenberg_point(p, t)) == doctest::Approx(t).epsilon(1e-9));
  }
}

TEST_CASE("curvature along geodesics") {
  auto r = curvature_along(ModelSpace::heisenberg(2), cov({1.0, 0.0, 0.0, 0.0}, 2.0));
  CHECK(r.assemble().isApprox(constant_curvature_matrix(2, 4.0, 1.0).assemble()));
  r = curvature_along(ModelSpace::hopf(1), cov({1.0, 0.0}, 0.0));
  CHECK(r.assemble().isApprox(constant_curvature_matrix(1, 4.0, 1.0).assemble()));
  r = curvature_along(ModelSpace::heisenberg(3), cov({0.0, 1.0, 0.0, 0.0, 0.0, 0.0}, 0.0));
  CHECK(r.assemble().isZero(0.0));
}
