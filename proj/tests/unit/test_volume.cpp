#include <doctest.h>

#include "sasaki/error.hpp"
#include "sasaki/volume.hpp"

#include <cmath>
#include <numbers>

using namespace sasaki;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2 * kPi));
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi * kPi));
  CHECK(sphere_area(3) == doctest::Approx(kPi * kPi * kPi));
}

TEST_CASE("Heisenberg dilation") {
  for (int n : {1, 2}) {
    const double v1 = ball_volume(ModelSpace::heisenberg(n), 0.8).value;
    const double v2 = ball_volume(ModelSpace::heisenberg(n), 1.6).value;
    CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, 2 * n + 2)).epsilon(1e-6));
  }
}

TEST_CASE("Hopf total volume") {
  // Beyond the largest cut time (pi) the ball is the whole sphere.
  CHECK(ball_volume(ModelSpace::hopf(1), 4.0).value == doctest::Approx(kPi * kPi).epsilon(1e-8));
  CHECK(ball_volume(ModelSpace::hopf(2), 4.0).value == doctest::Approx(std::pow(kPi, 3) / 2).epsilon(1e-8));
  CHECK(ball_volume(ModelSpace::hopf(1), 1.1 * kPi).value <= 2 * kPi * kPi);
}

TEST_CASE("methods agree") {
  for (auto model : {ModelSpace::heisenberg(1), ModelSpace::hopf(1), ModelSpace::hopf(2)}) {
    for (double R : {0.5, 2.0}) {
      CAPTURE(model.name());
      CAPTURE(R);
      const auto q = ball_volume(model, R);
      VolumeOptions k;
      k.method = VolumeMethod::k_integral;
      CHECK(ball_volume(model, R, k).value == doctest::Approx(q.value).epsilon(1e-7));
      VolumeOptions mc;
      mc.method = VolumeMethod::monte_carlo;
      mc.samples = 20000;
      const auto m = ball_volume(model, R, mc);
      CHECK(std::abs(m.value - q.value) <= 5 * m.abs_error_estimate + 1e-3 * q.value);
    }
  }
  VolumeOptions j;
  j.method = VolumeMethod::jacobi;
  j.tol = 1e-7;
  const auto q = ball_volume(ModelSpace::hopf(1), 1.0);
  CHECK(ball_volume(ModelSpace::hopf(1), 1.0, j).value == doctest::Approx(q.value).epsilon(1e-5));
}

TEST_CASE("small-ball universality") {
  for (int n : {1, 2}) {
    const double R = 0.05;
    const double a = ball_volume(ModelSpace::heisenberg(n), R).value;
    const double b = ball_volume(ModelSpace::hopf(n), R).value;
    CHECK(b / a == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("Monte Carlo is reproducible") {
  VolumeOptions mc;
  mc.method = VolumeMethod::monte_carlo;
  mc.samples = 5000;
  mc.seed = 9;
  const double a = ball_volume(ModelSpace::hopf(1), 1.0, mc).value;
  CHECK(ball_volume(ModelSpace::hopf(1), 1.0, mc).value == a);
  mc.seed = 10;
  CHECK(ball_volume(ModelSpace::hopf(1), 1.0, mc).value != a);
}

TEST_CASE("Bishop comparison") {
  auto rows = bishop_check(ModelSpace::hopf(1), ModelKind::heisenberg, {0.5, 1.0, 2.0});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.ratio <= 1.0);
  }
  for (const auto& r : bishop_check(ModelSpace::hopf(2), ModelKind::hopf, {0.5, 2.0}))
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : bishop_check(ModelSpace::constant(1, 5.0, 2.0), ModelKind::hopf, {0.5, 1.0}))
    CHECK(r.ok);
  CHECK_THROWS_AS(bishop_check(ModelSpace::heisenberg(1), ModelKind::hopf, {1.0}), InvalidArgument);
}

TEST_CASE("volume is increasing in R and positive") {
  double prev = 0.0;
  for (double R = 0.25; R <= 3.0; R += 0.25) {
    const double v = ball_volume(ModelSpace::hopf(1), R).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(ball_volume(ModelSpace::hopf(1), -1.0), InvalidArgument);
}

TEST_CASE("method names") {
  for (auto m : {VolumeMethod::quadrature, VolumeMethod::k_integral, VolumeMethod::jacobi,
                 VolumeMethod::monte_carlo})
    CHECK(parse_volume_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_volume_method("simpson"), InvalidArgument);
}
