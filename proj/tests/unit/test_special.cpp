#include <doctest.h>

#include "sasaki/special.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace sasaki::special;

namespace {

// Closed forms in extended precision with tau = sqrt(x) continued to the
// imaginary axis for x < 0.
struct Ref {
  long double c, s_over_tau, tau2;
};

Ref trig(long double x) {
  if (x >= 0) {
    const long double t = std::sqrt(x);
    return {std::cos(t), std::sin(t) / t, x};
  }
  const long double u = std::sqrt(-x);
  return {std::cosh(u), std::sinh(u) / u, x};
}

long double ref_sinc(long double x) { return trig(x).s_over_tau; }
long double ref_omc(long double x) { const auto r = trig(x); return (1 - r.c) / r.tau2; }
long double ref_tms(long double x) { const auto r = trig(x); return (1 - r.s_over_tau) / r.tau2; }
long double ref_shat(long double x) {
  const auto r = trig(x);
  return (2 - 2 * r.c - r.tau2 * r.s_over_tau) / (r.tau2 * r.tau2);
}
long double ref_ehat(long double x) {
  const auto r = trig(x);
  return (r.c - r.s_over_tau) / r.tau2;
}
long double ref_tcot(long double x) { const auto r = trig(x); return r.c / r.s_over_tau; }

struct Case {
  const char* name;
  std::function<double(double)> f;
  std::function<long double(long double)> ref;
  double at_zero;
};

const Case kCases[] = {
    {"sinc", sinc_sqrt, ref_sinc, 1.0},
    {"one_minus_cos", one_minus_cos_over_x, ref_omc, 0.5},
    {"tau_minus_sin", tau_minus_sin_over_cube, ref_tms, 1.0 / 6.0},
    {"s_hat", s_hat, ref_shat, 1.0 / 12.0},
    {"e_hat", e_hat, ref_ehat, -1.0 / 3.0},
    {"tau_cot", tau_cot, ref_tcot, 1.0},
};

}  // namespace

TEST_CASE("values at zero") {
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    CHECK(c.f(0.0) == doctest::Approx(c.at_zero).epsilon(1e-16));
  }
  CHECK(cos_sqrt(0.0) == 1.0);
}

TEST_CASE("series branch against extended-precision closed forms") {
  // Cancellation in the closed forms grows like 1/x^2; stay where the long
  // double reference is still good to ~1e-15.
  for (const auto& c : kCases) {
    for (double x : {-0.999, -0.5, -0.05, 0.05, 0.5, 0.999}) {
      CAPTURE(c.name);
      CAPTURE(x);
      const long double ref = c.ref(x);
      CHECK(std::abs(c.f(x) - ref) <= 2e-15 * std::abs(ref));
    }
  }
}

TEST_CASE("closed-form branch") {
  for (const auto& c : kCases) {
    for (double x : {-30.0, -4.0, -1.5, 1.5, 4.0, 20.0}) {
      CAPTURE(c.name);
      CAPTURE(x);
      const long double ref = c.ref(x);
      CHECK(std::abs(c.f(x) - ref) <= 1e-13 * std::abs(ref));
    }
  }
}

TEST_CASE("continuity across the branch switch") {
  for (const auto& c : kCases) {
    for (double x : {-1.0, 1.0}) {
      CAPTURE(c.name);
      const double below = c.f(std::nextafter(x, 0.0));
      const double above = c.f(std::nextafter(x, 2 * x));
      CHECK(std::abs(below - above) <= 1e-14 * std::abs(below));
    }
  }
}

TEST_CASE("zeros and poles") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(s_hat(4 * pi * pi)) < 1e-15);
  CHECK(s_hat(4 * pi * pi - 1e-3) > 0.0);
  CHECK(std::abs(tau_cot(pi * pi / 4)) < 1e-15);
  CHECK(std::abs(tau_cot(pi * pi - 1e-9)) > 1e8);
  CHECK(std::abs(sinc_sqrt(pi * pi)) < 1e-15);
  for (double x = -50.0; x < 4 * pi * pi - 0.01; x += 0.37) CHECK(s_hat(x) > 0.0);
}
