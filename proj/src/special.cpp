#include "sasaki/special.hpp"

#include <array>
#include <cmath>

namespace sasaki::special {
namespace {

constexpr int kMaxFact = 48;

constexpr std::array<double, kMaxFact> make_inv_factorials() {
  std::array<double, kMaxFact> out{};
  double f = 1.0;
  out[0] = 1.0;
  for (int k = 1; k < kMaxFact; ++k) {
    f *= k;
    out[k] = 1.0 / f;
  }
  return out;
}

constexpr auto kInvFact = make_inv_factorials();

constexpr double kSeriesRadius = 1.0;

// sum_j coef(j) x^j, stopping once terms no longer change the sum.
template <class Coef>
double power_series(double x, Coef coef) {
  double sum = 0.0;
  double xp = 1.0;
  for (int j = 0; j < 20; ++j) {
    const double term = coef(j) * xp;
    sum += term;
    if (j > 2 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    xp *= x;
  }
  return sum;
}

double sign_alt(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double cos_sqrt(double x) {
  if (x >= 0.0) return std::cos(std::sqrt(x));
  return std::cosh(std::sqrt(-x));
}

double sinc_sqrt(double x) {
  if (std::abs(x) < kSeriesRadius) {
    return power_series(x, [](int j) { return sign_alt(j) * kInvFact[2 * j + 1]; });
  }
  if (x > 0.0) {
    const double t = std::sqrt(x);
    return std::sin(t) / t;
  }
  const double u = std::sqrt(-x);
  return std::sinh(u) / u;
}

double one_minus_cos_over_x(double x) {
  if (std::abs(x) < kSeriesRadius) {
    return power_series(x, [](int j) { return sign_alt(j) * kInvFact[2 * j + 2]; });
  }
  if (x > 0.0) return (1.0 - std::cos(std::sqrt(x))) / x;
  const double u = std::sqrt(-x);
  return (std::cosh(u) - 1.0) / (u * u);
}

double tau_minus_sin_over_cube(double x) {
  if (std::abs(x) < kSeriesRadius) {
    return power_series(x, [](int j) { return sign_alt(j) * kInvFact[2 * j + 3]; });
  }
  if (x > 0.0) {
    const double t = std::sqrt(x);
    return (t - std::sin(t)) / (t * x);
  }
  const double u = std::sqrt(-x);
  return (std::sinh(u) - u) / (u * u * u);
}

double s_hat(double x) {
  if (std::abs(x) < kSeriesRadius) {
    return power_series(
        x, [](int j) { return sign_alt(j) * (2.0 * j + 2.0) * kInvFact[2 * j + 4]; });
  }
  if (x > 0.0) {
    const double t = std::sqrt(x);
    return (2.0 - 2.0 * std::cos(t) - t * std::sin(t)) / (x * x);
  }
  const double u = std::sqrt(-x);
  return (2.0 - 2.0 * std::cosh(u) + u * std::sinh(u)) / (x * x);
}

double e_hat(double x) {
  if (std::abs(x) < kSeriesRadius) {
    return power_series(
        x, [](int j) { return -sign_alt(j) * (2.0 * j + 2.0) * kInvFact[2 * j + 3]; });
  }
  if (x > 0.0) {
    const double t = std::sqrt(x);
    return (x * std::cos(t) - t * std::sin(t)) / (x * x);
  }
  const double u = std::sqrt(-x);
  return (-u * u * std::cosh(u) + u * std::sinh(u)) / (x * x);
}

double tau_cot(double x) {
  if (x < -kSeriesRadius) {
    const double u = std::sqrt(-x);
    return u / std::tanh(u);
  }
  return cos_sqrt(x) / sinc_sqrt(x);
}

}  // namespace sasaki::special
