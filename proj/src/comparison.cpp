#include "sasaki/comparison.hpp"

#include "sasaki/error.hpp"
#include "sasaki/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sasaki {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleTol = 1e-12;

void check_n(int n) {
  if (n < 1) throw InvalidArgument("complex dimension n must be >= 1");
}

double bound_from_radicand(double radicand) {
  return radicand > 0.0 ? 2.0 * std::numbers::pi / std::sqrt(radicand) : kInf;
}

[[noreturn]] void pole(const char* where, double x) {
  std::ostringstream os;
  os.precision(17);
  os << where << ": evaluation at a pole (frak t^2 = " << x << ")";
  throw NumericalError(os.str());
}

}  // namespace

FrakPair frak(double r, double z, const CurvatureBounds& bounds) {
  return FrakPair{z * z + bounds.k1 * r * r, 0.25 * z * z + bounds.k2 * r * r};
}

std::pair<double, double> conjugate_bounds(double r, double z, const CurvatureBounds& bounds) {
  return {bound_from_radicand(z * z + bounds.k1 * r * r),
          bound_from_radicand(z * z + 4.0 * bounds.k2 * r * r)};
}

double conjugate_time_bound(double r, double z, const CurvatureBounds& bounds) {
  check_n(bounds.n);
  const auto [b1, b2] = conjugate_bounds(r, z, bounds);
  return bounds.n == 1 ? b1 : std::min(b1, b2);
}

double trace_bound(double t, const FrakPair& fk, int n) {
  check_n(n);
  if (!(t > 0.0)) throw InvalidArgument("trace_bound: t must be positive");
  const double x1 = fk.frak1 * t * t;
  const double x2 = fk.frak2 * t * t;
  const double sh = special::s_hat(x1);
  if (std::abs(sh) < kPoleTol) pole("trace_bound", x1);
  double value = -1.0 / t + special::e_hat(x1) / (t * sh);
  if (n > 1) {
    if (std::abs(special::sinc_sqrt(x2)) < kPoleTol) pole("trace_bound", x2);
    value -= (2.0 * n - 2.0) * special::tau_cot(x2) / t;
  }
  return value;
}

double laplace_h(double r, double z, const CurvatureBounds& bounds, HForm form) {
  check_n(bounds.n);
  if (!(r > 0.0)) throw InvalidArgument("laplace_h: r must be positive");
  const auto fk = frak(r, z, bounds);
  const double sh = special::s_hat(fk.frak1);
  if (std::abs(sh) < kPoleTol) pole("laplace_h", fk.frak1);
  const double first = -special::e_hat(fk.frak1) / sh;
  const int n = bounds.n;
  if (form == HForm::trace) {
    double value = first + 1.0;
    if (n > 1) {
      if (std::abs(special::sinc_sqrt(fk.frak2)) < kPoleTol) pole("laplace_h", fk.frak2);
      value += (2.0 * n - 2.0) * special::tau_cot(fk.frak2);
    }
    return value / r;
  }
  if (std::abs(special::sinc_sqrt(fk.frak2)) < kPoleTol) pole("laplace_h", fk.frak2);
  return (first + (2.0 * n - 1.0) * special::tau_cot(fk.frak2)) / r;
}

double volume_k(double r, double z, const CurvatureBounds& bounds) {
  check_n(bounds.n);
  if (!(r >= 0.0)) throw InvalidArgument("volume_k: r must be nonnegative");
  const auto fk = frak(r, z, bounds);
  const double sin_block = std::pow(special::sinc_sqrt(fk.frak2), 2 * bounds.n - 2);
  return r * r * sin_block * special::s_hat(fk.frak1);
}

}  // namespace sasaki
