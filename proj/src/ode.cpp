#include "sasaki/ode.hpp"

#include "sasaki/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sasaki::ode {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Workspace {
  Vector k2, k3, k4, k5, k6, k7, tmp;
  explicit Workspace(Eigen::Index n)
      : k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n) {}
};

// Computes y_out and, if err != nullptr, the embedded error. k1 = f(t, y) on
// entry; on exit ws.k7 = f(t + h, y_out).
void step(const Rhs& f, double t, const Vector& y, const Vector& k1, double h, Workspace& ws,
          Vector& y_out, Vector* err) {
  ws.tmp = y + h * a21 * k1;
  f(t + c2 * h, ws.tmp, ws.k2);
  ws.tmp = y + h * (a31 * k1 + a32 * ws.k2);
  f(t + c3 * h, ws.tmp, ws.k3);
  ws.tmp = y + h * (a41 * k1 + a42 * ws.k2 + a43 * ws.k3);
  f(t + c4 * h, ws.tmp, ws.k4);
  ws.tmp = y + h * (a51 * k1 + a52 * ws.k2 + a53 * ws.k3 + a54 * ws.k4);
  f(t + c5 * h, ws.tmp, ws.k5);
  ws.tmp = y + h * (a61 * k1 + a62 * ws.k2 + a63 * ws.k3 + a64 * ws.k4 + a65 * ws.k5);
  f(t + h, ws.tmp, ws.k6);
  y_out = y + h * (b1 * k1 + b3 * ws.k3 + b4 * ws.k4 + b5 * ws.k5 + b6 * ws.k6);
  f(t + h, y_out, ws.k7);
  if (err) {
    *err = h * (e1 * k1 + e3 * ws.k3 + e4 * ws.k4 + e5 * ws.k5 + e6 * ws.k6 + e7 * ws.k7);
  }
}

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, const Tolerance& tol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = tol.abs + tol.rel * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(err.size(), 1)));
}

double initial_step(const Rhs& f, double t0, const Vector& y0, const Vector& f0,
                    const Tolerance& tol) {
  Vector sc = (tol.abs + tol.rel * y0.array().abs()).matrix();
  const double d0 = (y0.array() / sc.array()).matrix().norm() / std::sqrt(double(y0.size()));
  const double d1 = (f0.array() / sc.array()).matrix().norm() / std::sqrt(double(y0.size()));
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  Vector y1 = y0 + h0 * f0;
  Vector f1(y0.size());
  f(t0 + h0, y1, f1);
  const double d2 =
      ((f1 - f0).array() / sc.array()).matrix().norm() / std::sqrt(double(y0.size())) / h0;
  const double h1 = (std::max(d1, d2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 0.2);
  return std::min(100.0 * h0, h1);
}

}  // namespace

Vector dopri_step(const Rhs& f, double t, const Vector& y, double h) {
  Workspace ws(y.size());
  Vector k1(y.size());
  f(t, y, k1);
  Vector out(y.size());
  step(f, t, y, k1, h, ws, out, nullptr);
  return out;
}

Endpoint integrate(const Rhs& f, double t0, const Vector& y0, double t1,
                   const AdaptiveOptions& opts, const Observer& observer,
                   std::span<const double> stops) {
  if (!(t1 > t0)) throw InvalidArgument("integrate: end time must exceed start time");
  const Eigen::Index dim = y0.size();
  Workspace ws(dim);
  Vector y = y0;
  Vector k1(dim);
  f(t0, y, k1);
  Vector y_new(dim), err(dim);

  double t = t0;
  double h = opts.initial_step > 0.0 ? opts.initial_step : initial_step(f, t0, y0, k1, opts.tol);
  h = std::clamp(h, 1e-10 * (t1 - t0), opts.max_step);

  auto next_stop = std::find_if(stops.begin(), stops.end(), [&](double s) { return s > t0; });

  long steps = 0;
  while (t < t1) {
    if (++steps > opts.max_steps) {
      std::ostringstream os;
      os << "integrate: step budget exhausted at t=" << t;
      throw NumericalError(os.str());
    }
    double target = t1;
    if (next_stop != stops.end() && *next_stop < t1) target = *next_stop;
    bool lands = false;
    double h_try = std::min(h, opts.max_step);
    if (t + h_try >= target || target - (t + h_try) < 1e-12 * std::abs(target)) {
      h_try = target - t;
      lands = true;
    }
    if (h_try < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate: step size underflow at t=" << t;
      throw NumericalError(os.str());
    }
    step(f, t, y, k1, h_try, ws, y_new, &err);
    const double en = error_norm(err, y, y_new, opts.tol);
    if (!std::isfinite(en)) {
      h = 0.2 * h_try;
      continue;
    }
    if (en <= 1.0) {
      t = lands ? target : t + h_try;
      y.swap(y_new);
      k1 = ws.k7;
      if (lands && next_stop != stops.end() && *next_stop == target) ++next_stop;
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      // A landing step may be artificially short; do not let it shrink h.
      h = lands ? std::max(h, h_try * fac) : h_try * fac;
      if (observer && !observer(t, y)) break;
    } else {
      h = h_try * std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0);
    }
  }
  return Endpoint{t, y};
}

}  // namespace sasaki::ode
