#include "sasaki/hamiltonian.hpp"

#include "sasaki/error.hpp"

#include <algorithm>
#include <cmath>

namespace sasaki {
namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw InvalidArgument("flow: no output times");
  if (!(times.front() >= 0.0) || !std::is_sorted(times.begin(), times.end()) ||
      !std::isfinite(times.back())) {
    throw InvalidArgument("flow: output times must be finite, sorted and nonnegative");
  }
}

template <class Make>
std::vector<GeodesicSample> sample_flow(const ode::Rhs& rhs, const Vector& y0,
                                        const std::vector<double>& times,
                                        const ode::Tolerance& tol, Make make) {
  std::vector<GeodesicSample> out;
  std::size_t next = 0;
  while (next < times.size() && times[next] == 0.0) out.push_back(make(0.0, y0)), ++next;
  if (next == times.size()) return out;
  ode::AdaptiveOptions ao;
  ao.tol = tol;
  std::vector<double> stops(times.begin() + next, times.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  ode::integrate(
      rhs, 0.0, y0, times.back(), ao,
      [&](double t, const Vector& y) {
        while (next < times.size() && times[next] == t) out.push_back(make(t, y)), ++next;
        return true;
      },
      stops);
  return out;
}

}  // namespace

std::vector<GeodesicSample> heisenberg_flow(const Covector& p, const std::vector<double>& times,
                                            const ode::Tolerance& tol) {
  validate(p);
  check_times(times);
  const int n = p.n();
  const int m = 2 * n + 1;
  // y = (x1, y1, ..., xn, yn, z, px1, py1, ..., pxn, pyn, pz)
  const ode::Rhs rhs = [n, m](double, const Vector& y, Vector& dy) {
    dy.setZero(y.size());
    const double pz = y[2 * m - 1];
    for (int j = 0; j < n; ++j) {
      const double x = y[2 * j], yy = y[2 * j + 1];
      const double PX = y[m + 2 * j] - 0.5 * yy * pz;
      const double PY = y[m + 2 * j + 1] + 0.5 * x * pz;
      dy[2 * j] = PX;
      dy[2 * j + 1] = PY;
      dy[2 * n] += 0.5 * (x * PY - yy * PX);
      dy[m + 2 * j] = -0.5 * pz * PY;
      dy[m + 2 * j + 1] = 0.5 * pz * PX;
    }
  };
  Vector y0 = Vector::Zero(2 * m);
  y0.segment(m, 2 * n) = p.h;
  y0[2 * m - 1] = p.z;
  return sample_flow(rhs, y0, times, tol, [n, m](double t, const Vector& y) {
    const double pz = y[2 * m - 1];
    Covector P{Vector(2 * n), pz};
    for (int j = 0; j < n; ++j) {
      P.h[2 * j] = y[m + 2 * j] - 0.5 * y[2 * j + 1] * pz;
      P.h[2 * j + 1] = y[m + 2 * j + 1] + 0.5 * y[2 * j] * pz;
    }
    return GeodesicSample{t, y.head(m), P};
  });
}

std::vector<GeodesicSample> hopf_flow(const Covector& p, const std::vector<double>& times,
                                      const ode::Tolerance& tol) {
  validate(p);
  check_times(times);
  const int n = p.n();
  const int m = 2 * n + 2;
  // Real coordinates, multiplication by i maps (a, b) -> (-b, a) pairwise.
  const auto times_i = [m](const Eigen::Ref<const Vector>& v) {
    Vector out(m);
    for (int j = 0; j < m / 2; ++j) {
      out[2 * j] = -v[2 * j + 1];
      out[2 * j + 1] = v[2 * j];
    }
    return out;
  };
  const ode::Rhs rhs = [m, times_i](double, const Vector& y, Vector& dy) {
    const auto x = y.head(m);
    const auto q = y.tail(m);
    const double r2 = x.squaredNorm();
    const Vector ix = times_i(x);
    const Vector iq = times_i(q);
    const double a = q.dot(x);
    const double b = q.dot(ix);
    dy.resize(2 * m);
    dy.head(m) = q - (a * x + b * ix) / r2;
    dy.tail(m) = (a * q - b * iq) / r2 - (a * a + b * b) * x / (r2 * r2);
  };
  Vector y0 = Vector::Zero(2 * m);
  y0[0] = 1.0;
  y0[m + 1] = 0.5 * p.z;
  y0.segment(m + 2, 2 * n) = p.h;
  return sample_flow(rhs, y0, times, tol, [m](double t, const Vector& y) {
    return GeodesicSample{t, y.head(m), std::nullopt};
  });
}

}  // namespace sasaki
