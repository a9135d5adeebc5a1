#include "sasaki/distance_field.hpp"

#include "sasaki/error.hpp"
#include "sasaki/parallel.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace sasaki {
namespace {

void check_point(const Vector& x) {
  if (x.size() < 3 || x.size() % 2 == 0) {
    throw InvalidArgument("Heisenberg point must have length 2n+1 >= 3");
  }
  if (!x.allFinite()) throw InvalidArgument("Heisenberg point has non-finite coordinates");
}

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("finite-difference step must be > 0");
}

template <class D>
double richardson(D diff, double s) {
  return (4.0 * diff(0.5 * s) - diff(s)) / 3.0;
}

std::string point_str(const Vector& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

Vector heisenberg_frame_flow(const Vector& x, int k, double s) {
  const int n = static_cast<int>(x.size() - 1) / 2;
  const int i = k / 2;
  Vector out = x;
  if (k % 2 == 0) {
    out[2 * i] += s;
    out[2 * n] -= 0.5 * x[2 * i + 1] * s;
  } else {
    out[2 * i + 1] += s;
    out[2 * n] += 0.5 * x[2 * i] * s;
  }
  return out;
}

double sub_laplacian_fd(const ScalarField& f, const Vector& x, double step) {
  check_point(x);
  check_step(step);
  const int n = static_cast<int>(x.size() - 1) / 2;
  const double f0 = f(x);
  double total = 0.0;
  for (int k = 0; k < 2 * n; ++k) {
    total += richardson(
        [&](double s) {
          return (f(heisenberg_frame_flow(x, k, s)) - 2.0 * f0 + f(heisenberg_frame_flow(x, k, -s))) /
                 (s * s);
        },
        step);
  }
  return total;
}

Vector horizontal_gradient_fd(const ScalarField& f, const Vector& x, double step) {
  check_point(x);
  check_step(step);
  const int n = static_cast<int>(x.size() - 1) / 2;
  Vector g(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    g[k] = richardson(
        [&](double s) {
          return (f(heisenberg_frame_flow(x, k, s)) - f(heisenberg_frame_flow(x, k, -s))) / (2.0 * s);
        },
        step);
  }
  return g;
}

double reeb_derivative_fd(const ScalarField& f, const Vector& x, double step) {
  check_point(x);
  check_step(step);
  const Eigen::Index iz = x.size() - 1;
  return richardson(
      [&](double s) {
        Vector up = x, down = x;
        up[iz] += s;
        down[iz] -= s;
        return (f(up) - f(down)) / (2.0 * s);
      },
      step);
}

LaplacianSample laplacian_sample(const Vector& x, const LaplacianOptions& options) {
  check_point(x);
  const int n = static_cast<int>(x.size() - 1) / 2;
  const ScalarField dist = [](const Vector& q) { return heisenberg_distance(q); };
  LaplacianSample s;
  s.x = x;
  try {
    s.d = dist(x);
    const double step = options.step_rel * s.d;
    s.v0d = reeb_derivative_fd(dist, x, step);
    s.lapH = sub_laplacian_fd(dist, x, step);
    s.grad_norm = horizontal_gradient_fd(dist, x, step).norm();
  } catch (const Error& e) {
    throw NumericalError("laplacian sample at " + point_str(x) + ": " + e.what());
  }
  // The covector of -d^2/2 at x has |p^h| = d and p(v0) = -d v0(d); h is even in z.
  const CurvatureBounds flat{0.0, 0.0, n};
  const double z = s.d * s.v0d;
  const double trace = laplace_h(s.d, z, flat, HForm::trace);
  s.bound_displayed = laplace_h(s.d, z, flat, HForm::displayed);
  s.bound = options.form == HForm::trace ? trace : s.bound_displayed;
  s.margin = s.bound - s.lapH;
  return s;
}

std::vector<LaplacianSample> verify_laplacian_comparison(const ModelSpace& model, int samples,
                                                         std::uint64_t seed,
                                                         const LaplacianOptions& options) {
  validate(model);
  if (model.kind != ModelKind::heisenberg) {
    throw InvalidArgument("laplacian comparison sweep is only available for the heisenberg model");
  }
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (!(options.box > options.exclusion) || !(options.exclusion > 0.0)) {
    throw InvalidArgument("sampling box must exceed the exclusion radius > 0");
  }
  const int n = model.n;
  return parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(-options.box, options.box);
    Vector x(2 * n + 1);
    do {
      for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = uni(rng);
    } while (x.head(2 * n).norm() < options.exclusion);
    return laplacian_sample(x, options);
  });
}

}  // namespace sasaki
