#include "sasaki/jacobi.hpp"

#include "sasaki/error.hpp"
#include "sasaki/special.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sasaki {
namespace {

constexpr double kPoleTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ode::Rhs jacobi_rhs(int n, CurvatureProfile profile) {
  const auto sc = assemble_structural(n);
  const int dim = frame_dim(n);
  return [sc, dim, profile = std::move(profile)](double t, const Vector& y, Vector& dy) {
    const Eigen::Map<const Matrix> A(y.data(), dim, dim);
    const Eigen::Map<const Matrix> B(y.data() + dim * dim, dim, dim);
    dy.resize(y.size());
    Eigen::Map<Matrix> dA(dy.data(), dim, dim);
    Eigen::Map<Matrix> dB(dy.data() + dim * dim, dim, dim);
    const Matrix R = profile(t).assemble();
    dA.noalias() = -A * sc.c1;
    dA.noalias() += B * R;
    dB.noalias() = -A * sc.c2;
    dB.noalias() += B * sc.c1.transpose();
  };
}

std::vector<double> sorted_stops(const std::vector<double>& times, double lo, double hi) {
  std::vector<double> out;
  for (double t : times) {
    if (!std::isfinite(t)) throw InvalidArgument("output time is not finite");
    if (t > lo && t <= hi) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_profile(int n, const CanonicalCurvature& r) {
  if (r.n != n) throw InvalidArgument("curvature profile dimension does not match n");
}

}  // namespace

CurvatureProfile constant_profile(const CanonicalCurvature& r) {
  return [r](double) { return r; };
}

JacobiSolution::JacobiSolution(int n, CurvatureProfile profile, JacobiOptions options)
    : n_(n), profile_(std::move(profile)), options_(std::move(options)) {}

std::pair<Matrix, Matrix> JacobiSolution::evaluate(double t) const {
  if (!(t >= 0.0) || t > grid.back()) {
    throw InvalidArgument("JacobiSolution::evaluate: t=" + fmt(t) + " outside [0, horizon]");
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const auto i = static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
  if (grid[i] == t) return {A[i], B[i]};
  const int dim = frame_dim(n_);
  Vector y(2 * dim * dim);
  Eigen::Map<Matrix>(y.data(), dim, dim) = A[i];
  Eigen::Map<Matrix>(y.data() + dim * dim, dim, dim) = B[i];
  const Vector out = ode::dopri_step(jacobi_rhs(n_, profile_), grid[i], y, t - grid[i]);
  return {Eigen::Map<const Matrix>(out.data(), dim, dim),
          Eigen::Map<const Matrix>(out.data() + dim * dim, dim, dim)};
}

JacobiSolution integrate_jacobi(int n, const CurvatureProfile& profile, double T,
                                const JacobiOptions& options) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("integrate_jacobi: T must be finite and > 0");
  check_profile(n, profile(0.0));
  const int dim = frame_dim(n);
  JacobiSolution sol(n, profile, options);

  auto record = [&](double t, const Matrix& a, const Matrix& b) {
    sol.grid.push_back(t);
    sol.A.push_back(a);
    sol.B.push_back(b);
    sol.detB.push_back(b.determinant());
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    sol.sigma_max.push_back(s(0));
    sol.sigma_min.push_back(s(s.size() - 1));
  };

  Vector y0 = Vector::Zero(2 * dim * dim);
  Eigen::Map<Matrix>(y0.data(), dim, dim).setIdentity();
  record(0.0, Matrix::Identity(dim, dim), Matrix::Zero(dim, dim));

  ode::AdaptiveOptions ao;
  ao.tol = options.tol;
  const auto stops = sorted_stops(options.output_times, 0.0, T);
  ode::integrate(
      jacobi_rhs(n, profile), 0.0, y0, T, ao,
      [&](double t, const Vector& y) {
        record(t, Eigen::Map<const Matrix>(y.data(), dim, dim),
               Eigen::Map<const Matrix>(y.data() + dim * dim, dim, dim));
        return true;
      },
      stops);
  return sol;
}

std::optional<double> first_conjugate_time(JacobiSolution& sol) {
  const auto& g = sol.grid;
  const std::size_t m = g.size();
  auto rel = [&](std::size_t i) {
    return sol.sigma_max[i] > 0.0 ? sol.sigma_min[i] / sol.sigma_max[i] : 0.0;
  };
  auto rel_at = [&](double t) {
    const Matrix b = sol.evaluate(t).second;
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  };
  auto det_at = [&](double t) { return sol.evaluate(t).second.determinant(); };

  const double warmup = 1e-3 * sol.horizon();
  constexpr double kSingular = 1e-13;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (g[i] > warmup && rel(i) < kSingular && rel(i + 1) < kSingular) {
      throw NumericalError("first_conjugate_time: indeterminate, B numerically singular on [" +
                           fmt(g[i]) + ", " + fmt(g[i + 1]) + "]");
    }
  }

  std::optional<ConjugateBracket> best;
  auto offer = [&](double t, double lo, double hi) {
    if (!best || t < best->t) best = ConjugateBracket{t, lo, hi};
  };

  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (best && g[i] > best->hi) break;
    if (sol.detB[i] == 0.0) {
      offer(g[i], g[i], g[i]);
      continue;
    }
    if ((sol.detB[i] < 0.0) != (sol.detB[i + 1] < 0.0) && sol.detB[i + 1] != 0.0) {
      double lo = g[i], hi = g[i + 1];
      const bool neg_lo = sol.detB[i] < 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double d = det_at(mid);
        if (d == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((d < 0.0) == neg_lo) lo = mid; else hi = mid;
      }
      offer(0.5 * (lo + hi), g[i], g[i + 1]);
    }
  }

  // Zeros without a sign change show up as local minima of sigma_min / sigma_max.
  constexpr double kAccept = 1e-6;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 2; i + 1 < m; ++i) {
    if (best && g[i - 1] > best->t) break;
    if (!(rel(i) <= rel(i - 1) && rel(i) <= rel(i + 1) && rel(i) < 1e-2)) continue;
    double a = g[i - 1], b = g[i + 1];
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = rel_at(c), fd = rel_at(d);
    for (int it = 0; it < 300 && b - a > 1e-14 * b; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = rel_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = rel_at(d);
      }
    }
    const double t = 0.5 * (a + b);
    const double floor = std::min(rel(i - 1), rel(i + 1));
    const double at = rel_at(t);
    if (at < kAccept && at < 1e-4 * floor) offer(t, g[i - 1], g[i + 1]);
  }

  sol.conjugate_time = best;
  if (!best) return std::nullopt;
  return best->t;
}

Matrix RiccatiState::s1() const { return S.topLeftCorner(2, 2); }
Matrix RiccatiState::s2() const { return S.block(0, 2, 2, 2 * n() - 2); }
Matrix RiccatiState::s3() const { return S.block(0, 2 * n(), 2, 1); }
Matrix RiccatiState::s4() const { return S.block(2, 2, 2 * n() - 2, 2 * n() - 2); }
Matrix RiccatiState::s5() const { return S.block(2, 2 * n(), 2 * n() - 2, 1); }
double RiccatiState::s6() const { return S(2 * n(), 2 * n()); }

std::vector<Matrix> riccati_inverse_series(int n, const Matrix& R, int order) {
  // U' = -C2 + U C1^T + C1 U - U R U with U(0) = 0.
  const auto sc = assemble_structural(n);
  const int dim = frame_dim(n);
  std::vector<Matrix> u(order + 1, Matrix::Zero(dim, dim));
  for (int k = 0; k < order; ++k) {
    Matrix rhs = u[k] * sc.c1.transpose() + sc.c1 * u[k];
    if (k == 0) rhs -= sc.c2;
    for (int i = 1; i < k; ++i) rhs -= u[i] * R * u[k - i];
    u[k + 1] = rhs / (k + 1);
  }
  return {u.begin() + 1, u.end()};
}

RiccatiResult integrate_riccati(int n, const CurvatureProfile& profile, double T,
                                const RiccatiOptions& options) {
  check_profile(n, profile(0.0));
  if (!(options.t0 > 0.0)) throw InvalidArgument("integrate_riccati: t0 must be > 0");
  if (!(T > options.t0) || !std::isfinite(T)) {
    throw InvalidArgument("integrate_riccati: horizon must be finite and exceed t0");
  }
  for (double t : options.output_times) {
    if (t < options.t0 || t > T) {
      throw InvalidArgument("integrate_riccati: output time " + fmt(t) + " outside [t0, T]");
    }
  }
  const auto sc = assemble_structural(n);
  const int dim = frame_dim(n);
  const Matrix c1t = sc.c1.transpose();

  const ode::Rhs rhs = [&](double t, const Vector& y, Vector& dy) {
    const Eigen::Map<const Matrix> raw(y.data(), dim, dim);
    const Matrix S = 0.5 * (raw + raw.transpose());
    dy.resize(y.size());
    Eigen::Map<Matrix> dS(dy.data(), dim, dim);
    dS.noalias() = S * sc.c2 * S;
    dS.noalias() -= c1t * S;
    dS.noalias() -= S * sc.c1;
    dS += profile(t).assemble();
  };

  auto seed = [&](double t0) {
    const auto coeffs = riccati_inverse_series(n, profile(0.0).assemble(), 12);
    Matrix U = Matrix::Zero(dim, dim);
    double tp = 1.0;
    for (const auto& c : coeffs) {
      tp *= t0;
      U += c * tp;
    }
    Eigen::JacobiSVD<Matrix> svd(U);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) > 1e-15 * s(0))) {
      throw NumericalError("integrate_riccati: U(t0) numerically singular at t0=" + fmt(t0));
    }
    Matrix S = U.inverse();
    S = 0.5 * (S + S.transpose()).eval();
    return Vector(Eigen::Map<const Vector>(S.data(), dim * dim));
  };

  auto as_state = [&](double t, const Vector& y) {
    const Eigen::Map<const Matrix> raw(y.data(), dim, dim);
    return RiccatiState{t, 0.5 * (raw + raw.transpose())};
  };

  ode::AdaptiveOptions ao;
  ao.tol = options.tol;
  const bool every_step = options.output_times.empty();

  // Runs from t0 to t_end and collects states; stops early on blow-up.
  struct Segment {
    std::vector<RiccatiState> states;
    Vector y_end;
    double t_end = 0.0;
    std::optional<double> blow_up;
  };
  auto run = [&](double t0, const Vector& y0, double t_end, bool collect) {
    Segment seg;
    const auto stops = sorted_stops(options.output_times, t0, t_end);
    double last_t = t0;
    Vector last_y = y0;
    const auto observer = [&](double t, const Vector& y) {
      const double mx = y.cwiseAbs().maxCoeff();
      if (!(mx <= options.blow_up)) {
        seg.blow_up = last_t;
        return false;
      }
      last_t = t;
      last_y = y;
      if (collect && (every_step || std::binary_search(stops.begin(), stops.end(), t))) {
        seg.states.push_back(as_state(t, y));
      }
      return true;
    };
    try {
      ode::integrate(rhs, t0, y0, t_end, ao, observer, stops);
    } catch (const NumericalError&) {
      if (last_y.cwiseAbs().maxCoeff() < 1e6) throw;
      seg.blow_up = last_t;
    }
    seg.t_end = last_t;
    seg.y_end = last_y;
    return seg;
  };

  double t0 = options.t0;
  for (int attempt = 0;; ++attempt) {
    const double t_check = std::min(T, std::max(0.1, 100.0 * t0));
    const Vector y0 = seed(t0);
    Segment first = run(t0, y0, t_check, true);
    bool ok = !first.blow_up.has_value();
    if (ok) {
      const Segment half = run(0.5 * t0, seed(0.5 * t0), t_check, false);
      ok = !half.blow_up.has_value();
      if (ok) {
        const double scale = std::max(1.0, half.y_end.cwiseAbs().maxCoeff());
        ok = (first.y_end - half.y_end).cwiseAbs().maxCoeff() <= options.seed_check * scale;
      }
    }
    if (!ok) {
      if (attempt >= options.max_seed_halvings) {
        throw NumericalError("integrate_riccati: seeding check failed down to t0=" + fmt(t0));
      }
      t0 *= 0.5;
      continue;
    }

    RiccatiResult result;
    result.t0 = t0;
    if (every_step || std::binary_search(options.output_times.begin(), options.output_times.end(), t0)) {
      result.states.push_back(as_state(t0, y0));
    }
    result.states.insert(result.states.end(), first.states.begin(), first.states.end());
    if (t_check < T) {
      Segment rest = run(t_check, first.y_end, T, true);
      result.states.insert(result.states.end(), rest.states.begin(), rest.states.end());
      result.blow_up_time = rest.blow_up;
    }
    return result;
  }
}

RiccatiState oracle_S(int n, double frak1, double frak2, double t) {
  if (n < 1) throw InvalidArgument("oracle_S: n must be >= 1");
  if (!(t > 0.0)) throw InvalidArgument("oracle_S: t must be > 0");
  const int dim = frame_dim(n);
  const double x1 = frak1 * t * t;
  const double x2 = frak2 * t * t;
  const double sh = special::s_hat(x1);
  if (std::abs(sh) < kPoleTol) throw NumericalError("oracle_S: pole of the frak1 block at t=" + fmt(t));
  Matrix S = Matrix::Zero(dim, dim);
  S(0, 0) = -special::sinc_sqrt(x1) / (t * t * t * sh);
  S(0, 1) = S(1, 0) = special::one_minus_cos_over_x(x1) / (t * t * sh);
  S(1, 1) = special::e_hat(x1) / (t * sh);
  if (n > 1) {
    if (std::abs(special::sinc_sqrt(x2)) < kPoleTol) {
      throw NumericalError("oracle_S: pole of the frak2 block at t=" + fmt(t));
    }
    const double s4 = -special::tau_cot(x2) / t;
    for (int i = 2; i < 2 * n; ++i) S(i, i) = s4;
  }
  S(2 * n, 2 * n) = -1.0 / t;
  return RiccatiState{t, S};
}

RiccatiState expm_S(int n, double frak1, double frak2, double t) {
  const auto sc = assemble_structural(n);
  const int dim = frame_dim(n);
  const Matrix R = constant_curvature_matrix(n, frak1, frak2).assemble();
  Matrix M(2 * dim, 2 * dim);
  M << -sc.c1, -sc.c2, R, sc.c1.transpose();
  const Matrix E = (t * M).exp();
  const Matrix A = E.topLeftCorner(dim, dim);
  const Matrix B = E.topRightCorner(dim, dim);
  Matrix S = B.fullPivLu().solve(A);
  return RiccatiState{t, 0.5 * (S + S.transpose())};
}

double closed_form_abs_det_b(int n, double frak1, double frak2, double t) {
  const double x1 = frak1 * t * t;
  const double x2 = frak2 * t * t;
  return std::pow(t, 2 * n + 3) * std::pow(special::sinc_sqrt(x2), 2 * n - 2) *
         std::abs(special::s_hat(x1));
}

}  // namespace sasaki
