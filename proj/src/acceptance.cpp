#include "sasaki/acceptance.hpp"

#include "sasaki/comparison.hpp"
#include "sasaki/distance_field.hpp"
#include "sasaki/error.hpp"
#include "sasaki/hamiltonian.hpp"
#include "sasaki/jacobi.hpp"
#include "sasaki/models.hpp"
#include "sasaki/special.hpp"
#include "sasaki/volume.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace sasaki::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kNames[] = {"riccati", "detb",    "conjugate", "geodesics",
                              "cut",     "bishop",  "laplacian", "comparison"};

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
  out.back() = b;
  return out;
}

Covector random_unit_covector(std::mt19937_64& rng, int n, double zmax) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uz(-zmax, zmax);
  Vector dir(2 * n);
  for (auto& v : dir) v = normal(rng);
  return unit_covector(dir, uz(rng));
}

// 1. Riccati integration against the closed form.
CriterionResult riccati() {
  constexpr double kTol = 1e-8;
  const std::pair<double, double> ks[] = {{0, 0}, {4, 1}, {-1, -1}, {1, -1}};
  RiccatiOptions opt;
  opt.tol = {1e-13, 1e-13};
  double worst = 0.0;
  std::string where;
  for (auto [k1, k2] : ks) {
    for (double z : {0.0, 1.0, 2.0}) {
      for (int n = 1; n <= 3; ++n) {
        const CurvatureBounds b{k1, k2, n};
        const FrakPair fk = frak(1.0, z, b);
        double tc = conjugate_time_bound(1.0, z, b);
        if (!std::isfinite(tc)) tc = 2.0 * kPi;
        opt.output_times = linspace(0.1, 0.9 * tc, 40);
        const auto res = integrate_riccati(n, constant_profile(constant_curvature_matrix(n, fk.frak1, fk.frak2)),
                                           0.9 * tc, opt);
        for (const auto& st : res.states) {
          const double err = (st.S - oracle_S(n, fk.frak1, fk.frak2, st.t).S).cwiseAbs().maxCoeff();
          if (err > worst) {
            worst = err;
            where = "k=(" + g(k1) + "," + g(k2) + ") z=" + g(z) + " n=" + std::to_string(n) + " t=" + g(st.t);
          }
        }
        if (res.states.size() != opt.output_times.size()) {
          return {1, "", false, "missing states (blow-up?) at k=(" + g(k1) + "," + g(k2) + ") z=" + g(z)};
        }
      }
    }
  }
  return {1, "", worst <= kTol,
          "max |S - S_oracle| = " + g(worst) + " (tol " + g(kTol) + ") at " + where};
}

// 2. |det B(t)| ~ t^{2n+3} / 12 for R = 0.
CriterionResult detb() {
  constexpr double kSlopeTol = 0.05, kCoefTol = 0.02;
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> ts;
    for (int i = 0; i < 20; ++i) ts.push_back(std::pow(10.0, -3.0 + i / 19.0));
    JacobiOptions jo;
    jo.tol = {1e-16, 1e-12};
    jo.output_times = ts;
    const auto sol = integrate_jacobi(n, constant_profile(constant_curvature_matrix(n, 0, 0)), 1e-2, jo);
    // Least-squares fit of log|det B| = log c + slope log t.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : ts) {
      const auto it = std::find(sol.grid.begin(), sol.grid.end(), t);
      const double x = std::log(t);
      const double y = std::log(std::abs(sol.detB[static_cast<std::size_t>(it - sol.grid.begin())]));
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double m = static_cast<double>(ts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double coef = std::exp((sy - slope * sx) / m);
    const bool pass = std::abs(slope - (2 * n + 3)) <= kSlopeTol && std::abs(12.0 * coef - 1.0) <= kCoefTol;
    ok = ok && pass;
    detail += "n=" + std::to_string(n) + ": slope " + g(slope) + ", 12c " + g(12.0 * coef) + "; ";
  }
  return {2, "", ok, detail + "(tol slope " + g(kSlopeTol) + ", coef " + g(kCoefTol) + ")"};
}

// 3. First conjugate time of the model profiles equals the comparison bound.
CriterionResult conjugate() {
  constexpr double kRelTol = 1e-8;
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const auto& model : {ModelSpace::hopf(1), ModelSpace::heisenberg(1), ModelSpace::hopf(2),
                            ModelSpace::heisenberg(2)}) {
    for (double z : {0.0, 0.5, 2.0}) {
      const double expected = conjugate_time_bound(1.0, z, model.bounds());
      const FrakPair fk = frak(1.0, z, model.bounds());
      const double T = std::isfinite(expected) ? 1.5 * expected : 20.0;
      JacobiOptions jo;
      jo.tol = {1e-12, 1e-12};
      auto sol = integrate_jacobi(model.n, constant_profile(constant_curvature_matrix(model.n, fk.frak1, fk.frak2)),
                                  T, jo);
      const auto tc = first_conjugate_time(sol);
      bool pass;
      if (!std::isfinite(expected)) {
        pass = !tc.has_value();
      } else {
        const double rel = tc ? std::abs(*tc - expected) / expected : kInf;
        worst = std::max(worst, rel);
        pass = rel <= kRelTol;
      }
      if (!pass) {
        detail += model.name() + " n=" + std::to_string(model.n) + " z=" + g(z) + " got " +
                  (tc ? g(*tc) : std::string("none")) + " expected " + g(expected) + "; ";
      }
      ok = ok && pass;
    }
  }
  return {3, "", ok, "max relative error " + g(worst) + " (tol " + g(kRelTol) + ")" +
                         (detail.empty() ? "" : "; " + detail)};
}

// 4. Closed-form geodesics against the integrated Hamiltonian flow.
CriterionResult geodesics() {
  constexpr double kTol = 1e-8;
  std::mt19937_64 rng(20240601);
  const auto times = linspace(0.0, 2.0 * kPi, 65);
  double worst_h = 0.0, worst_s = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Covector p = random_unit_covector(rng, n, 3.0);
      const auto flow_h = heisenberg_flow(p, times);
      const auto flow_s = hopf_flow(p, times);
      const auto closed_h = heisenberg_geodesic(p, 2.0 * kPi, 65);
      const auto closed_s = hopf_geodesic(p, 2.0 * kPi, 65);
      for (std::size_t k = 0; k < times.size(); ++k) {
        worst_h = std::max(worst_h, (closed_h[k].x - flow_h[k].x).cwiseAbs().maxCoeff());
        worst_s = std::max(worst_s, (closed_s[k].x - flow_s[k].x).cwiseAbs().maxCoeff());
      }
    }
  }
  return {4, "", worst_h <= kTol && worst_s <= kTol,
          "sup error heisenberg " + g(worst_h) + ", hopf " + g(worst_s) + " (tol " + g(kTol) +
              "; 100 covectors each for n=1,2)"};
}

// 5. Geodesics with equal z meet at the cut time.
CriterionResult cut() {
  constexpr double kTolH = 1e-10, kTolS = 1e-8;
  std::mt19937_64 rng(7);
  double worst_h = 0.0, worst_s = 0.0, worst_flow = 0.0;
  const double z = 1.0;
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      Covector a = random_unit_covector(rng, n, 0.0), b = random_unit_covector(rng, n, 0.0);
      a.z = b.z = z;
      const double th = cut_time(ModelSpace::heisenberg(n), a);
      worst_h = std::max(worst_h, (heisenberg_point(a, th) - heisenberg_point(b, th)).norm());
      const double ts = cut_time(ModelSpace::hopf(n), a);
      const auto ga = hopf_geodesic(a, ts, 2).back().x;
      const auto gb = hopf_geodesic(b, ts, 2).back().x;
      worst_s = std::max(worst_s, (ga - gb).norm());
      const auto fa = hopf_flow(a, {ts}).back().x;
      const auto fb = hopf_flow(b, {ts}).back().x;
      worst_flow = std::max(worst_flow, (fa - fb).norm());
    }
  }
  return {5, "", worst_h <= kTolH && worst_s <= kTolS && worst_flow <= kTolS,
          "endpoint gap heisenberg (t=2pi) " + g(worst_h) + " (tol " + g(kTolH) + "), hopf (t=2pi/sqrt(5)) " +
              g(worst_s) + ", hopf integrated flow " + g(worst_flow) + " (tol " + g(kTolS) + ")"};
}

// 6. Bishop comparison, self-consistency and Heisenberg dilations.
CriterionResult bishop() {
  constexpr double kRatioTol = 1e-3, kDilationTol = 5e-3;
  bool ok = true;
  std::string detail;
  const std::vector<double> radii{0.5, 1.0, 2.0, 3.0};
  double worst_ratio = 0.0;
  for (const auto& row : bishop_check(ModelSpace::hopf(1), ModelKind::heisenberg, radii)) {
    worst_ratio = std::max(worst_ratio, row.ratio);
    ok = ok && row.ok;
  }
  detail += "max hopf/heisenberg ratio " + g(worst_ratio) + " (<= 1 + " + g(kRatioTol) + "); ";

  // Self comparison: the (t, z) quadrature against the independent (r, z) k-integral.
  double worst_self = 0.0;
  VolumeOptions kopt;
  kopt.method = VolumeMethod::k_integral;
  for (const auto& model : {ModelSpace::heisenberg(1), ModelSpace::hopf(1)}) {
    for (double R : radii) {
      const double a = ball_volume(model, R).value;
      const double b = ball_volume(model, R, kopt).value;
      worst_self = std::max(worst_self, std::abs(a / b - 1.0));
    }
  }
  ok = ok && worst_self <= kRatioTol;
  detail += "self ratio max |r - 1| " + g(worst_self) + " (tol " + g(kRatioTol) + "); ";

  double worst_dil = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const auto h = ModelSpace::heisenberg(n);
    const double ratio = ball_volume(h, 2.0).value / ball_volume(h, 1.0).value;
    const double expected = std::pow(2.0, 2 * n + 2);
    worst_dil = std::max(worst_dil, std::abs(ratio / expected - 1.0));
  }
  ok = ok && worst_dil <= kDilationTol;
  detail += "dilation max relative deviation " + g(worst_dil) + " (tol " + g(kDilationTol) + ")";
  return {6, "", ok, detail};
}

// 7. Laplacian comparison on the Heisenberg group.
CriterionResult laplacian() {
  constexpr double kViolation = 1e-4, kNearEquality = 1e-3, kLimitTol = 1e-6;
  const auto samples = verify_laplacian_comparison(ModelSpace::heisenberg(1), 200, 42);
  double min_margin = kInf, max_abs = 0.0, slack_dev = 0.0;
  for (const auto& s : samples) {
    min_margin = std::min(min_margin, s.margin);
    max_abs = std::max(max_abs, std::abs(s.margin));
    slack_dev = std::max(slack_dev, std::abs(s.margin - 1.0 / s.d));
  }
  double limit_err = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    limit_err = std::max(limit_err, std::abs(laplace_h(r, 0.0, CurvatureBounds{0, 0, 1}) - 5.0 / r));
  }
  const bool a = min_margin >= -kViolation;
  const bool b = max_abs <= kNearEquality;
  const bool c = limit_err <= kLimitTol;
  std::string detail = std::string("(a) ") + (a ? "pass" : "FAIL") + " min margin " + g(min_margin) +
                       " >= -" + g(kViolation) + "; (b) " + (b ? "pass" : "FAIL") + " max |margin| " +
                       g(max_abs) + " <= " + g(kNearEquality) + "; (c) " + (c ? "pass" : "FAIL") +
                       " |h(r,0) - 5/r| " + g(limit_err) + " <= " + g(kLimitTol) +
                       "; observed margin - 1/d max " + g(slack_dev);
  return {7, "", a && b && c, detail};
}

// 8. Comparison functions against the Riccati and Jacobi representations.
CriterionResult comparison() {
  constexpr double kTraceTol = 1e-10, kRatioTol = 1e-6, kContinuityTol = 1e-9;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uf(-4.0, 8.0), uu(0.02, 0.95);
  std::uniform_int_distribution<int> un(1, 3);
  double worst_trace = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = un(rng);
    const double f1 = uf(rng), f2 = uf(rng);
    double pole = f1 > 0 ? 2.0 * kPi / std::sqrt(f1) : kInf;
    if (n > 1 && f2 > 0) pole = std::min(pole, kPi / std::sqrt(f2));
    const double t = uu(rng) * std::min(pole, 2.0 * kPi);
    const auto sc = assemble_structural(n);
    const double tr = (sc.c2 * oracle_S(n, f1, f2, t).S).trace();
    const double tb = trace_bound(t, FrakPair{f1, f2}, n);
    worst_trace = std::max(worst_trace, std::abs(tb - tr) / std::max(1.0, std::abs(tr)));
  }

  double worst_ratio = 0.0;
  const std::pair<double, double> ks[] = {{0, 0}, {4, 1}, {-1, -1}, {1, -1}};
  for (auto [k1, k2] : ks) {
    for (int n = 1; n <= 3; ++n) {
      for (double r : {0.5, 1.0, 1.5}) {
        for (double z : {0.0, 0.7, 1.5}) {
          const CurvatureBounds b{k1, k2, n};
          if (!(conjugate_time_bound(r, z, b) > 1.05)) continue;
          const FrakPair fk = frak(r, z, b);
          JacobiOptions jo;
          jo.tol = {1e-14, 1e-12};
          const auto sol = integrate_jacobi(n, constant_profile(constant_curvature_matrix(n, fk.frak1, fk.frak2)),
                                            1.0, jo);
          const double ratio = volume_k(r, z, b) / (r * r * std::abs(sol.detB.back()));
          worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
        }
      }
    }
  }

  double worst_cont = 0.0;
  const double d = 1e-12;
  for (int n = 1; n <= 3; ++n) {
    for (double r : {0.5, 1.0, 2.0}) {
      const auto hp = laplace_h(r, 0.0, CurvatureBounds{d / (r * r), d / (r * r), n});
      const auto hm = laplace_h(r, 0.0, CurvatureBounds{-d / (r * r), -d / (r * r), n});
      const auto vp = volume_k(r, 0.0, CurvatureBounds{d / (r * r), d / (r * r), n});
      const auto vm = volume_k(r, 0.0, CurvatureBounds{-d / (r * r), -d / (r * r), n});
      worst_cont = std::max({worst_cont, std::abs(hp - hm), std::abs(vp - vm)});
    }
  }
  using Fn = double (*)(double);
  const Fn fns[] = {special::cos_sqrt, special::sinc_sqrt, special::one_minus_cos_over_x,
                    special::tau_minus_sin_over_cube, special::s_hat, special::e_hat, special::tau_cot};
  for (Fn f : fns) {
    for (double x0 : {0.0, 1.0, -1.0}) {
      worst_cont = std::max(worst_cont, std::abs(f(x0 + d) - f(x0 - d)));
    }
  }

  const bool ok = worst_trace <= kTraceTol && worst_ratio <= kRatioTol && worst_cont <= kContinuityTol;
  return {8, "", ok,
          "trace identity max rel " + g(worst_trace) + " (tol " + g(kTraceTol) + "); volume_k / r^2|det B(1)| max |r-1| " +
              g(worst_ratio) + " (tol " + g(kRatioTol) + "); branch continuity " + g(worst_cont) + " (tol " +
              g(kContinuityTol) + ")"};
}

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > 8) throw InvalidArgument("unknown acceptance criterion " + std::to_string(id));
  return kNames[id - 1];
}

std::vector<int> parse_suite(const std::string& suite) {
  std::vector<int> ids;
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      for (int i = 1; i <= 8; ++i) ids.push_back(i);
      continue;
    }
    int id = 0;
    for (int i = 1; i <= 8; ++i) {
      if (item == kNames[i - 1] || item == std::to_string(i)) id = i;
    }
    if (id == 0) throw InvalidArgument("unknown suite '" + item + "'");
    ids.push_back(id);
  }
  if (ids.empty()) throw InvalidArgument("empty suite");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

CriterionResult run_criterion(int id) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = riccati(); break;
      case 2: r = detb(); break;
      case 3: r = conjugate(); break;
      case 4: r = geodesics(); break;
      case 5: r = cut(); break;
      case 6: r = bishop(); break;
      case 7: r = laplacian(); break;
      case 8: r = comparison(); break;
      default: throw InvalidArgument("unknown acceptance criterion " + std::to_string(id));
    }
  } catch (const NumericalError& e) {
    r = {id, "", false, std::string("numerical failure: ") + e.what()};
  }
  r.id = id;
  r.name = criterion_name(id);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " +
         r.detail + " (" + secs + ")";
}

}  // namespace sasaki::acceptance
