#include "sasaki/volume.hpp"

#include "sasaki/comparison.hpp"
#include "sasaki/error.hpp"
#include "sasaki/jacobi.hpp"
#include "sasaki/parallel.hpp"
#include "sasaki/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace sasaki {
namespace {

constexpr double kPi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Cell {
  double lo = 0.0;
  double hi = 0.0;
  bool tail = false;  // [lo, inf) through z = lo / u
};

struct CellResult {
  double value = 0.0;
  double error = 0.0;
  long outer = 0;
  long inner = 0;
};

void append_cells(std::vector<Cell>& cells, double lo, double hi, int count) {
  if (!(hi > lo)) return;
  for (int i = 0; i < count; ++i) {
    cells.push_back(Cell{lo + (hi - lo) * i / count, lo + (hi - lo) * (i + 1) / count, false});
  }
}

// Radicand offsets c_b of the applicable cut-time branches 2 pi / sqrt(z^2 + c_b).
std::vector<double> branch_offsets(const ModelSpace& m) {
  std::vector<double> c{m.k1};
  if (m.n > 1) c.push_back(4.0 * m.k2);
  return c;
}

// Integrand |det B_{(1,z)}(t)| / t for the constant curvature along (1, z).
double rho_hat(int n, const FrakPair& fk, double t) {
  return std::abs(closed_form_abs_det_b(n, fk.frak1, fk.frak2, t)) / t;
}

class ZIntegrator {
 public:
  ZIntegrator(const ModelSpace& model, double R, const VolumeOptions& opt)
      : model_(model), R_(R), opt_(opt) {}

  double t_max(double z) const {
    return std::min(R_, conjugate_time_bound(1.0, z, model_.bounds()));
  }

  // inner(z) = int_0^{t_max(z)} rho_hat dt
  double inner(double z, CellResult& acc) const {
    ++acc.outer;
    const double tm = t_max(z);
    const FrakPair fk = frak(1.0, z, model_.bounds());
    double err = 0.0;
    if (opt_.method == VolumeMethod::jacobi) {
      const auto profile = constant_profile(constant_curvature_matrix(model_.n, fk.frak1, fk.frak2));
      JacobiOptions jo;
      jo.tol = opt_.jacobi_tol;
      const JacobiSolution sol = integrate_jacobi(model_.n, profile, tm, jo);
      return GK::integrate(
          [&](double t) {
            ++acc.inner;
            return std::abs(sol.evaluate(t).second.determinant()) / t;
          },
          0.0, tm, opt_.max_depth, 0.1 * opt_.tol, &err);
    }
    return GK::integrate(
        [&](double t) {
          ++acc.inner;
          return rho_hat(model_.n, fk, t);
        },
        0.0, tm, opt_.max_depth, 0.1 * opt_.tol, &err);
  }

  CellResult cell(const Cell& c) const {
    CellResult acc;
    double err = 0.0;
    if (c.tail) {
      acc.value = GK::integrate(
          [&](double u) {
            const double z = c.lo / u;
            return inner(z, acc) * c.lo / (u * u);
          },
          0.0, 1.0, opt_.max_depth, opt_.tol, &err);
    } else {
      acc.value = GK::integrate([&](double z) { return inner(z, acc); }, c.lo, c.hi,
                                opt_.max_depth, opt_.tol, &err);
    }
    acc.error = err;
    return acc;
  }

  // Largest z for which the cut time is at least R (0 if none).
  double kink() const {
    double zs2 = std::numeric_limits<double>::infinity();
    for (double c : branch_offsets(model_)) zs2 = std::min(zs2, std::pow(2.0 * kPi / R_, 2) - c);
    return zs2 > 0.0 ? std::sqrt(zs2) : 0.0;
  }

 private:
  ModelSpace model_;
  double R_;
  VolumeOptions opt_;
};

VolumeResult finish(const ModelSpace& model, double R, const VolumeOptions& opt,
                    const std::vector<CellResult>& parts) {
  std::vector<double> values, errors;
  VolumeResult res;
  for (const auto& p : parts) {
    values.push_back(p.value);
    errors.push_back(p.error);
    res.node_counts.outer += p.outer;
    res.node_counts.inner += p.inner;
  }
  const double scale = 2.0 * sphere_area(model.n);
  res.R = R;
  res.model = model;
  res.method = opt.method;
  res.value = scale * pairwise_sum(values);
  res.abs_error_estimate = scale * pairwise_sum(errors);
  res.node_counts.cells = static_cast<int>(parts.size());
  return res;
}

VolumeResult volume_tz(const ModelSpace& model, double R, const VolumeOptions& opt) {
  const ZIntegrator zi(model, R, opt);
  const double zs = zi.kink();
  const double Z = std::max({4.0 * kPi / R, 50.0, 2.0 * zs});
  std::vector<Cell> cells;
  append_cells(cells, 0.0, zs, opt.cells);
  append_cells(cells, zs, Z, opt.cells);
  cells.push_back(Cell{Z, std::numeric_limits<double>::infinity(), true});
  const auto parts = parallel_map(cells.size(), [&](std::size_t i) { return zi.cell(cells[i]); });
  return finish(model, R, opt, parts);
}

// int_0^R r^{2n-1} * 2 int_0^{W(r)} k(r, w) dw dr with W(r)^2 = min_b (4 pi^2 - c_b r^2).
VolumeResult volume_rw(const ModelSpace& model, double R, const VolumeOptions& opt) {
  const auto offsets = branch_offsets(model);
  const auto bounds = model.bounds();
  const auto w_max = [&](double r) {
    double w2 = std::numeric_limits<double>::infinity();
    for (double c : offsets) w2 = std::min(w2, 4.0 * kPi * kPi - c * r * r);
    return w2 > 0.0 ? std::sqrt(w2) : 0.0;
  };
  std::vector<double> breaks{0.0};
  for (double c : offsets) {
    if (c > 0.0 && 2.0 * kPi / std::sqrt(c) < R) breaks.push_back(2.0 * kPi / std::sqrt(c));
  }
  std::sort(breaks.begin(), breaks.end());
  const double r_end = breaks.size() > 1 ? breaks[1] : R;
  std::vector<Cell> cells;
  append_cells(cells, 0.0, r_end, opt.cells);
  const auto parts = parallel_map(cells.size(), [&](std::size_t i) {
    CellResult acc;
    double err = 0.0;
    acc.value = GK::integrate(
        [&](double r) {
          ++acc.outer;
          const double wm = w_max(r);
          if (wm == 0.0) return 0.0;
          double e2 = 0.0;
          const double in = GK::integrate(
              [&](double w) {
                ++acc.inner;
                return sasaki::volume_k(r, w, bounds);
              },
              0.0, wm, opt.max_depth, 0.1 * opt.tol, &e2);
          return std::pow(r, 2 * model.n - 1) * in;
        },
        cells[i].lo, cells[i].hi, opt.max_depth, opt.tol, &err);
    acc.error = err;
    return acc;
  });
  return finish(model, R, opt, parts);
}

VolumeResult volume_mc(const ModelSpace& model, double R, const VolumeOptions& opt) {
  const ZIntegrator zi(model, R, opt);
  const double c = std::max(zi.kink(), 1.0);
  const long m = std::max<long>(1, static_cast<long>(std::sqrt(static_cast<double>(opt.samples) / 2.0)));
  // Row i of the m x m strata draws from its own generator seeded by (seed, i).
  const auto rows = parallel_map(static_cast<std::size_t>(m), [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    CellResult acc;
    const double area = 1.0 / (static_cast<double>(m) * m);
    for (long j = 0; j < m; ++j) {
      double f[2];
      for (double& fk : f) {
        const double u = (i + uni(rng)) / m;
        const double v = (j + uni(rng)) / m;
        const double z = c * u / (1.0 - u);
        const double tm = zi.t_max(z);
        const double t = v * tm;
        ++acc.inner;
        fk = t > 0.0 ? rho_hat(model.n, frak(1.0, z, model.bounds()), t) * tm * c / ((1.0 - u) * (1.0 - u))
                     : 0.0;
      }
      acc.value += area * 0.5 * (f[0] + f[1]);
      acc.error += area * area * 0.25 * (f[0] - f[1]) * (f[0] - f[1]);
    }
    return acc;
  });
  VolumeResult res = finish(model, R, opt, rows);
  double var = 0.0;
  for (const auto& r : rows) var += r.error;
  res.abs_error_estimate = 2.0 * sphere_area(model.n) * std::sqrt(var);
  return res;
}

}  // namespace

VolumeMethod parse_volume_method(const std::string& name) {
  if (name == "quadrature") return VolumeMethod::quadrature;
  if (name == "k-integral") return VolumeMethod::k_integral;
  if (name == "jacobi") return VolumeMethod::jacobi;
  if (name == "monte-carlo") return VolumeMethod::monte_carlo;
  throw InvalidArgument("unknown volume method '" + name +
                        "' (expected quadrature|k-integral|jacobi|monte-carlo)");
}

std::string to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::quadrature: return "quadrature";
    case VolumeMethod::k_integral: return "k-integral";
    case VolumeMethod::jacobi: return "jacobi";
    case VolumeMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

double sphere_area(int n) { return 2.0 * std::pow(kPi, n) / std::tgamma(static_cast<double>(n)); }

VolumeResult ball_volume(const ModelSpace& model, double R, const VolumeOptions& options) {
  validate(model);
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("ball_volume: R must be finite and > 0");
  if (options.cells < 1) throw InvalidArgument("ball_volume: cells must be >= 1");
  if (!(options.tol > 0.0)) throw InvalidArgument("ball_volume: tol must be > 0");
  switch (options.method) {
    case VolumeMethod::quadrature:
    case VolumeMethod::jacobi:
      return volume_tz(model, R, options);
    case VolumeMethod::k_integral:
      return volume_rw(model, R, options);
    case VolumeMethod::monte_carlo:
      if (options.samples < 2) throw InvalidArgument("ball_volume: samples must be >= 2");
      return volume_mc(model, R, options);
  }
  throw InvalidArgument("ball_volume: unknown method");
}

std::vector<BishopRow> bishop_check(const ModelSpace& model, ModelKind reference,
                                    const std::vector<double>& radii,
                                    const VolumeOptions& options, double tolerance) {
  validate(model);
  ModelSpace ref;
  if (reference == ModelKind::heisenberg) {
    ref = ModelSpace::heisenberg(model.n);
  } else if (reference == ModelKind::hopf) {
    ref = ModelSpace::hopf(model.n);
  } else {
    throw InvalidArgument("bishop_check: reference must be heisenberg or hopf");
  }
  if (model.k1 < ref.k1 || model.k2 < ref.k2) {
    std::ostringstream os;
    os << "bishop_check: hypothesis violated, (k1, k2) = (" << model.k1 << ", " << model.k2
       << ") is below the " << ref.name() << " reference (" << ref.k1 << ", " << ref.k2 << ")";
    throw InvalidArgument(os.str());
  }
  std::vector<BishopRow> rows;
  for (double R : radii) {
    BishopRow row;
    row.R = R;
    row.vol_model = ball_volume(model, R, options).value;
    row.vol_reference = ball_volume(ref, R, options).value;
    row.ratio = row.vol_model / row.vol_reference;
    row.ok = row.ratio <= 1.0 + tolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sasaki
