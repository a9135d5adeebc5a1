#include "cli.hpp"

#include "sasaki/acceptance.hpp"
#include "sasaki/comparison.hpp"
#include "sasaki/distance_field.hpp"
#include "sasaki/error.hpp"
#include "sasaki/jacobi.hpp"
#include "sasaki/models.hpp"
#include "sasaki/volume.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace sasaki::cli {
namespace {

constexpr double kViolationTol = 1e-4;
constexpr double kConjugateRelTol = 1e-8;

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunConfig {
  std::string command;
  std::string model = "heisenberg";
  int n = 1;
  std::optional<double> k1;
  std::optional<double> k2;
  std::string dir;
  std::string z;
  std::string R = "1";
  std::optional<double> T;
  int steps = 100;
  std::optional<int> samples;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
  std::string reference = "none";
  std::string method = "quadrature";
  std::string suite = "all";
  std::string h_form = "trace";
  std::string config;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  else return std::to_string(*v);
}

std::vector<std::pair<std::string, std::string>> resolved(const RunConfig& c) {
  return {{"command", c.command},     {"model", c.model},         {"n", std::to_string(c.n)},
          {"k1", opt_str(c.k1)},      {"k2", opt_str(c.k2)},      {"dir", c.dir},
          {"z", c.z},                 {"R", c.R},                 {"T", opt_str(c.T)},
          {"steps", std::to_string(c.steps)},                     {"samples", opt_str(c.samples)},
          {"seed", std::to_string(c.seed)},                       {"tol", opt_str(c.tol)},
          {"format", c.format},       {"reference", c.reference}, {"method", c.method},
          {"suite", c.suite},         {"h-form", c.h_form}};
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size() || !std::isfinite(v)) {
      throw InvalidArgument("flag --" + flag + ": cannot parse '" + item + "' as a finite number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("flag --" + flag + ": empty list");
  return out;
}

void require(bool given, const std::string& flag, const std::string& command) {
  if (!given) throw InvalidArgument(command + ": missing required flag --" + flag);
}

ModelSpace build_model(const RunConfig& c) {
  if (c.n < 1) throw InvalidArgument("flag --n: must be >= 1");
  switch (parse_model_kind(c.model)) {
    case ModelKind::heisenberg: {
      auto m = ModelSpace::heisenberg(c.n);
      if (c.k1) m.k1 = *c.k1;
      if (c.k2) m.k2 = *c.k2;
      validate(m);
      return m;
    }
    case ModelKind::hopf: {
      auto m = ModelSpace::hopf(c.n);
      if (c.k1) m.k1 = *c.k1;
      if (c.k2) m.k2 = *c.k2;
      validate(m);
      return m;
    }
    case ModelKind::constant_curvature: {
      auto m = ModelSpace::constant(c.n, c.k1.value_or(0.0), c.k2.value_or(0.0));
      validate(m);
      return m;
    }
  }
  throw InvalidArgument("unknown model");
}

// Returns the exit code of the command (0 or 1) and fills the table.
int cmd_geodesic(const RunConfig& c, Table& t) {
  const ModelSpace model = build_model(c);
  require(!c.dir.empty(), "dir", "geodesic");
  require(!c.z.empty(), "z", "geodesic");
  require(c.T.has_value(), "T", "geodesic");
  const auto dir_list = parse_list(c.dir, "dir");
  const auto zs = parse_list(c.z, "z");
  if (zs.size() != 1) throw InvalidArgument("geodesic: flag --z takes a single value");
  if (static_cast<int>(dir_list.size()) != 2 * model.n) {
    throw InvalidArgument("geodesic: flag --dir needs 2n = " + std::to_string(2 * model.n) + " components");
  }
  const Covector p = unit_covector(Eigen::Map<const Vector>(dir_list.data(), dir_list.size()), zs[0]);
  const int n = model.n;
  t.columns = {"t"};
  if (model.kind == ModelKind::heisenberg) {
    for (int j = 1; j <= n; ++j) {
      t.columns.push_back("x" + std::to_string(j));
      t.columns.push_back("y" + std::to_string(j));
    }
    t.columns.push_back("z");
    for (int j = 1; j <= n; ++j) {
      t.columns.push_back("px" + std::to_string(j));
      t.columns.push_back("py" + std::to_string(j));
    }
    t.columns.push_back("pz");
    for (const auto& s : heisenberg_geodesic(p, *c.T, c.steps)) {
      std::vector<Cell> row{s.t};
      for (double v : s.x) row.emplace_back(v);
      for (double v : s.p->h) row.emplace_back(v);
      row.emplace_back(s.p->z);
      t.rows.push_back(std::move(row));
    }
    return 0;
  }
  if (model.kind == ModelKind::hopf) {
    for (int j = 1; j <= n + 1; ++j) {
      t.columns.push_back("re" + std::to_string(j));
      t.columns.push_back("im" + std::to_string(j));
    }
    t.columns.push_back("norm");
    for (const auto& s : hopf_geodesic(p, *c.T, c.steps)) {
      std::vector<Cell> row{s.t};
      for (double v : s.x) row.emplace_back(v);
      row.emplace_back(s.x.norm());
      t.rows.push_back(std::move(row));
    }
    return 0;
  }
  throw InvalidArgument("geodesic: the constant model has no closed-form geodesics");
}

int cmd_conjugate(const RunConfig& c, Table& t) {
  const ModelSpace model = build_model(c);
  const auto zs = parse_list(c.z.empty() ? "0" : c.z, "z");
  JacobiOptions jo;
  const double tol = c.tol.value_or(1e-12);
  jo.tol = {tol, tol};
  t.columns = {"r", "z", "t_conj_numeric", "bound1", "bound2", "min_bound", "equal"};
  int code = 0;
  for (double z : zs) {
    const auto [b1, b2] = conjugate_bounds(1.0, z, model.bounds());
    const double mb = conjugate_time_bound(1.0, z, model.bounds());
    const double horizon = c.T ? *c.T : (std::isfinite(mb) ? 1.5 * mb : 20.0);
    const FrakPair fk = frak(1.0, z, model.bounds());
    auto sol = integrate_jacobi(model.n, constant_profile(constant_curvature_matrix(model.n, fk.frak1, fk.frak2)),
                                horizon, jo);
    const auto tc = first_conjugate_time(sol);
    bool equal;
    if (std::isfinite(mb) && mb <= horizon) {
      equal = tc && std::abs(*tc - mb) <= kConjugateRelTol * mb;
    } else {
      equal = !tc;
    }
    if (!equal) code = 1;
    t.rows.push_back({1.0, z, tc ? Cell{*tc} : Cell{}, b1, b2, mb, equal});
  }
  return code;
}

int cmd_volume(const RunConfig& c, Table& t) {
  const ModelSpace model = build_model(c);
  const auto radii = parse_list(c.R, "R");
  VolumeOptions vo;
  vo.method = parse_volume_method(c.method);
  if (c.tol) vo.tol = *c.tol;
  if (c.samples) vo.samples = *c.samples;
  vo.seed = c.seed;
  if (c.reference == "none") {
    t.columns = {"R", "volume", "abs_error", "outer_nodes", "inner_nodes"};
    for (double R : radii) {
      const auto res = ball_volume(model, R, vo);
      t.rows.push_back({R, res.value, res.abs_error_estimate, static_cast<long long>(res.node_counts.outer),
                        static_cast<long long>(res.node_counts.inner)});
    }
    return 0;
  }
  const ModelKind ref = parse_model_kind(c.reference);
  t.columns = {"R", "volume", "reference_volume", "ratio", "ok"};
  int code = 0;
  for (const auto& row : bishop_check(model, ref, radii, vo)) {
    if (!row.ok) code = 1;
    t.rows.push_back({row.R, row.vol_model, row.vol_reference, row.ratio, row.ok});
  }
  return code;
}

int cmd_laplacian(const RunConfig& c, Table& t) {
  const ModelSpace model = build_model(c);
  LaplacianOptions lo;
  if (c.h_form == "trace") {
    lo.form = HForm::trace;
  } else if (c.h_form == "displayed") {
    lo.form = HForm::displayed;
  } else {
    throw InvalidArgument("flag --h-form: expected trace|displayed, got '" + c.h_form + "'");
  }
  const auto samples = verify_laplacian_comparison(model, c.samples.value_or(200), c.seed, lo);
  t.columns = {"i"};
  for (int j = 1; j <= model.n; ++j) {
    t.columns.push_back("x" + std::to_string(j));
    t.columns.push_back("y" + std::to_string(j));
  }
  for (const char* col : {"z", "d", "v0d", "lapH", "bound", "bound_displayed", "margin", "grad_norm"}) {
    t.columns.emplace_back(col);
  }
  int code = 0;
  long long i = 0;
  for (const auto& s : samples) {
    std::vector<Cell> row{i++};
    for (double v : s.x) row.emplace_back(v);
    for (double v : {s.d, s.v0d, s.lapH, s.bound, s.bound_displayed, s.margin, s.grad_norm}) row.emplace_back(v);
    if (s.margin < -kViolationTol) code = 1;
    t.rows.push_back(std::move(row));
  }
  return code;
}

int cmd_verify(const RunConfig& c, Table& t) {
  t.columns = {"criterion", "name", "passed", "detail"};
  int code = 0;
  for (int id : acceptance::parse_suite(c.suite)) {
    const auto r = acceptance::run_criterion(id);
    if (!r.passed) code = 1;
    t.rows.push_back({static_cast<long long>(r.id), r.name, r.passed, r.detail});
  }
  return code;
}

std::string csv_cell(const Cell& cell) {
  struct V {
    std::string operator()(std::monostate) const { return "none"; }
    std::string operator()(double v) const { return num(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  };
  return std::visit(V{}, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct V {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(num(v));
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(V{}, cell);
}

void write_table(const RunConfig& c, const Table& t, std::ostream& os) {
  const std::string version = std::string("sasaki ") + SASAKI_VERSION;
  if (c.format == "json") {
    nlohmann::ordered_json doc;
    doc["meta"]["version"] = version;
    for (const auto& [k, v] : resolved(c)) doc["meta"][k] = v;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
      doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(1) << "\n";
    return;
  }
  os << "# " << version << "\n";
  for (const auto& [k, v] : resolved(c)) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
}

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  nlohmann::ordered_json e;
  e["error"] = kind;
  e["message"] = message;
  err << e.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sub-Riemannian comparison geometry on Sasakian model spaces", "sasaki"};
  app.set_version_flag("--version", std::string("sasaki ") + SASAKI_VERSION);
  app.set_config("--config", "", "Flat key=value file; command-line flags override it")
      ->each([&](const std::string& path) { cfg.config = path; });
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  app.add_option("--model", cfg.model, "heisenberg | hopf | constant")->capture_default_str();
  app.add_option("--n", cfg.n, "Complex dimension n (manifold dimension 2n+1)")->capture_default_str();
  app.add_option("--k1", cfg.k1, "Curvature constant k1 (constant model; fixed for named models)");
  app.add_option("--k2", cfg.k2, "Curvature constant k2 (constant model; fixed for named models)");
  app.add_option("--dir", cfg.dir, "Horizontal direction, 2n comma-separated components");
  app.add_option("--z", cfg.z, "Reeb component p(v0); conjugate accepts a comma-separated list");
  app.add_option("--R", cfg.R, "Ball radius or comma-separated radii")->capture_default_str();
  app.add_option("--T", cfg.T, "Time horizon");
  app.add_option("--steps", cfg.steps, "Number of geodesic samples")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Laplacian sample count (default 200) or Monte Carlo points");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Integrator or quadrature tolerance");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default standard output)");
  app.add_option("--reference", cfg.reference, "Bishop reference: none | heisenberg | hopf")->capture_default_str();
  app.add_option("--method", cfg.method, "Volume method: quadrature | k-integral | jacobi | monte-carlo")
      ->capture_default_str();
  app.add_option("--suite", cfg.suite,
                 "Acceptance criteria: all, 1-8 or riccati, detb, conjugate, geodesics, cut, bishop, laplacian, "
                 "comparison (comma-separated)")
      ->capture_default_str();
  app.add_option("--h-form", cfg.h_form, "Laplacian bound form: trace | displayed")->capture_default_str();

  struct Sub {
    const char* name;
    const char* help;
    const char* columns;
    int (*fn)(const RunConfig&, Table&);
  };
  const Sub subs[] = {
      {"geodesic", "Closed-form geodesic from the base point (needs --dir, --z, --T)",
       "heisenberg: t,x1,y1,...,z,px1,py1,...,pz; hopf: t,re1,im1,...,re(n+1),im(n+1),norm", cmd_geodesic},
      {"conjugate", "First conjugate time from the Jacobi system against the comparison bounds",
       "r,z,t_conj_numeric,bound1,bound2,min_bound,equal", cmd_conjugate},
      {"volume", "Sub-Riemannian ball volumes, optionally against a Bishop reference",
       "R,volume,abs_error,outer_nodes,inner_nodes; with --reference: R,volume,reference_volume,ratio,ok",
       cmd_volume},
      {"laplacian", "Sub-Laplacian of the Heisenberg distance against the comparison function h",
       "i,x1,y1,...,z,d,v0d,lapH,bound,bound_displayed,margin,grad_norm", cmd_laplacian},
      {"verify", "Run acceptance criteria", "criterion,name,passed,detail", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->footer(std::string("CSV columns: ") + s.columns);
    registered.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    return 2;
  }

  try {
    const Sub* chosen = nullptr;
    for (const auto& [sub, s] : registered) {
      if (sub->parsed()) chosen = s;
    }
    cfg.command = chosen->name;
    Table table;
    const int code = chosen->fn(cfg, table);
    if (cfg.out.empty()) {
      write_table(cfg, table, out);
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InvalidArgument("cannot open output file '" + cfg.out + "'");
      write_table(cfg, table, file);
    }
    return code;
  } catch (const Error& e) {
    const bool usage = e.kind() == ErrorKind::invalid_argument;
    report(err, usage ? "usage" : "numerical", e.what());
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return 1;
  }
}

}  // namespace sasaki::cli
