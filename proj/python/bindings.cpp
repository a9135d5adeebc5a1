#include "sasaki/acceptance.hpp"
#include "sasaki/comparison.hpp"
#include "sasaki/distance_field.hpp"
#include "sasaki/error.hpp"
#include "sasaki/geometry_core.hpp"
#include "sasaki/jacobi.hpp"
#include "sasaki/models.hpp"
#include "sasaki/volume.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace sasaki;

namespace {

Covector covector(const Vector& h, double z) {
  Covector p{h, z};
  validate(p);
  return p;
}

py::dict samples_to_dict(const std::vector<GeodesicSample>& samples) {
  const auto m = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index dim = samples.empty() ? 0 : samples.front().x.size();
  Vector t(m);
  Matrix x(m, dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    t[i] = samples[i].t;
    x.row(i) = samples[i].x.transpose();
  }
  py::dict out;
  out["t"] = t;
  out["x"] = x;
  return out;
}

ModelSpace make_model(const std::string& kind, int n, double k1, double k2) {
  ModelSpace m;
  switch (parse_model_kind(kind)) {
    case ModelKind::heisenberg: m = ModelSpace::heisenberg(n); break;
    case ModelKind::hopf: m = ModelSpace::hopf(n); break;
    case ModelKind::constant_curvature: m = ModelSpace::constant(n, k1, k2); break;
  }
  validate(m);
  return m;
}

}  // namespace

PYBIND11_MODULE(_sasaki, m) {
  m.doc() = "Comparison geometry on Sasakian model spaces";
  m.attr("__version__") = SASAKI_VERSION;

  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  py::class_<ModelSpace>(m, "ModelSpace")
      .def(py::init(&make_model), py::arg("kind"), py::arg("n") = 1, py::arg("k1") = 0.0,
           py::arg("k2") = 0.0)
      .def_readonly("n", &ModelSpace::n)
      .def_readonly("k1", &ModelSpace::k1)
      .def_readonly("k2", &ModelSpace::k2)
      .def_property_readonly("name", &ModelSpace::name)
      .def("__repr__", [](const ModelSpace& s) { return "ModelSpace(" + s.name() + ")"; });

  m.def("structural_constants", [](int n) {
    const auto sc = assemble_structural(n);
    return py::make_tuple(sc.c1, sc.c2);
  }, py::arg("n"));
  m.def("constant_curvature_matrix", [](int n, double f1, double f2) {
    return constant_curvature_matrix(n, f1, f2).assemble();
  }, py::arg("n"), py::arg("frak1"), py::arg("frak2"));

  m.def("frak", [](double r, double z, double k1, double k2) {
    const auto f = frak(r, z, {k1, k2, 1});
    return py::make_tuple(f.frak1, f.frak2);
  }, py::arg("r"), py::arg("z"), py::arg("k1"), py::arg("k2"));
  m.def("conjugate_bounds", [](double r, double z, double k1, double k2, int n) {
    return conjugate_bounds(r, z, {k1, k2, n});
  }, py::arg("r"), py::arg("z"), py::arg("k1"), py::arg("k2"), py::arg("n") = 1);
  m.def("trace_bound", [](double t, double f1, double f2, int n) {
    return trace_bound(t, {f1, f2}, n);
  }, py::arg("t"), py::arg("frak1"), py::arg("frak2"), py::arg("n"));
  m.def("laplace_h", [](double r, double z, double k1, double k2, int n, const std::string& form) {
    if (form != "trace" && form != "displayed") throw InvalidArgument("form must be trace or displayed");
    return laplace_h(r, z, {k1, k2, n}, form == "trace" ? HForm::trace : HForm::displayed);
  }, py::arg("r"), py::arg("z"), py::arg("k1"), py::arg("k2"), py::arg("n"),
        py::arg("form") = "trace");
  m.def("volume_k", [](double r, double z, double k1, double k2, int n) {
    return volume_k(r, z, {k1, k2, n});
  }, py::arg("r"), py::arg("z"), py::arg("k1"), py::arg("k2"), py::arg("n"));

  m.def("oracle_S", [](int n, double f1, double f2, double t) { return oracle_S(n, f1, f2, t).S; },
        py::arg("n"), py::arg("frak1"), py::arg("frak2"), py::arg("t"));
  m.def("expm_S", [](int n, double f1, double f2, double t) { return expm_S(n, f1, f2, t).S; },
        py::arg("n"), py::arg("frak1"), py::arg("frak2"), py::arg("t"));
  m.def("abs_det_b", &closed_form_abs_det_b, py::arg("n"), py::arg("frak1"), py::arg("frak2"),
        py::arg("t"));
  m.def("riccati", [](int n, double f1, double f2, const std::vector<double>& times, double rtol) {
    RiccatiOptions opts;
    opts.tol = {rtol, rtol};
    opts.output_times = times;
    const double T = times.empty() ? 1.0 : times.back();
    const auto res = integrate_riccati(n, constant_profile(constant_curvature_matrix(n, f1, f2)), T, opts);
    std::vector<Matrix> out;
    for (const auto& s : res.states) out.push_back(s.S);
    return py::make_tuple(out, res.blow_up_time);
  }, py::arg("n"), py::arg("frak1"), py::arg("frak2"), py::arg("times"), py::arg("tol") = 1e-10,
     "S(t) for constant curvature at sorted times in [1e-3, T]; also returns the blow-up time.");
  m.def("conjugate_time", [](int n, double f1, double f2, double T) {
    auto sol = integrate_jacobi(n, constant_profile(constant_curvature_matrix(n, f1, f2)), T,
                                JacobiOptions{{1e-12, 1e-12}, {}});
    return first_conjugate_time(sol);
  }, py::arg("n"), py::arg("frak1"), py::arg("frak2"), py::arg("T"),
     "First zero of det B on [0, T] for constant curvature, or None.");

  m.def("heisenberg_geodesic", [](const Vector& h, double z, double T, int steps) {
    return samples_to_dict(heisenberg_geodesic(covector(h, z), T, steps));
  }, py::arg("h"), py::arg("z"), py::arg("T"), py::arg("steps") = 100);
  m.def("hopf_geodesic", [](const Vector& h, double z, double T, int steps) {
    return samples_to_dict(hopf_geodesic(covector(h, z), T, steps));
  }, py::arg("h"), py::arg("z"), py::arg("T"), py::arg("steps") = 100);
  m.def("cut_time", [](const ModelSpace& model, const Vector& h, double z) {
    return cut_time(model, covector(h, z));
  }, py::arg("model"), py::arg("h"), py::arg("z"));
  m.def("heisenberg_distance", &heisenberg_distance, py::arg("q"));

  m.def("ball_volume", [](const ModelSpace& model, double R, const std::string& method, double tol,
                          long samples, std::uint64_t seed) {
    VolumeOptions opts;
    opts.method = parse_volume_method(method);
    opts.tol = tol;
    opts.samples = samples;
    opts.seed = seed;
    const auto r = ball_volume(model, R, opts);
    return py::make_tuple(r.value, r.abs_error_estimate);
  }, py::arg("model"), py::arg("R"), py::arg("method") = "quadrature", py::arg("tol") = 1e-10,
     py::arg("samples") = 40000, py::arg("seed") = 1);
  m.def("bishop_ratios", [](const ModelSpace& model, const std::string& reference,
                            const std::vector<double>& radii) {
    std::vector<double> out;
    for (const auto& row : bishop_check(model, parse_model_kind(reference), radii)) out.push_back(row.ratio);
    return out;
  }, py::arg("model"), py::arg("reference"), py::arg("radii"));

  m.def("laplacian_sample", [](const Vector& x) {
    const auto s = laplacian_sample(x);
    py::dict d;
    d["d"] = s.d;
    d["v0d"] = s.v0d;
    d["lapH"] = s.lapH;
    d["bound"] = s.bound;
    d["margin"] = s.margin;
    d["grad_norm"] = s.grad_norm;
    return d;
  }, py::arg("x"));
  m.def("laplacian_margins", [](int n, int samples, std::uint64_t seed) {
    std::vector<double> out;
    for (const auto& s : verify_laplacian_comparison(ModelSpace::heisenberg(n), samples, seed))
      out.push_back(s.margin);
    return out;
  }, py::arg("n"), py::arg("samples"), py::arg("seed") = 42);

  m.def("run_acceptance", [](const std::string& suite) {
    std::vector<acceptance::CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = acceptance::run(acceptance::parse_suite(suite));
    }
    std::vector<py::dict> out;
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      out.push_back(d);
    }
    return out;
  }, py::arg("suite") = "all");
}
