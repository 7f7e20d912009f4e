#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "weingarten/analysis.hpp"
#include "weingarten/classify.hpp"
#include "weingarten/closedform.hpp"
#include "weingarten/emit.hpp"
#include "weingarten/error.hpp"
#include "weingarten/suite.hpp"

namespace py = pybind11;
using namespace weingarten;

namespace {

py::array_t<double> samples_array(const GeneratingCurve& c) {
  py::array_t<double> out({static_cast<py::ssize_t>(c.samples.size()), py::ssize_t{4}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    const CurveState& st = c.samples[i];
    view(i, 0) = st.s;
    view(i, 1) = st.x;
    view(i, 2) = st.z;
    view(i, 3) = st.theta;
  }
  return out;
}

py::dict end_dict(const TerminationReason& r) {
  py::dict d;
  d["kind"] = termination_name(r);
  std::visit(
      [&d](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoundaryContact>) {
          d["z_final"] = v.z_final;
          d["theta_final"] = v.theta_final;
        } else if constexpr (std::is_same_v<T, VerticalTangent>) {
          d["s"] = v.s;
        } else if constexpr (std::is_same_v<T, SymmetryPoint>) {
          d["s"] = v.s;
          d["theta"] = v.theta;
        }
      },
      r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_weingarten, mod) {
  mod.doc() = "Rotational Weingarten surfaces of parabolic type in hyperbolic space";

  // Messages start with the error code name, e.g. "OutOfDomain: ...".
  py::register_exception<Error>(mod, "WeingartenError", PyExc_ValueError);

  py::class_<GaussConstant>(mod, "GaussConstant")
      .def(py::init<double>(), py::arg("K"))
      .def_readwrite("K", &GaussConstant::K)
      .def("__repr__", [](const GaussConstant& g) { return describe(g); });
  py::class_<LinearPrincipal>(mod, "LinearPrincipal")
      .def(py::init([](double m, double n, bool flipped) { return LinearPrincipal{m, n, flipped}; }), py::arg("m"),
           py::arg("n"), py::arg("orientation_flipped") = false)
      .def_readwrite("m", &LinearPrincipal::m)
      .def_readwrite("n", &LinearPrincipal::n)
      .def_readwrite("orientation_flipped", &LinearPrincipal::orientation_flipped)
      .def("__repr__", [](const LinearPrincipal& l) { return describe(l); });
  py::class_<Kappa1Constant>(mod, "Kappa1Constant").def_readonly("c1", &Kappa1Constant::c1);
  py::class_<Kappa2Constant>(mod, "Kappa2Constant").def_readonly("c2", &Kappa2Constant::c2);

  mod.def("spec_from_linear", &spec_from_linear, py::arg("a"), py::arg("b"), py::arg("c"));
  mod.def("regime_of", [](const WeingartenSpec& s, double t) { return std::string(to_string(regime_of(s, t))); },
          py::arg("spec"), py::arg("theta0") = 0.0);
  mod.def("normalize_angle", &normalize_angle);

  py::class_<TraceOptions>(mod, "TraceOptions")
      .def(py::init<>())
      .def_readwrite("s_max", &TraceOptions::s_max)
      .def_readwrite("z_floor", &TraceOptions::z_floor)
      .def_readwrite("rel_tol", &TraceOptions::rel_tol)
      .def_readwrite("abs_tol", &TraceOptions::abs_tol)
      .def_readwrite("max_step", &TraceOptions::max_step)
      .def_readwrite("event_tol", &TraceOptions::event_tol)
      .def_readwrite("max_turn", &TraceOptions::max_turn)
      .def_readwrite("stop_at_symmetry", &TraceOptions::stop_at_symmetry);

  py::class_<GeneratingCurve>(mod, "GeneratingCurve")
      .def_property_readonly("samples", &samples_array)
      .def_property_readonly("left_end", [](const GeneratingCurve& c) { return end_dict(c.left_end); })
      .def_property_readonly("right_end", [](const GeneratingCurve& c) { return end_dict(c.right_end); })
      .def_property_readonly("theta0", [](const GeneratingCurve& c) { return c.ic.theta0; })
      .def("__len__", [](const GeneratingCurve& c) { return c.samples.size(); })
      .def("to_csv", [](const GeneratingCurve& c) {
        std::ostringstream os;
        write_curve(c, CurveFormat::CSV, os);
        return os.str();
      })
      .def("to_json", [](const GeneratingCurve& c) {
        std::ostringstream os;
        write_curve(c, CurveFormat::JSON, os);
        return os.str();
      });

  mod.def("trace",
          [](const WeingartenSpec& spec, double theta0, const TraceOptions& opts) {
            py::gil_scoped_release release;
            return trace(spec, InitialConditions::with_angle(theta0), opts);
          },
          py::arg("spec"), py::arg("theta0") = 0.0, py::arg("options") = TraceOptions{});

  mod.def("weingarten_residual", &weingarten_residual);
  mod.def("extrema", [](const GeneratingCurve& c) {
    const Extrema e = extrema(c);
    return py::dict(py::arg("minima") = e.minima, py::arg("maxima") = e.maxima);
  });
  mod.def("self_intersections", [](const GeneratingCurve& c) {
    py::list out;
    for (const SelfIntersection& si : self_intersections(c)) out.append(py::make_tuple(si.x, si.z, si.s_first, si.s_second));
    return out;
  });
  mod.def("contact_angle", [](const GeneratingCurve& c, const std::string& end) {
    return contact_angle(c, end == "left" ? End::Left : End::Right);
  }, py::arg("curve"), py::arg("end") = "right");
  mod.def("period", &period);
  mod.def("measured_height", &measured_height);
  mod.def("symmetry_deviation", &symmetry_deviation);
  mod.def("integral_identity_residual", &integral_identity_residual);

  mod.def("classify", [](const WeingartenSpec& spec, double theta0) {
    const ClassificationReport report = predict(spec, theta0);
    GeneratingCurve curve;
    {
      py::gil_scoped_release release;
      curve = trace(spec, InitialConditions::with_angle(theta0));
    }
    const VerificationOutcome outcome = verify(spec, curve, report);
    return py::module_::import("json").attr("loads")(classification_json(spec, theta0, report, outcome));
  }, py::arg("spec"), py::arg("theta0") = 0.0);

  mod.def("render_svg", [](const std::vector<GeneratingCurve>& curves, const std::string& caption) {
    SvgStyle style;
    style.caption = caption;
    return render_svg(curves, style);
  }, py::arg("curves"), py::arg("caption") = "");
  mod.def("mesh_obj", [](const GeneratingCurve& c, double t_half_width, std::size_t cols) {
    std::ostringstream os;
    write_obj(sweep_mesh(c, t_half_width, cols), os);
    return os.str();
  });

  auto cf = mod.def_submodule("closedform");
  cf.def("z_exact", &closedform::z_exact);
  cf.def("x_exact", &closedform::x_exact);
  cf.def("domain_half_width", &closedform::domain_half_width);
  cf.def("boundary_angle", &closedform::boundary_angle);
  cf.def("height", [](double K) {
    const closedform::Height h = closedform::height_exact(K);
    return py::dict(py::arg("printed_formula") = h.printed_formula, py::arg("log_ratio") = h.log_ratio);
  });

  mod.def("write_figures", [](const std::filesystem::path& dir) {
    py::gil_scoped_release release;
    const suite::FigureRun run = suite::write_figures(dir);
    std::vector<std::string> paths;
    for (const auto& p : run.written) paths.push_back(p.string());
    return std::make_pair(paths, run.all_passed);
  });
  mod.def("run_acceptance", [](const std::filesystem::path& dir) {
    std::vector<suite::CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = suite::run_acceptance(dir);
    }
    py::list out;
    for (const auto& r : results) {
      out.append(py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("passed") = r.passed,
                          py::arg("detail") = r.detail));
    }
    return out;
  });
}
