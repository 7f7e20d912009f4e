#include "weingarten/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "weingarten/error.hpp"

namespace weingarten {

namespace {

using nlohmann::json;

std::string num(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::size_t put(std::ostream& sink, const std::string& text) {
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!sink) throw Error(ErrorCode::IoError, "failed writing to sink");
  return text.size();
}

json spec_to_json(const WeingartenSpec& spec) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussConstant>) {
          return {{"kind", "GaussConstant"}, {"K", v.K}};
        } else if constexpr (std::is_same_v<T, LinearPrincipal>) {
          return {{"kind", "LinearPrincipal"}, {"m", v.m}, {"n", v.n}, {"orientation_flipped", v.orientation_flipped}};
        } else if constexpr (std::is_same_v<T, Kappa1Constant>) {
          return {{"kind", "Kappa1Constant"}, {"c1", v.c1}};
        } else {
          return {{"kind", "Kappa2Constant"}, {"c2", v.c2}};
        }
      },
      spec);
}

json end_to_json(const TerminationReason& reason) {
  json j = {{"kind", termination_name(reason)}};
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoundaryContact>) {
          j["z_final"] = v.z_final;
          j["theta_final"] = v.theta_final;
        } else if constexpr (std::is_same_v<T, VerticalTangent>) {
          j["s"] = v.s;
        } else if constexpr (std::is_same_v<T, SymmetryPoint>) {
          j["s"] = v.s;
          j["theta"] = v.theta;
        }
      },
      reason);
  return j;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::size_t write_curve(const GeneratingCurve& curve, CurveFormat format, std::ostream& sink) {
  if (curve.empty()) throw Error(ErrorCode::EmptyCurve, "nothing to write");
  if (format == CurveFormat::CSV) {
    std::string text = "s,x,z,theta\n";
    text.reserve(curve.samples.size() * 96);
    for (const CurveState& st : curve.samples) {
      text += num("%.17g", st.s) + ',' + num("%.17g", st.x) + ',' + num("%.17g", st.z) + ',' +
              num("%.17g", st.theta) + '\n';
    }
    return put(sink, text);
  }

  json samples = json::array();
  for (const CurveState& st : curve.samples) samples.push_back({st.s, st.x, st.z, st.theta});
  const json doc = {
      {"spec", spec_to_json(curve.spec)},
      {"ic", {{"x0", curve.ic.x0}, {"z0", curve.ic.z0}, {"theta0", curve.ic.theta0}}},
      {"samples", std::move(samples)},
      {"left_end", end_to_json(curve.left_end)},
      {"right_end", end_to_json(curve.right_end)},
  };
  return put(sink, doc.dump() + '\n');
}

std::vector<CurveState> read_curve_csv(std::istream& source) {
  std::vector<CurveState> out;
  std::string line;
  if (!std::getline(source, line) || line != "s,x,z,theta") {
    throw Error(ErrorCode::InvalidArgument, "missing CSV header s,x,z,theta");
  }
  while (std::getline(source, line)) {
    if (line.empty()) continue;
    CurveState st;
    char* end = nullptr;
    const char* p = line.c_str();
    double* fields[] = {&st.s, &st.x, &st.z, &st.theta};
    for (int k = 0; k < 4; ++k) {
      *fields[k] = std::strtod(p, &end);
      if (end == p || (k < 3 && *end != ',')) throw Error(ErrorCode::InvalidArgument, "malformed CSV row: " + line);
      p = end + 1;
    }
    out.push_back(st);
  }
  return out;
}

std::string spec_json(const WeingartenSpec& spec) { return spec_to_json(spec).dump(); }

std::string classification_json(const WeingartenSpec& spec, double theta0, const ClassificationReport& report,
                                const VerificationOutcome& outcome) {
  const PredictedFeatures& p = report.predicted;
  const QuantitativePrediction& q = report.quantitative;
  json mismatches = json::array();
  for (const Mismatch& m : outcome.mismatches) {
    mismatches.push_back({{"feature", m.feature}, {"predicted", m.predicted}, {"measured", m.measured}});
  }
  json residuals = json::object();
  for (const auto& [name, value] : outcome.residual_summary) residuals[name] = value;
  const json doc = {
      {"spec", spec_to_json(spec)},
      {"theta0", theta0},
      {"regime", to_string(report.regime)},
      {"theorem_backed", report.theorem_backed},
      {"surface", report.surface},
      {"predicted",
       {{"is_graph", p.is_graph},
        {"convexity", to_string(p.convexity)},
        {"num_minima", p.num_minima},
        {"num_maxima", p.num_maxima},
        {"has_self_intersections", p.has_self_intersections},
        {"periodic", p.periodic},
        {"complete_proxy", p.complete_proxy},
        {"asymptotic_to_boundary", p.asymptotic_to_boundary}}},
      {"quantitative",
       {{"height", optional_json(q.height)},
        {"height_printed", optional_json(q.height_printed)},
        {"contact_angle", optional_json(q.contact_angle)},
        {"boundary_angle", optional_json(q.boundary_angle)}}},
      {"verification",
       {{"passed", outcome.passed},
        {"mismatches", std::move(mismatches)},
        {"residual_summary", std::move(residuals)},
        {"notes", outcome.notes}}},
  };
  return doc.dump(2) + '\n';
}

std::string render_svg(const std::vector<GeneratingCurve>& curves, const SvgStyle& style) {
  for (const GeneratingCurve& c : curves) {
    if (c.empty()) throw Error(ErrorCode::EmptyCurve, "cannot render an empty curve");
  }
  double xmin = 0.0, xmax = 0.0, zmax = 0.0;
  bool first = true;
  for (const GeneratingCurve& c : curves) {
    for (const CurveState& st : c.samples) {
      if (first) {
        xmin = xmax = st.x;
        first = false;
      }
      xmin = std::min(xmin, st.x);
      xmax = std::max(xmax, st.x);
      zmax = std::max(zmax, st.z);
    }
  }
  if (curves.empty()) {
    xmin = -1.0;
    xmax = 1.0;
    zmax = 1.0;
  }
  const double zmin = 0.0;  // the axis is always in view
  double xr = xmax - xmin;
  double zr = zmax - zmin;
  if (xr <= 0.0) xr = std::max(zr, 1.0);
  if (zr <= 0.0) zr = std::max(xr, 1.0);
  const double pad = 0.1;
  const double vx0 = xmin - pad * xr;
  const double vz1 = zmax + pad * zr;
  const double span_x = xr * (1.0 + 2.0 * pad);
  const double span_z = zr * (1.0 + 2.0 * pad);
  const double scale = style.width / span_x;
  const double height = span_z * scale;
  const double caption_band = style.caption.empty() ? 0.0 : 28.0;

  auto px = [&](double x) { return (x - vx0) * scale; };
  auto pz = [&](double z) { return (vz1 - z) * scale; };

  static const char* palette[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#2c3e50"};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num("%.2f", style.width)
     << "\" height=\"" << num("%.2f", height + caption_band) << "\" viewBox=\"0 0 " << num("%.2f", style.width) << ' '
     << num("%.2f", height + caption_band) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double axis_y = pz(0.0);
  os << "<line id=\"ideal-boundary\" x1=\"0\" y1=\"" << num("%.3f", axis_y) << "\" x2=\"" << num("%.3f", style.width)
     << "\" y2=\"" << num("%.3f", axis_y) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<text x=\"4\" y=\"" << num("%.3f", axis_y - 4.0) << "\" font-family=\"sans-serif\" font-size=\"11\">z = 0</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = palette[k % (sizeof palette / sizeof *palette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num("%.2f", style.stroke_width)
       << "\" points=\"";
    bool sep = false;
    for (const CurveState& st : curves[k].samples) {
      if (sep) os << ' ';
      os << num("%.3f", px(st.x)) << ',' << num("%.3f", pz(st.z));
      sep = true;
    }
    os << "\"/>\n";
    if (k < style.labels.size() && !style.labels[k].empty()) {
      os << "<text x=\"8\" y=\"" << num("%.2f", 16.0 + 14.0 * static_cast<double>(k))
         << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << xml_escape(style.labels[k])
         << "</text>\n";
    }
  }
  if (!style.caption.empty()) {
    os << "<text x=\"" << num("%.2f", style.width / 2.0) << "\" y=\"" << num("%.2f", height + 18.0)
       << "\" text-anchor=\"middle\" font-family=\"serif\" font-size=\"13\">" << xml_escape(style.caption) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

SurfaceMesh sweep_mesh(const GeneratingCurve& curve, double t_half_width, std::size_t cols) {
  if (curve.empty()) throw Error(ErrorCode::EmptyCurve, "cannot sweep an empty curve");
  if (cols < 2 || !(t_half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "need cols >= 2 and t_half_width > 0");
  SurfaceMesh mesh;
  mesh.rows = curve.samples.size();
  mesh.cols = cols;
  mesh.vertices.reserve(mesh.rows * cols);
  for (const CurveState& st : curve.samples) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double t = -t_half_width + 2.0 * t_half_width * static_cast<double>(j) / static_cast<double>(cols - 1);
      mesh.vertices.push_back({st.x, t, st.z});
    }
  }
  mesh.faces.reserve((mesh.rows > 0 ? mesh.rows - 1 : 0) * (cols - 1));
  for (std::size_t i = 0; i + 1 < mesh.rows; ++i) {
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const std::size_t a = i * cols + j;
      mesh.faces.push_back({a, a + cols, a + cols + 1, a + 1});
    }
  }
  return mesh;
}

std::size_t write_obj(const SurfaceMesh& mesh, std::ostream& sink) {
  std::string text;
  text.reserve(mesh.vertices.size() * 40 + mesh.faces.size() * 32);
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
    text += buf;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(buf, sizeof buf, "f %zu %zu %zu %zu\n", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
    text += buf;
  }
  return put(sink, text);
}

}  // namespace weingarten
