#pragma once

// Serialization of traced curves, SVG figures and swept surface meshes.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "weingarten/classify.hpp"
#include "weingarten/odetrace.hpp"

namespace weingarten {

enum class CurveFormat { CSV, JSON };

/// CSV: header `s,x,z,theta`, 17 significant digits, '\n' line endings.
/// JSON: object with keys spec, ic, samples ([s, x, z, theta] arrays), left_end, right_end.
/// Returns the number of bytes written. Throws EmptyCurve or IoError.
std::size_t write_curve(const GeneratingCurve& curve, CurveFormat format, std::ostream& sink);

/// Parses the CSV produced by write_curve back into samples.
std::vector<CurveState> read_curve_csv(std::istream& source);

std::string spec_json(const WeingartenSpec& spec);

/// Report plus verification outcome as one JSON document.
std::string classification_json(const WeingartenSpec& spec, double theta0, const ClassificationReport& report,
                                 const VerificationOutcome& outcome);

struct SvgStyle {
  std::string caption;
  std::vector<std::string> labels;  // one per curve, optional
  double width = 640.0;
  double stroke_width = 1.5;
};

/// One SVG 1.1 document: the ideal boundary z = 0 as a horizontal axis and
/// each curve as a polyline in the (x, z) plane with equal aspect. The view
/// box fits all curves padded by 10% and always includes the axis.
std::string render_svg(const std::vector<GeneratingCurve>& curves, const SvgStyle& style = {});

struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;  // row-major: index = row * cols + col
  std::vector<std::array<std::size_t, 4>> faces;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Samples X(s, t) = (x(s), t, z(s)) on the curve samples times a uniform t
/// grid over [-t_half_width, t_half_width].
SurfaceMesh sweep_mesh(const GeneratingCurve& curve, double t_half_width, std::size_t cols);

/// Text OBJ with `v` then `f` records, 1-based indices, 9 significant digits.
std::size_t write_obj(const SurfaceMesh& mesh, std::ostream& sink);

}  // namespace weingarten
