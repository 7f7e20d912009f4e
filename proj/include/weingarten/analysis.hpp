#pragma once

// Geometric measurements on traced generating curves.

#include <optional>
#include <vector>

#include "weingarten/odetrace.hpp"
#include "weingarten/params.hpp"

namespace weingarten {

/// k1 is the hyperbolic curvature of the generating curve; k2 = cos(theta).
struct PrincipalCurvaturePair {
  double kappa1;
  double kappa2;
  double gauss;  // kappa1 * kappa2 - 1
};

/// Uses the analytic theta' of the closure, never finite differences.
PrincipalCurvaturePair principal_curvatures(const WeingartenSpec& spec, const CurveState& state,
                                            double event_tol = 1e-10);

/// Max over samples of |k1 - m k2 - n| (linear) or |k1 k2 - 1 - K| (constant K).
/// Samples at a vertical tangent of a constant-K curve are skipped.
double weingarten_residual(const WeingartenSpec& spec, const GeneratingCurve& curve);

/// Max over samples of |sin^2(theta) - (K + sin^2(theta0)) z^2 + K|; with a
/// horizontal start this is the conserved quantity sin^2(theta) - K (z^2 - 1).
/// Throws UnsupportedSpec for anything but a constant-K curve.
double first_integral_residual(const GeneratingCurve& curve);

struct Extrema {
  std::vector<double> minima;
  std::vector<double> maxima;
};

/// Zeros of sin(theta), located by bisection on the interpolated curve and
/// classified by the sign of z'' = theta' cos(theta).
Extrema extrema(const GeneratingCurve& curve);

struct SelfIntersection {
  double x;
  double z;
  double s_first;
  double s_second;
};

/// Transverse crossings between non-adjacent polyline segments, ordered by s_first.
std::vector<SelfIntersection> self_intersections(const GeneratingCurve& curve);

enum class End { Left, Right };

/// Acute angle in [0, pi/2] between the curve and the ideal boundary at an
/// end that terminated in BoundaryContact, with theta extrapolated to z = 0.
/// Throws NoBoundaryContact.
double contact_angle(const GeneratingCurve& curve, End end);

struct PeriodMeasurement {
  double period;       // x-translation over one turn of theta
  double next_period;  // same over the following turn
  double arc_length;   // arc length of one turn
  double s_start;
};

/// Requires a periodic curve (LWPeriodic) carrying two full turns of theta;
/// throws NotPeriodic otherwise.
PeriodMeasurement measure_period(const GeneratingCurve& curve);

double period(const GeneratingCurve& curve);

/// log(z_max / z_min) over the trace.
double measured_height(const GeneratingCurve& curve);

/// Max distance between samples on one side of s0 and the mirror image of
/// their partners at the same arc-length offset on the other side.
/// Throws NotAnExtremum unless |sin(theta(s0))| <= event_tol.
double symmetry_deviation(const GeneratingCurve& curve, double s0);

/// Residual of the identity obtained by multiplying theta' z = (m-1) cos(theta) + n
/// by sin(theta) and integrating from the start:
///   n + cos(theta) = ((2 - m) I(s) + n + cos(theta0)) / z,  I = int_0^s sin cos.
/// Max over samples with s > 0.
double integral_identity_residual(const GeneratingCurve& curve, double m, double n);

/// Same for the identity obtained with cos(theta):
///   sin(theta) = (s + J(s) + sin(theta0)) / z,  J = int_0^s (n cos + (m-2) cos^2).
double second_integral_residual(const GeneratingCurve& curve, double m, double n);

enum class Convexity { Convex, Concave, Flat, Mixed };

const char* to_string(Convexity c) noexcept;

Convexity measured_convexity(const GeneratingCurve& curve);

/// x strictly monotone along the samples.
bool is_graph_over_boundary(const GeneratingCurve& curve);

struct FeatureSet {
  std::vector<double> minima;
  std::vector<double> maxima;
  std::vector<SelfIntersection> self_intersections;
  std::optional<double> contact_left;
  std::optional<double> contact_right;
  std::optional<double> period_x;
  std::optional<double> height;
  bool is_graph_over_boundary = false;
  double theta_min = 0.0;
  double theta_max = 0.0;
  Convexity convexity = Convexity::Flat;
};

FeatureSet measure_features(const GeneratingCurve& curve);

}  // namespace weingarten
