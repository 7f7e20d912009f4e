#pragma once

// Arc-length integration of the generating curve alpha(s) = (x(s), 0, z(s)):
//
//   x' = cos(theta),  z' = sin(theta),  theta' = F(z, theta)
//
// with F = ((m - 1) cos(theta) + n) / z for k1 = m k2 + n and
// F = (K + sin^2(theta)) / (z cos(theta)) for constant Gauss curvature K.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "weingarten/params.hpp"

namespace weingarten {

/// theta is unwrapped: it is continuous along a trace and never reduced mod 2*pi.
struct CurveState {
  double s = 0.0;
  double x = 0.0;
  double z = 1.0;
  double theta = 0.0;
};

struct BoundaryContact {
  double z_final;
  double theta_final;
};

struct VerticalTangent {
  double s;
};

struct SymmetryPoint {
  double s;
  double theta;
};

struct MaxArcLength {};

struct StepUnderflow {};

using TerminationReason =
    std::variant<BoundaryContact, VerticalTangent, SymmetryPoint, MaxArcLength, StepUnderflow>;

const char* termination_name(const TerminationReason& reason) noexcept;

enum class Integrator {
  DormandPrince,  // adaptive 5(4) pair
  FixedRK4,       // classic RK4 with constant step, for reproducibility checks
};

struct TraceOptions {
  double s_max = 50.0;
  double z_floor = 1e-6;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1e-2;
  double event_tol = 1e-10;
  // Largest change of theta between adjacent samples. Keeps chord length
  // within 1e-6 of arc length.
  double max_turn = 4e-3;
  Integrator integrator = Integrator::DormandPrince;
  double fixed_step = 1e-3;
  // Terminate each direction at its first zero of sin(theta) away from s = 0.
  bool stop_at_symmetry = false;

  /// Throws InvalidArgument unless every tolerance is positive and z_floor < 1.
  void validate() const;
};

struct Derivative {
  double dx;
  double dz;
  double dtheta;
};

/// Right-hand side of the governing system. Throws NonpositiveHeight for
/// z <= 0, SingularVerticalTangent for a constant-K spec with
/// |cos(theta)| <= event_tol and UnsupportedSpec for constant-principal specs.
Derivative derivative(const WeingartenSpec& spec, const CurveState& state, double event_tol = 1e-10);

struct GeneratingCurve {
  std::vector<CurveState> samples;  // strictly increasing s
  WeingartenSpec spec;
  InitialConditions ic;
  TerminationReason left_end = MaxArcLength{};
  TerminationReason right_end = MaxArcLength{};
  TraceOptions options;
  // Refined zeros of sin(theta) found while integrating; each is also a sample.
  std::vector<double> symmetry_points;

  bool empty() const noexcept { return samples.empty(); }
  double s_begin() const { return samples.front().s; }
  double s_end() const { return samples.back().s; }
};

/// Integrates from s = 0 in both directions until an event ends each half.
/// Requires a GaussConstant or LinearPrincipal spec (UnsupportedSpec otherwise).
GeneratingCurve trace(const WeingartenSpec& spec, const InitialConditions& ic, const TraceOptions& opts = {});

/// State at arc length s by cubic Hermite interpolation between samples.
/// Throws OutOfDomain outside [s_begin, s_end].
CurveState state_at(const GeneratingCurve& curve, double s);

/// Extends the curve by its mirror image across the vertical line x = x(s0).
/// Throws NotAnExtremum unless |sin(theta(s0))| <= event_tol.
GeneratingCurve reflect_extend(const GeneratingCurve& curve, double s0);

/// Restriction of the curve to samples with s in [s_lo, s_hi]; ends become MaxArcLength.
GeneratingCurve sub_curve(const GeneratingCurve& curve, double s_lo, double s_hi);

}  // namespace weingarten
