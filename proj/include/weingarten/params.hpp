#pragma once

// Parameter domain for parabolic linear Weingarten surfaces: which curvature
// relation closes the generating-curve ODE, the initial data, and the regime
// labels the classification is expressed in.

#include <numbers>
#include <string>
#include <variant>

namespace weingarten {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Relative tolerance that snaps near-boundary parameters onto the boundary.
inline constexpr double kBoundarySnap = 1e-12;

/// Constant Gauss curvature K = k1*k2 - 1.
struct GaussConstant {
  double K = 0.0;
};

/// k1 = m*k2 + n with m != 0 and n >= 0 after orientation normalization.
struct LinearPrincipal {
  double m = 0.0;
  double n = 0.0;
  bool orientation_flipped = false;
};

struct Kappa1Constant {
  double c1 = 0.0;
};

struct Kappa2Constant {
  double c2 = 0.0;
};

using WeingartenSpec = std::variant<GaussConstant, LinearPrincipal, Kappa1Constant, Kappa2Constant>;

/// The generating curve always starts at (0, 1); only the angle is free.
struct InitialConditions {
  double x0 = 0.0;
  double z0 = 1.0;
  double theta0 = 0.0;

  static InitialConditions with_angle(double theta0);
};

enum class TrivialKind { Umbilic, CMC };

struct Trivial {
  TrivialKind kind;
};

using NormalizedOutcome = std::variant<LinearPrincipal, Trivial, Kappa1Constant, Kappa2Constant>;

/// Rewrites a*k1 + b*k2 = c into canonical form.
///
/// a != 0 and b != 0 gives k1 = m*k2 + n with m = -b/a and n = |c/a|; a
/// negative c/a is absorbed by reversing the surface orientation, which
/// negates n and leaves m alone. (m, n) = (1, 0) is umbilic and m = -1 is
/// constant mean curvature; both come back as Trivial. A vanishing a or b
/// means one principal curvature is constant.
///
/// Throws DegenerateRelation when a = b = 0.
NormalizedOutcome normalize_linear(double a, double b, double c);

/// Same as normalize_linear but returns a traceable spec, throwing TrivialSpec
/// for the umbilic/CMC cases.
WeingartenSpec spec_from_linear(double a, double b, double c);

enum class RegimeLabel {
  KPositive,
  Horosphere,
  KNegShallow,
  KGeodesic,
  KNegSteep,
  LWPeriodic,
  LWMinSelfInt,
  LWConvexGraph,
  LWHorosphere,
  LWAsymptotic,
  LWConcaveGraph,
  ConstantPC,
  // Starting angles for which no classification theorem is available.
  Uncharted,
};

const char* to_string(RegimeLabel label) noexcept;

/// Exact modular reduction into [0, 2*pi); values within the snap tolerance
/// of 2*pi wrap to 0.
double normalize_angle(double theta);

/// True when value lies within the relative snap tolerance of target.
bool snaps_to(double value, double target);

/// Assigns the regime for a normalized spec and starting angle.
///
/// Constant-K regimes apply to horizontal starts (theta0 in {0, pi}); the
/// linear family is classified at theta0 = 0, plus the two families whose
/// behaviour is known for every start (the periodic case and n+m-1 = 0).
/// Anything else is Uncharted. Throws TrivialSpec on umbilic/CMC relations
/// and InvalidArgument on an unnormalized LinearPrincipal (m = 0 or n < 0).
RegimeLabel regime_of(const WeingartenSpec& spec, double theta0);

bool is_trivial(const LinearPrincipal& lp);

std::string describe(const WeingartenSpec& spec);

}  // namespace weingarten
