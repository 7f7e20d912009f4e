#include "weingarten/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weingarten/error.hpp"

namespace weingarten {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateRelation: return "DegenerateRelation";
    case ErrorCode::TrivialSpec: return "TrivialSpec";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularVerticalTangent: return "SingularVerticalTangent";
    case ErrorCode::NonpositiveHeight: return "NonpositiveHeight";
    case ErrorCode::NotAnExtremum: return "NotAnExtremum";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoBoundaryContact: return "NoBoundaryContact";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

InitialConditions InitialConditions::with_angle(double theta0) {
  InitialConditions ic;
  ic.theta0 = theta0;
  return ic;
}

bool snaps_to(double value, double target) {
  const double scale = std::max({1.0, std::abs(value), std::abs(target)});
  return std::abs(value - target) <= kBoundarySnap * scale;
}

double normalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi || snaps_to(r, kTwoPi)) r = 0.0;
  // fmod keeps the sign of zero.
  return r == 0.0 ? 0.0 : r;
}

NormalizedOutcome normalize_linear(double a, double b, double c) {
  if (a == 0.0 && b == 0.0) {
    throw Error(ErrorCode::DegenerateRelation, "a and b are both zero");
  }
  if (a == 0.0) return Kappa2Constant{c / b};
  if (b == 0.0) return Kappa1Constant{c / a};

  const double m = -b / a;
  const double q = c / a;
  if (snaps_to(m, 1.0) && std::abs(q) <= kBoundarySnap) return Trivial{TrivialKind::Umbilic};
  if (snaps_to(m, -1.0)) return Trivial{TrivialKind::CMC};

  LinearPrincipal lp;
  lp.m = m;
  lp.orientation_flipped = q < 0.0;  // -0.0 is not flipped
  lp.n = q < 0.0 ? -q : (q == 0.0 ? 0.0 : q);
  return lp;
}

WeingartenSpec spec_from_linear(double a, double b, double c) {
  const NormalizedOutcome out = normalize_linear(a, b, c);
  return std::visit(
      [](const auto& v) -> WeingartenSpec {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Trivial>) {
          throw Error(ErrorCode::TrivialSpec,
                      v.kind == TrivialKind::Umbilic ? "umbilic relation" : "constant mean curvature relation");
        } else {
          return v;
        }
      },
      out);
}

bool is_trivial(const LinearPrincipal& lp) {
  return (snaps_to(lp.m, 1.0) && lp.n <= kBoundarySnap) || snaps_to(lp.m, -1.0);
}

const char* to_string(RegimeLabel label) noexcept {
  switch (label) {
    case RegimeLabel::KPositive: return "KPositive";
    case RegimeLabel::Horosphere: return "Horosphere";
    case RegimeLabel::KNegShallow: return "KNegShallow";
    case RegimeLabel::KGeodesic: return "KGeodesic";
    case RegimeLabel::KNegSteep: return "KNegSteep";
    case RegimeLabel::LWPeriodic: return "LWPeriodic";
    case RegimeLabel::LWMinSelfInt: return "LWMinSelfInt";
    case RegimeLabel::LWConvexGraph: return "LWConvexGraph";
    case RegimeLabel::LWHorosphere: return "LWHorosphere";
    case RegimeLabel::LWAsymptotic: return "LWAsymptotic";
    case RegimeLabel::LWConcaveGraph: return "LWConcaveGraph";
    case RegimeLabel::ConstantPC: return "ConstantPC";
    case RegimeLabel::Uncharted: return "Uncharted";
  }
  return "Unknown";
}

namespace {

RegimeLabel gauss_regime(double K, double theta0) {
  const bool horizontal = theta0 == 0.0 || snaps_to(theta0, std::numbers::pi);
  if (!horizontal) return RegimeLabel::Uncharted;
  if (snaps_to(K, 0.0)) return RegimeLabel::Horosphere;
  if (K > 0.0) return RegimeLabel::KPositive;
  if (snaps_to(K, -1.0)) return RegimeLabel::KGeodesic;
  if (K > -1.0) return RegimeLabel::KNegShallow;
  return RegimeLabel::KNegSteep;
}

RegimeLabel linear_regime(const LinearPrincipal& lp, double theta0) {
  if (lp.m == 0.0 || !(lp.n >= 0.0) || !std::isfinite(lp.m) || !std::isfinite(lp.n)) {
    throw Error(ErrorCode::InvalidArgument, "LinearPrincipal needs m != 0 and n >= 0");
  }
  if (is_trivial(lp)) throw Error(ErrorCode::TrivialSpec, describe(WeingartenSpec{lp}));

  const double m = lp.m;
  const double n = lp.n;
  const double slope0 = n + m - 1.0;  // theta'(0) at theta0 = 0
  const double scale = std::max({1.0, std::abs(m), std::abs(n)});
  const bool on_horosphere_line = std::abs(slope0) <= kBoundarySnap * scale;
  const bool level_start = theta0 == 0.0;

  if (on_horosphere_line) return level_start ? RegimeLabel::LWHorosphere : RegimeLabel::LWAsymptotic;

  if (slope0 > 0.0) {
    const bool periodic = m < n + 1.0 && !snaps_to(m, n + 1.0);
    // The periodic curve sweeps every tangent direction, so every start lies on it.
    if (periodic) return RegimeLabel::LWPeriodic;
    if (!level_start) return RegimeLabel::Uncharted;
    return n <= kBoundarySnap ? RegimeLabel::LWConvexGraph : RegimeLabel::LWMinSelfInt;
  }
  return level_start ? RegimeLabel::LWConcaveGraph : RegimeLabel::Uncharted;
}

}  // namespace

RegimeLabel regime_of(const WeingartenSpec& spec, double theta0) {
  const double th = normalize_angle(theta0);
  return std::visit(
      [th](const auto& v) -> RegimeLabel {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussConstant>) {
          return gauss_regime(v.K, th);
        } else if constexpr (std::is_same_v<T, LinearPrincipal>) {
          return linear_regime(v, th);
        } else {
          return RegimeLabel::ConstantPC;
        }
      },
      spec);
}

std::string describe(const WeingartenSpec& spec) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussConstant>) {
          os << "K=" << v.K;
        } else if constexpr (std::is_same_v<T, LinearPrincipal>) {
          os << "m=" << v.m << ", n=" << v.n;
          if (v.orientation_flipped) os << " (flipped)";
        } else if constexpr (std::is_same_v<T, Kappa1Constant>) {
          os << "k1=" << v.c1;
        } else {
          os << "k2=" << v.c2;
        }
      },
      spec);
  return os.str();
}

}  // namespace weingarten
