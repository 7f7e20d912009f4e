#include "weingarten/classify.hpp"

#include <cmath>
#include <sstream>

#include "weingarten/closedform.hpp"
#include "weingarten/error.hpp"

namespace weingarten {

namespace {

PredictedFeatures features(bool graph, Convexity conv, int mins, int maxs, bool self_int, bool periodic,
                           bool complete, bool asymptotic) {
  return {graph, conv, mins, maxs, self_int, periodic, complete, asymptotic};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(bool v) { return v ? "true" : "false"; }

bool both_max_arc(const GeneratingCurve& c) {
  return std::holds_alternative<MaxArcLength>(c.left_end) && std::holds_alternative<MaxArcLength>(c.right_end);
}

bool both_boundary(const GeneratingCurve& c) {
  return std::holds_alternative<BoundaryContact>(c.left_end) && std::holds_alternative<BoundaryContact>(c.right_end);
}

}  // namespace

ClassificationReport predict(const WeingartenSpec& spec, double theta0) {
  ClassificationReport r;
  r.regime = regime_of(spec, theta0);
  r.theorem_backed = r.regime != RegimeLabel::Uncharted && r.regime != RegimeLabel::ConstantPC;
  auto& q = r.quantitative;

  const double K = std::holds_alternative<GaussConstant>(spec) ? std::get<GaussConstant>(spec).K : 0.0;
  double m = 0.0;
  double n = 0.0;
  if (const auto* lp = std::get_if<LinearPrincipal>(&spec)) {
    m = lp->m;
    n = lp->n;
  }

  switch (r.regime) {
    case RegimeLabel::KPositive: {
      r.surface = "non-complete graph with one minimum";
      r.predicted = features(true, Convexity::Convex, 1, 0, false, false, false, false);
      const auto h = closedform::height_exact(K);
      q.height = h.log_ratio;
      q.height_printed = h.printed_formula;
      break;
    }
    case RegimeLabel::Horosphere:
    case RegimeLabel::LWHorosphere:
      r.surface = "horosphere";
      r.predicted = features(true, Convexity::Flat, 0, 0, false, false, true, false);
      q.height = 0.0;
      break;
    case RegimeLabel::KNegShallow:
    case RegimeLabel::KGeodesic:
      r.surface = r.regime == RegimeLabel::KGeodesic ? "totally geodesic plane (half-circle meeting the boundary orthogonally)"
                                                     : "complete graph bounded by two circles tangent at the fixed point";
      r.predicted = features(true, Convexity::Concave, 0, 1, false, false, true, false);
      q.boundary_angle = closedform::boundary_angle(std::max(K, -1.0));
      q.contact_angle = q.boundary_angle;
      break;
    case RegimeLabel::KNegSteep: {
      r.surface = "non-complete graph with vertical ends";
      r.predicted = features(true, Convexity::Concave, 0, 1, false, false, false, false);
      const auto h = closedform::height_exact(K);
      q.height = h.log_ratio;
      q.height_printed = h.printed_formula;
      break;
    }
    case RegimeLabel::LWPeriodic:
      r.surface = "translation-invariant curve with self-intersections";
      r.predicted = features(false, Convexity::Mixed, 1, 1, true, true, true, false);
      break;
    case RegimeLabel::LWMinSelfInt:
      r.surface = "curve with one minimum and self-intersections";
      r.predicted = features(false, Convexity::Mixed, 1, 0, true, false, true, false);
      break;
    case RegimeLabel::LWConvexGraph:
      r.surface = "convex graph with one minimum";
      r.predicted = features(true, Convexity::Convex, 1, 0, false, false, true, false);
      break;
    case RegimeLabel::LWAsymptotic:
      r.surface = "self-intersecting curve with one maximum, asymptotic to the boundary";
      r.predicted = features(false, Convexity::Mixed, 0, 1, true, false, true, true);
      break;
    case RegimeLabel::LWConcaveGraph:
      r.surface = "concave graph with one maximum meeting the boundary";
      r.predicted = features(true, Convexity::Concave, 0, 1, false, false, false, false);
      q.contact_angle = std::acos(-n / (m - 1.0));
      break;
    case RegimeLabel::ConstantPC:
      r.surface = std::holds_alternative<Kappa1Constant>(spec)
                      ? "totally geodesic plane, equidistant surface, horosphere or horizontal right cylinder"
                      : "generated by a straight line";
      break;
    case RegimeLabel::Uncharted:
      r.surface = "no classification for this starting angle";
      break;
  }
  return r;
}

VerificationOutcome verify(const WeingartenSpec& spec, const GeneratingCurve& curve,
                           const ClassificationReport& report, const VerifyTolerances& tol) {
  VerificationOutcome out;
  auto mismatch = [&out](std::string f, std::string p, std::string m) {
    out.mismatches.push_back({std::move(f), std::move(p), std::move(m)});
  };
  if (curve.empty()) {
    mismatch("samples", "non-empty", "empty");
    return out;
  }

  bool residuals_ok = true;
  auto residual = [&](const std::string& name, double value, std::optional<double> limit) {
    out.residual_summary.emplace_back(name, value);
    if (limit && !(value <= *limit)) {
      residuals_ok = false;
      out.notes.push_back(name + " residual " + fmt(value) + " exceeds " + fmt(*limit));
    }
  };

  residual("weingarten", weingarten_residual(spec, curve), tol.weingarten);
  if (std::holds_alternative<GaussConstant>(spec)) {
    residual("first_integral", first_integral_residual(curve), tol.first_integral);
  } else if (const auto* lp = std::get_if<LinearPrincipal>(&spec)) {
    // Reported only: the /z form loses digits as z approaches z_floor.
    residual("integral_identity", integral_identity_residual(curve, lp->m, lp->n), std::nullopt);
    residual("second_integral", second_integral_residual(curve, lp->m, lp->n), std::nullopt);
  }

  if (!report.theorem_backed) {
    out.notes.push_back(std::string("regime ") + to_string(report.regime) + ": residual checks only");
    out.passed = residuals_ok;
    return out;
  }

  const PredictedFeatures& p = report.predicted;
  const FeatureSet f = measure_features(curve);

  std::size_t mins = f.minima.size();
  std::size_t maxs = f.maxima.size();
  bool self_int = !f.self_intersections.empty();
  if (p.periodic) {
    if (!f.period_x) {
      mismatch("periodic", "true", "false");
    } else {
      // Counts per period: one turn of theta starting at s = 0.
      const PeriodMeasurement pm = measure_period(curve);
      const double lo = pm.s_start;
      const double hi = pm.s_start + pm.arc_length;
      mins = 0;
      maxs = 0;
      for (double s : f.minima) mins += (s >= lo && s < hi) ? 1 : 0;
      for (double s : f.maxima) maxs += (s >= lo && s < hi) ? 1 : 0;
      self_int = std::any_of(f.self_intersections.begin(), f.self_intersections.end(),
                             [&](const SelfIntersection& c) { return c.s_first >= lo && c.s_first < hi; });
      if (std::abs(pm.period - pm.next_period) > tol.height) {
        mismatch("period_repeat", fmt(pm.period), fmt(pm.next_period));
      }
    }
  } else if (f.period_x) {
    mismatch("periodic", "false", "true");
  }

  if (p.is_graph != f.is_graph_over_boundary) mismatch("is_graph", fmt(p.is_graph), fmt(f.is_graph_over_boundary));
  if (p.convexity != f.convexity) mismatch("convexity", to_string(p.convexity), to_string(f.convexity));
  if (static_cast<std::size_t>(p.num_minima) != mins) mismatch("num_minima", fmt(double(p.num_minima)), fmt(double(mins)));
  if (static_cast<std::size_t>(p.num_maxima) != maxs) mismatch("num_maxima", fmt(double(p.num_maxima)), fmt(double(maxs)));
  if (p.has_self_intersections != self_int) mismatch("has_self_intersections", fmt(p.has_self_intersections), fmt(self_int));

  bool complete = both_max_arc(curve);
  if (!complete && both_boundary(curve) && report.quantitative.boundary_angle) {
    const double want = *report.quantitative.boundary_angle;
    complete = f.contact_left && f.contact_right && std::abs(*f.contact_left - want) <= tol.contact_angle &&
               std::abs(*f.contact_right - want) <= tol.contact_angle;
  }
  if (p.complete_proxy != complete) mismatch("complete_proxy", fmt(p.complete_proxy), fmt(complete));

  const bool asymptotic = both_max_arc(curve) && curve.samples.front().z < tol.asymptotic_z &&
                          curve.samples.back().z < tol.asymptotic_z;
  if (p.asymptotic_to_boundary != asymptotic) {
    mismatch("asymptotic_to_boundary", fmt(p.asymptotic_to_boundary), fmt(asymptotic));
  }

  const QuantitativePrediction& q = report.quantitative;
  if (q.height) {
    if (!f.height || std::abs(*f.height - *q.height) > tol.height) {
      mismatch("height", fmt(*q.height), f.height ? fmt(*f.height) : "none");
    }
    if (q.height_printed && std::abs(*q.height_printed - *q.height) > tol.height) {
      out.notes.push_back("printed height formula gives " + fmt(*q.height_printed) + ", measured log(z_max/z_min) is " +
                          (f.height ? fmt(*f.height) : std::string("none")));
    }
  }
  if (q.contact_angle) {
    for (const auto& [name, measured] : {std::pair{"contact_angle_left", f.contact_left},
                                         std::pair{"contact_angle_right", f.contact_right}}) {
      if (!measured || std::abs(*measured - *q.contact_angle) > tol.contact_angle) {
        mismatch(name, fmt(*q.contact_angle), measured ? fmt(*measured) : "none");
      }
    }
  }

  out.passed = residuals_ok && out.mismatches.empty();
  return out;
}

}  // namespace weingarten
