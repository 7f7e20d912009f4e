#pragma once

// A-priori classification of a parameter set and its mechanized check
// against the features measured on a traced curve.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weingarten/analysis.hpp"
#include "weingarten/odetrace.hpp"
#include "weingarten/params.hpp"

namespace weingarten {

struct PredictedFeatures {
  bool is_graph = false;
  Convexity convexity = Convexity::Mixed;
  // Per period for LWPeriodic, totals over the maximal trace otherwise.
  int num_minima = 0;
  int num_maxima = 0;
  bool has_self_intersections = false;
  bool periodic = false;
  bool complete_proxy = false;
  bool asymptotic_to_boundary = false;
};

struct QuantitativePrediction {
  std::optional<double> height;          // log(z_max / z_min)
  std::optional<double> height_printed;  // printed closed-form height, when it differs in form
  std::optional<double> contact_angle;   // angle in [0, pi] at the ideal boundary
  std::optional<double> boundary_angle;  // theta_1 with sin(theta_1) = sqrt(-K)
};

struct ClassificationReport {
  RegimeLabel regime = RegimeLabel::Uncharted;
  // False for Uncharted and ConstantPC: nothing beyond residuals is checked.
  bool theorem_backed = false;
  std::string surface;  // what the surface is, in words
  PredictedFeatures predicted;
  QuantitativePrediction quantitative;
};

struct Mismatch {
  std::string feature;
  std::string predicted;
  std::string measured;
};

struct VerificationOutcome {
  bool passed = false;
  std::vector<Mismatch> mismatches;
  std::vector<std::pair<std::string, double>> residual_summary;
  std::vector<std::string> notes;
};

struct VerifyTolerances {
  double height = 1e-6;
  double contact_angle = 1e-3;
  double weingarten = 1e-8;
  double first_integral = 1e-8;
  double integral_identity = 1e-6;
  double asymptotic_z = 1e-3;
};

/// Throws TrivialSpec for umbilic/CMC relations.
ClassificationReport predict(const WeingartenSpec& spec, double theta0);

/// Compares every predicted feature with the measurement on `curve`.
/// Failures are reported in the outcome, never thrown.
VerificationOutcome verify(const WeingartenSpec& spec, const GeneratingCurve& curve,
                           const ClassificationReport& report, const VerifyTolerances& tol = {});

}  // namespace weingarten
