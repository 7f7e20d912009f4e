#pragma once

// Fixed parameter tables: the figure sets and the acceptance grid, plus the
// runner behind `weingarten verify` and `weingarten figures`.

#include <filesystem>
#include <string>
#include <vector>

#include "weingarten/classify.hpp"
#include "weingarten/odetrace.hpp"
#include "weingarten/params.hpp"

namespace weingarten::suite {

struct ParameterSet {
  std::string name;
  WeingartenSpec spec;
  double theta0 = 0.0;
};

struct FigurePanel {
  std::string label;
  ParameterSet params;
  // Panels without a classification theorem are drawn but not verified.
  bool verify_gate = true;
};

struct Figure {
  std::string file;
  std::string caption;
  std::vector<FigurePanel> panels;
};

const std::vector<Figure>& figure_table();

struct PanelCheck {
  std::string figure;
  std::string panel;
  RegimeLabel regime;
  bool gated;
  VerificationOutcome outcome;
};

struct FigureRun {
  std::vector<std::filesystem::path> written;
  std::vector<PanelCheck> checks;
  bool all_passed = false;
};

/// Traces every panel, writes one SVG per figure into out_dir and verifies
/// the gated panels against their predictions.
FigureRun write_figures(const std::filesystem::path& out_dir, const TraceOptions& opts = {});

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
};

/// Every acceptance criterion, in order. figure_dir receives the SVGs of the
/// figure criterion.
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& figure_dir, const TraceOptions& opts = {});

/// Fixed-width table, one row per criterion.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace weingarten::suite
