#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weingarten/classify.hpp"
#include "weingarten/error.hpp"

using namespace weingarten;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

VerificationOutcome check(const WeingartenSpec& spec, double theta0 = 0.0) {
  const auto curve = trace(spec, InitialConditions::with_angle(theta0));
  return verify(spec, curve, predict(spec, theta0));
}

}  // namespace

TEST_CASE("predict examples") {
  auto geo = predict(GaussConstant{-1}, 0);
  CHECK(geo.predicted.complete_proxy);
  CHECK(geo.predicted.is_graph);
  CHECK(*geo.quantitative.boundary_angle == Approx(pi / 2));

  auto si = predict(LinearPrincipal{3, 1}, 0);
  CHECK(si.predicted.has_self_intersections);
  CHECK(si.predicted.num_minima == 1);
  CHECK_FALSE(si.predicted.is_graph);

  auto horo = predict(LinearPrincipal{0.5, 0.5}, 0);
  CHECK(horo.regime == RegimeLabel::LWHorosphere);
  CHECK(horo.predicted.convexity == Convexity::Flat);
  CHECK(horo.predicted.complete_proxy);

  auto concave = predict(LinearPrincipal{-2, 1}, 0);
  CHECK(*concave.quantitative.contact_angle == Approx(1.230959).epsilon(1e-6));

  auto steep = predict(GaussConstant{-2}, 0);
  CHECK(*steep.quantitative.height == Approx(0.346574).epsilon(1e-6));
  CHECK(*steep.quantitative.height_printed == Approx(0.202733).epsilon(1e-6));

  CHECK_THROWS_AS(predict(LinearPrincipal{1, 0}, 0), Error);
}

TEST_CASE("predictions are self-consistent") {
  for (const WeingartenSpec& spec : {WeingartenSpec{GaussConstant{1}}, WeingartenSpec{GaussConstant{-0.5}},
                                     WeingartenSpec{LinearPrincipal{1, 2}}, WeingartenSpec{LinearPrincipal{2, 0}},
                                     WeingartenSpec{LinearPrincipal{-2, 1}}}) {
    auto r = predict(spec, 0);
    CHECK(r.theorem_backed);
    if (r.predicted.is_graph) CHECK_FALSE(r.predicted.has_self_intersections);
  }
  CHECK_FALSE(predict(GaussConstant{0}, pi / 4).theorem_backed);
  CHECK_FALSE(predict(Kappa1Constant{0.5}, 0).theorem_backed);
}

TEST_CASE("verify passes on theorem-backed sets") {
  CHECK(check(GaussConstant{1}).passed);
  CHECK(check(GaussConstant{0}).passed);
  CHECK(check(GaussConstant{-0.25}).passed);
  CHECK(check(GaussConstant{-1}).passed);
  CHECK(check(LinearPrincipal{1, 2}).passed);
  CHECK(check(LinearPrincipal{2, 0}).passed);
  CHECK(check(LinearPrincipal{-2, 1}).passed);
  auto asym = check(LinearPrincipal{-2, 3}, pi / 2);
  CHECK(asym.passed);
  CHECK(asym.mismatches.empty());
}

TEST_CASE("verify rejects a perturbed curve") {
  auto c = trace(GaussConstant{1}, InitialConditions::with_angle(0));
  for (auto& st : c.samples) st.z += 1e-3;
  auto out = verify(GaussConstant{1}, c, predict(GaussConstant{1}, 0));
  CHECK_FALSE(out.passed);
  bool flagged = false;
  for (const auto& [name, value] : out.residual_summary) flagged = flagged || (name == "first_integral" && value > 1e-8);
  CHECK(flagged);
}

TEST_CASE("verify reports the height discrepancy for K < -1") {
  auto out = check(GaussConstant{-2});
  CHECK(out.passed);
  bool noted = false;
  for (const auto& n : out.notes) noted = noted || n.find("printed height") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("verify catches a regime mismatch") {
  // The (3, 1) curve is not a graph; checking it against the convex-graph
  // prediction must fail.
  auto c = trace(LinearPrincipal{3, 1}, InitialConditions::with_angle(0));
  auto out = verify(LinearPrincipal{3, 1}, c, predict(LinearPrincipal{2, 0}, 0));
  CHECK_FALSE(out.passed);
  CHECK_FALSE(out.mismatches.empty());
}
