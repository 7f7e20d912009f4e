#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weingarten/analysis.hpp"
#include "weingarten/error.hpp"

using namespace weingarten;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

GeneratingCurve run(const WeingartenSpec& spec, double theta0 = 0.0) {
  return trace(spec, InitialConditions::with_angle(theta0));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("principal_curvatures examples") {
  auto h = principal_curvatures(LinearPrincipal{0.5, 0.5}, {0, 0, 1, 0});
  CHECK(h.kappa1 == 1.0);
  CHECK(h.kappa2 == 1.0);
  CHECK(h.gauss == 0.0);

  for (double s : {-1.0, 0.0, 0.4}) {
    auto g = principal_curvatures(GaussConstant{-1}, {s, std::sin(s), std::cos(s), -s});
    CHECK(g.kappa1 == Approx(0).epsilon(1e-14));
    CHECK(g.kappa2 == Approx(std::cos(s)));
    CHECK(g.gauss == Approx(-1));
  }

  auto q = principal_curvatures(LinearPrincipal{3, 1}, {0, 0, 1, 0});
  CHECK(q.kappa1 == 4.0);
  CHECK(q.kappa2 == 1.0);
}

TEST_CASE("weingarten_residual") {
  CHECK(weingarten_residual(LinearPrincipal{0.5, 0.5}, run(LinearPrincipal{0.5, 0.5})) == 0.0);
  CHECK(weingarten_residual(GaussConstant{1}, run(GaussConstant{1})) <= 1e-8);
  CHECK(weingarten_residual(LinearPrincipal{-2, 1}, run(LinearPrincipal{-2, 1})) <= 1e-8);
  CHECK(first_integral_residual(run(GaussConstant{-0.5})) <= 1e-8);
  CHECK(code_of([] { first_integral_residual(run(LinearPrincipal{3, 1})); }) == ErrorCode::UnsupportedSpec);
}

TEST_CASE("extrema") {
  auto k1 = extrema(run(GaussConstant{1}));
  REQUIRE(k1.minima.size() == 1);
  CHECK(k1.minima[0] == Approx(0).epsilon(1e-10));
  CHECK(k1.maxima.empty());

  auto kn = extrema(run(GaussConstant{-0.5}));
  REQUIRE(kn.maxima.size() == 1);
  CHECK(kn.maxima[0] == Approx(0).epsilon(1e-10));
  CHECK(kn.minima.empty());
}

TEST_CASE("self_intersections") {
  CHECK(self_intersections(run(GaussConstant{1})).empty());
  CHECK(self_intersections(run(LinearPrincipal{2, 0})).empty());
  CHECK_FALSE(self_intersections(run(LinearPrincipal{3, 1})).empty());

  // Same point set when the curve is reversed.
  auto c = run(LinearPrincipal{1, 2});
  auto fwd = self_intersections(c);
  GeneratingCurve rev = c;
  std::reverse(rev.samples.begin(), rev.samples.end());
  for (auto& st : rev.samples) st.s = -st.s;
  auto bwd = self_intersections(rev);
  REQUIRE(fwd.size() == bwd.size());
  auto key = [](const SelfIntersection& a, const SelfIntersection& b) { return a.x < b.x; };
  std::sort(fwd.begin(), fwd.end(), key);
  std::sort(bwd.begin(), bwd.end(), key);
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    CHECK(fwd[i].x == Approx(bwd[i].x).epsilon(1e-12));
    CHECK(fwd[i].z == Approx(bwd[i].z).epsilon(1e-12));
  }
}

TEST_CASE("contact_angle") {
  auto c = run(LinearPrincipal{-2, 1});
  CHECK(contact_angle(c, End::Left) == Approx(std::acos(1.0 / 3)).epsilon(1e-6));
  CHECK(contact_angle(c, End::Right) == Approx(1.230959).epsilon(1e-6));
  CHECK(contact_angle(run(GaussConstant{-0.25}), End::Right) == Approx(pi / 6).epsilon(1e-6));
  CHECK(code_of([] { contact_angle(run(GaussConstant{0}), End::Left); }) == ErrorCode::NoBoundaryContact);

  TraceOptions o;
  o.z_floor = 5e-7;
  auto finer = trace(LinearPrincipal{-2, 1}, InitialConditions::with_angle(0), o);
  CHECK(std::abs(contact_angle(finer, End::Right) - contact_angle(c, End::Right)) < 1e-4);
}

TEST_CASE("period") {
  auto pm = measure_period(run(LinearPrincipal{1, 2}));
  CHECK(std::abs(pm.period) > 0);
  CHECK(pm.arc_length > 0);
  CHECK(std::abs(pm.period - pm.next_period) <= 1e-6);
  CHECK(code_of([] { period(run(GaussConstant{1})); }) == ErrorCode::NotPeriodic);

  auto c = run(LinearPrincipal{1, 2});
  auto ex = extrema(c);
  const auto in = [&](const std::vector<double>& v) {
    return std::count_if(v.begin(), v.end(), [&](double s) { return s >= pm.s_start && s < pm.s_start + pm.arc_length; });
  };
  CHECK(in(ex.minima) == 1);
  CHECK(in(ex.maxima) == 1);
}

TEST_CASE("measured_height") {
  CHECK(measured_height(run(GaussConstant{1})) == Approx(0.346574).epsilon(1e-6));
  CHECK(measured_height(run(GaussConstant{0})) == 0.0);
  CHECK(measured_height(run(GaussConstant{-2})) == Approx(0.346574).epsilon(1e-6));
}

TEST_CASE("symmetry_deviation") {
  CHECK(symmetry_deviation(run(GaussConstant{1}), 0.0) <= 1e-8);
  auto c = run(LinearPrincipal{1, 2});
  auto ex = extrema(c);
  REQUIRE_FALSE(ex.maxima.empty());
  CHECK(symmetry_deviation(c, ex.maxima.front()) <= 1e-6);
  CHECK(code_of([&] { symmetry_deviation(c, ex.maxima.front() + 0.2); }) == ErrorCode::NotAnExtremum);
}

TEST_CASE("integral identities") {
  CHECK(integral_identity_residual(run(LinearPrincipal{0.5, 0.5}), 0.5, 0.5) == 0.0);
  CHECK(integral_identity_residual(run(LinearPrincipal{3, 1}), 3, 1) <= 1e-6);
  CHECK(second_integral_residual(run(LinearPrincipal{3, 1}), 3, 1) <= 1e-6);
  // Away from the boundary the identity holds to integration accuracy; at
  // z_floor the division by z amplifies the trace error (see README).
  auto c = run(LinearPrincipal{-2, 1});
  GeneratingCurve inner = sub_curve(c, -1.3, 1.3);
  CHECK(integral_identity_residual(inner, -2, 1) <= 1e-8);
}

TEST_CASE("convexity and graph") {
  CHECK(measured_convexity(run(GaussConstant{1})) == Convexity::Convex);
  CHECK(measured_convexity(run(GaussConstant{-0.5})) == Convexity::Concave);
  CHECK(measured_convexity(run(GaussConstant{0})) == Convexity::Flat);
  CHECK(measured_convexity(run(LinearPrincipal{1, 2})) == Convexity::Mixed);
  CHECK(is_graph_over_boundary(run(LinearPrincipal{2, 0})));
  CHECK_FALSE(is_graph_over_boundary(run(LinearPrincipal{3, 1})));
}
