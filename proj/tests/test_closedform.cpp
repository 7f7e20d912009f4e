#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weingarten/closedform.hpp"
#include "weingarten/error.hpp"
#include "weingarten/odetrace.hpp"

using namespace weingarten;
using namespace weingarten::closedform;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("z_exact") {
  CHECK(z_exact(1, 0) == 1.0);
  CHECK(z_exact(1, std::log(1 + std::sqrt(2.0))) == Approx(1.414214).epsilon(1e-6));
  CHECK(z_exact(-1, pi / 3) == Approx(0.5).epsilon(1e-14));
  CHECK(z_exact(0, 7.0) == 1.0);
  CHECK_THROWS_AS(z_exact(1, 1.0), Error);
}

TEST_CASE("domain_half_width") {
  CHECK(*domain_half_width(1) == Approx(0.881374).epsilon(1e-6));
  CHECK(*domain_half_width(-2) == Approx(0.555360).epsilon(1e-6));
  CHECK(*domain_half_width(-2) == Approx(pi / (4 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(*domain_half_width(-0.25) == Approx(pi).epsilon(1e-14));
  CHECK_FALSE(domain_half_width(0).has_value());
}

TEST_CASE("x_exact") {
  CHECK(x_exact(1, 0) == 0.0);
  for (double s : {-1.2, -0.4, 0.3, 1.0, 1.5}) CHECK(x_exact(-1, s) == Approx(std::sin(s)).epsilon(1e-10));
  CHECK(x_exact(-1, -0.7) == Approx(-x_exact(-1, 0.7)));
  // Cross-check against the integrator.
  const auto c = trace(GaussConstant{1}, InitialConditions::with_angle(0));
  CHECK(std::abs(x_exact(1, 0.5) - state_at(c, 0.5).x) <= 1e-8);
  // The endpoint with its square-root singularity.
  const double s1 = *domain_half_width(1);
  CHECK(std::abs(x_exact(1, s1) - c.samples.back().x) <= 1e-8);
}

TEST_CASE("height_exact") {
  CHECK(height_exact(1).log_ratio == Approx(0.346574).epsilon(1e-6));
  CHECK(height_exact(1).printed_formula == Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(height_exact(3).log_ratio == Approx(0.143841).epsilon(1e-6));
  CHECK(height_exact(-2).printed_formula == Approx(0.202733).epsilon(1e-6));
  CHECK(height_exact(-2).log_ratio == Approx(0.346574).epsilon(1e-6));
  CHECK_THROWS_AS(height_exact(-0.5), Error);
  CHECK_THROWS_AS(height_exact(0), Error);
  CHECK(endpoint_height(-2) == Approx(std::sqrt(0.5)));
}

TEST_CASE("boundary_angle") {
  CHECK(boundary_angle(-0.25) == Approx(pi / 6).epsilon(1e-14));
  CHECK(boundary_angle(-1) == Approx(pi / 2).epsilon(1e-14));
  CHECK(boundary_angle(-0.5) == Approx(pi / 4).epsilon(1e-14));
  CHECK_THROWS_AS(boundary_angle(-2), Error);
  CHECK_THROWS_AS(boundary_angle(0.5), Error);
}

TEST_CASE("trace matches the closed form") {
  for (double K : {1.0, 0.5, -0.5, -2.0}) {
    const auto c = trace(GaussConstant{K}, InitialConditions::with_angle(0));
    double worst = 0;
    const double w = *domain_half_width(K);
    for (const auto& st : c.samples) {
      // The last sample can sit a rounding error past the endpoint.
      CHECK(std::abs(st.s) <= w + 1e-9);
      worst = std::max(worst, std::abs(st.z - z_exact(K, std::clamp(st.s, -w, w))));
    }
    CHECK_MESSAGE(worst <= 1e-8, "K=" << K << " worst=" << worst);
  }
}
