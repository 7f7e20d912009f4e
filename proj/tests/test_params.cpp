#include <cmath>
#include <array>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "weingarten/error.hpp"
#include "weingarten/params.hpp"

using namespace weingarten;
constexpr double pi = std::numbers::pi;

namespace {

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

TEST_CASE("normalize_linear examples") {
  auto umb = normalize_linear(1, -1, 0);
  REQUIRE(std::holds_alternative<Trivial>(umb));
  CHECK(std::get<Trivial>(umb).kind == TrivialKind::Umbilic);

  auto cmc = normalize_linear(2, 2, 1);
  REQUIRE(std::holds_alternative<Trivial>(cmc));
  CHECK(std::get<Trivial>(cmc).kind == TrivialKind::CMC);

  auto lp = std::get<LinearPrincipal>(normalize_linear(2, 4, 6));
  CHECK(lp.m == -2.0);
  CHECK(lp.n == 3.0);
  CHECK_FALSE(lp.orientation_flipped);

  auto flipped = std::get<LinearPrincipal>(normalize_linear(1, 2, -1));
  CHECK(flipped.m == -2.0);
  CHECK(flipped.n == 1.0);
  CHECK(flipped.orientation_flipped);

  auto k2 = normalize_linear(0, 1, 0.5);
  REQUIRE(std::holds_alternative<Kappa2Constant>(k2));
  CHECK(std::get<Kappa2Constant>(k2).c2 == 0.5);

  auto k1 = normalize_linear(4, 0, 2);
  REQUIRE(std::holds_alternative<Kappa1Constant>(k1));
  CHECK(std::get<Kappa1Constant>(k1).c1 == 0.5);
}

TEST_CASE("normalize_linear errors") {
  CHECK(code_of([] { normalize_linear(0, 0, 1); }) == ErrorCode::DegenerateRelation);
  CHECK(code_of([] { spec_from_linear(1, -1, 0); }) == ErrorCode::TrivialSpec);
  CHECK(code_of([] { spec_from_linear(3, 3, 0); }) == ErrorCode::TrivialSpec);
}

TEST_CASE("normalize_linear is idempotent on its own output") {
  // Dyadic inputs keep m * a / a exact.
  for (auto [a, b, c] : std::vector<std::array<double, 3>>{{2.0, 4.0, 6.0}, {1.0, 2.0, -1.0}, {-0.5, 1.5, 0.25}, {4.0, -8.0, -2.0}}) {
    auto first = std::get<LinearPrincipal>(normalize_linear(a, b, c));
    auto second = std::get<LinearPrincipal>(normalize_linear(1.0, -first.m, first.n));
    CHECK(second.m == first.m);
    CHECK(second.n == first.n);
    CHECK_FALSE(second.orientation_flipped);
  }
}

TEST_CASE("regime_of examples") {
  CHECK(regime_of(GaussConstant{1}, 0) == RegimeLabel::KPositive);
  CHECK(regime_of(GaussConstant{0}, 0) == RegimeLabel::Horosphere);
  CHECK(regime_of(GaussConstant{-0.5}, 0) == RegimeLabel::KNegShallow);
  CHECK(regime_of(GaussConstant{-1}, 0) == RegimeLabel::KGeodesic);
  CHECK(regime_of(GaussConstant{-2}, 0) == RegimeLabel::KNegSteep);
  CHECK(regime_of(GaussConstant{-2}, pi) == RegimeLabel::KNegSteep);
  CHECK(regime_of(GaussConstant{0}, pi / 4) == RegimeLabel::Uncharted);

  CHECK(regime_of(LinearPrincipal{1, 2}, 0) == RegimeLabel::LWPeriodic);
  CHECK(regime_of(LinearPrincipal{1, 2}, 1.0) == RegimeLabel::LWPeriodic);
  CHECK(regime_of(LinearPrincipal{3, 1}, 0) == RegimeLabel::LWMinSelfInt);
  CHECK(regime_of(LinearPrincipal{2, 0}, 0) == RegimeLabel::LWConvexGraph);
  CHECK(regime_of(LinearPrincipal{0.5, 0.5}, 0) == RegimeLabel::LWHorosphere);
  CHECK(regime_of(LinearPrincipal{-2, 3}, 0) == RegimeLabel::LWHorosphere);
  CHECK(regime_of(LinearPrincipal{-2, 3}, pi / 2) == RegimeLabel::LWAsymptotic);
  CHECK(regime_of(LinearPrincipal{-2, 1}, 0) == RegimeLabel::LWConcaveGraph);
  CHECK(regime_of(LinearPrincipal{-2, 1}, 1.0) == RegimeLabel::Uncharted);
  CHECK(regime_of(Kappa1Constant{0.5}, 0) == RegimeLabel::ConstantPC);
  CHECK(regime_of(Kappa2Constant{0.5}, 0) == RegimeLabel::ConstantPC);
}

TEST_CASE("regime boundaries snap") {
  // n + m - 1 within 1e-12 relative of zero is the boundary case.
  CHECK(regime_of(LinearPrincipal{0.5, 0.5 + 1e-14}, 0) == RegimeLabel::LWHorosphere);
  CHECK(regime_of(LinearPrincipal{0.5, 0.5 + 1e-6}, 0) == RegimeLabel::LWPeriodic);
  CHECK(regime_of(LinearPrincipal{1 + 1e-6, 0}, 0) == RegimeLabel::LWConvexGraph);
  CHECK(regime_of(GaussConstant{-1 - 1e-14}, 0) == RegimeLabel::KGeodesic);
  CHECK(regime_of(GaussConstant{1e-13}, 0) == RegimeLabel::Horosphere);
  CHECK(regime_of(GaussConstant{1e-6}, 0) == RegimeLabel::KPositive);
}

TEST_CASE("regime_of rejects unnormalized and trivial specs") {
  CHECK(code_of([] { regime_of(LinearPrincipal{0, 1}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { regime_of(LinearPrincipal{2, -1}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { regime_of(LinearPrincipal{1, 0}, 0); }) == ErrorCode::TrivialSpec);
  CHECK(code_of([] { regime_of(LinearPrincipal{-1, 0.3}, 0); }) == ErrorCode::TrivialSpec);
}

TEST_CASE("normalize_angle") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(2 * pi) == 0.0);
  CHECK(normalize_angle(-pi / 2) == doctest::Approx(3 * pi / 2));
  CHECK(normalize_angle(5 * pi) == doctest::Approx(pi));
  for (double t : {-10.0, -1.0, 0.3, 7.0, 100.0}) {
    const double a = normalize_angle(t);
    CHECK(a >= 0.0);
    CHECK(a < 2 * pi);
  }
}
