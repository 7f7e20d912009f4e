#include "weingarten/closedform.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "weingarten/error.hpp"

namespace weingarten::closedform {

namespace {

void check_domain(double K, double s) {
  const auto w = domain_half_width(K);
  if (w && std::abs(s) > *w) throw Error(ErrorCode::OutOfDomain, "s lies outside the maximal domain");
}

double integrate(const auto& f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, 1e-14, &err);
}

}  // namespace

KProfile KProfile::of(double K) {
  if (K > 0.0) return {K, ProfileKind::Cosh};
  if (K < 0.0) return {K, ProfileKind::Cos};
  return {K, ProfileKind::Flat};
}

std::optional<double> domain_half_width(double K) {
  if (K > 0.0) {
    const double r = std::sqrt(K);
    return std::asinh(1.0 / r) / r;
  }
  if (K < -1.0) {
    const double r = std::sqrt(-K);
    return std::asin(1.0 / r) / r;
  }
  if (K < 0.0) return std::numbers::pi / (2.0 * std::sqrt(-K));
  return std::nullopt;
}

double z_exact(double K, double s) {
  check_domain(K, s);
  if (K > 0.0) return std::cosh(std::sqrt(K) * s);
  if (K < 0.0) return std::cos(std::sqrt(-K) * s);
  return 1.0;
}

double dz_exact(double K, double s) {
  check_domain(K, s);
  if (K > 0.0) {
    const double r = std::sqrt(K);
    return r * std::sinh(r * s);
  }
  if (K < 0.0) {
    const double r = std::sqrt(-K);
    return -r * std::sin(r * s);
  }
  return 0.0;
}

double x_exact(double K, double s) {
  check_domain(K, s);
  if (s == 0.0) return 0.0;
  if (K == 0.0) return s;
  const double sign = s < 0.0 ? -1.0 : 1.0;
  const double a = std::abs(s);
  const double r = std::sqrt(std::abs(K));

  auto integrand = [K, r](double t) {
    const double dz = K > 0.0 ? r * std::sinh(r * t) : -r * std::sin(r * t);
    return std::sqrt(std::max(0.0, 1.0 - dz * dz));
  };

  const bool vertical_end = K > 0.0 || K < -1.0;
  if (!vertical_end) return sign * integrate(integrand, 0.0, a);

  // sqrt(1 - z'^2) has a square-root zero at the domain end; t = w sin(u)
  // turns it into a smooth integrand.
  const double w = *domain_half_width(K);
  const double u_end = std::asin(std::min(1.0, a / w));
  auto substituted = [&](double u) { return integrand(w * std::sin(u)) * w * std::cos(u); };
  return sign * integrate(substituted, 0.0, u_end);
}

double endpoint_height(double K) {
  if (!(K > 0.0 || K < -1.0)) throw Error(ErrorCode::Undefined, "no vertical endpoint for -1 <= K <= 0");
  return std::sqrt((K + 1.0) / K);
}

Height height_exact(double K) {
  if (!(K > 0.0 || K < -1.0)) throw Error(ErrorCode::Undefined, "height is defined for K > 0 or K < -1");
  const double z_end = endpoint_height(K);
  if (K > 0.0) return {0.5 * std::log((K + 1.0) / K), std::log(z_end)};
  return {0.5 * std::log((K - 1.0) / K), std::log(1.0 / z_end)};
}

double boundary_angle(double K) {
  if (!(K >= -1.0 && K < 0.0)) throw Error(ErrorCode::OutOfRange, "boundary angle needs -1 <= K < 0");
  return std::asin(std::sqrt(-K));
}

}  // namespace weingarten::closedform
