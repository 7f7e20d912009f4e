#pragma once

// Closed-form generating curves for constant Gauss curvature K with a
// horizontal start at (0, 1). The first integral z'^2 = K (z^2 - 1) gives
// z'' = K z, so z is cosh(sqrt(K) s), 1 or cos(sqrt(-K) s).

#include <optional>

namespace weingarten::closedform {

enum class ProfileKind { Cosh, Flat, Cos };

struct KProfile {
  double K;
  ProfileKind kind;

  static KProfile of(double K);
};

/// Half-width of the maximal arc-length domain; nullopt when unbounded (K = 0).
std::optional<double> domain_half_width(double K);

/// Throws OutOfDomain when |s| exceeds the half-width.
double z_exact(double K, double s);

/// z'(s) of the closed form.
double dz_exact(double K, double s);

/// x(s) = integral_0^s sqrt(1 - z'(t)^2) dt by adaptive Gauss-Kronrod
/// quadrature (absolute error <= 1e-10). Throws OutOfDomain.
double x_exact(double K, double s);

struct Height {
  double printed_formula;  // 1/2 log((K+1)/K) for K > 0, 1/2 log((K-1)/K) for K < -1
  double log_ratio;        // log(z_max / z_min) from the endpoint height sqrt((K+1)/K)
};

/// Throws Undefined for -1 <= K <= 0.
Height height_exact(double K);

/// Height of the endpoint where |z'| = 1, sqrt((K+1)/K). Defined for K > 0 and K < -1.
double endpoint_height(double K);

/// Angle theta_1 at the ideal boundary with sin(theta_1) = sqrt(-K).
/// Throws OutOfRange unless -1 <= K < 0.
double boundary_angle(double K);

}  // namespace weingarten::closedform
