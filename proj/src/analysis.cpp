#include "weingarten/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "weingarten/error.hpp"

namespace weingarten {

namespace {

constexpr double kZeroSin = 1e-12;

std::optional<double> rate_of(const WeingartenSpec& spec, const CurveState& st, double tol) {
  try {
    return derivative(spec, st, tol).dtheta;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::size_t origin_index(const GeneratingCurve& curve) {
  const auto& smp = curve.samples;
  auto it = std::lower_bound(smp.begin(), smp.end(), 0.0, [](const CurveState& a, double v) { return a.s < v; });
  if (it == smp.end() || it->s != 0.0) throw Error(ErrorCode::InvalidArgument, "curve has no sample at s = 0");
  return static_cast<std::size_t>(it - smp.begin());
}

// Bisection to machine precision for a sign change of g on [a, b].
template <class G>
double bisect(G&& g, double a, double b) {
  double ga = g(a);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// s where the unwrapped theta first reaches target, scanning from sample
// `from` in direction step (+1/-1).
std::optional<double> theta_crossing(const GeneratingCurve& curve, std::size_t from, int step, double target) {
  const auto& smp = curve.samples;
  for (std::size_t i = from;;) {
    const std::size_t j = step > 0 ? i + 1 : i - 1;
    if ((step > 0 && j >= smp.size()) || (step < 0 && i == 0)) return std::nullopt;
    const double a = smp[i].theta - target;
    const double b = smp[j].theta - target;
    if (b == 0.0) return smp[j].s;
    if ((a < 0.0) != (b < 0.0)) {
      const double lo = std::min(smp[i].s, smp[j].s);
      const double hi = std::max(smp[i].s, smp[j].s);
      return bisect([&](double s) { return state_at(curve, s).theta - target; }, lo, hi);
    }
    i = j;
  }
}

// Integral along samples [first, i] of f, using the trapezoid rule with the
// Euler-Maclaurin endpoint correction; df is the derivative of f along s.
template <class F, class DF>
void corrected_trapezoid(const GeneratingCurve& curve, std::size_t first, F&& f, DF&& df, auto&& visit) {
  const auto& smp = curve.samples;
  double acc = 0.0;
  double f_prev = f(smp[first]);
  double d_prev = df(smp[first]);
  for (std::size_t i = first + 1; i < smp.size(); ++i) {
    const double h = smp[i].s - smp[i - 1].s;
    const double f_cur = f(smp[i]);
    const double d_cur = df(smp[i]);
    acc += 0.5 * h * (f_prev + f_cur);
    if (std::isfinite(d_prev) && std::isfinite(d_cur)) acc -= h * h / 12.0 * (d_cur - d_prev);
    visit(smp[i], acc);
    f_prev = f_cur;
    d_prev = d_cur;
  }
}

}  // namespace

PrincipalCurvaturePair principal_curvatures(const WeingartenSpec& spec, const CurveState& state, double event_tol) {
  const Derivative d = derivative(spec, state, event_tol);
  const double k2 = std::cos(state.theta);
  const double k1 = state.z * d.dtheta + k2;
  return {k1, k2, k1 * k2 - 1.0};
}

double weingarten_residual(const WeingartenSpec& spec, const GeneratingCurve& curve) {
  double worst = 0.0;
  for (const CurveState& st : curve.samples) {
    PrincipalCurvaturePair pc;
    try {
      pc = principal_curvatures(spec, st, curve.options.event_tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularVerticalTangent) continue;
      throw;
    }
    double r = 0.0;
    if (const auto* g = std::get_if<GaussConstant>(&spec)) {
      r = std::abs(pc.gauss - g->K);
    } else if (const auto* lp = std::get_if<LinearPrincipal>(&spec)) {
      r = std::abs(pc.kappa1 - lp->m * pc.kappa2 - lp->n);
    }
    worst = std::max(worst, r);
  }
  return worst;
}

double first_integral_residual(const GeneratingCurve& curve) {
  const auto* g = std::get_if<GaussConstant>(&curve.spec);
  if (!g) throw Error(ErrorCode::UnsupportedSpec, "first integral needs constant K");
  const double s0 = std::sin(curve.ic.theta0);
  const double c = g->K + s0 * s0;
  double worst = 0.0;
  for (const CurveState& st : curve.samples) {
    const double sn = std::sin(st.theta);
    worst = std::max(worst, std::abs(sn * sn - c * st.z * st.z + g->K));
  }
  return worst;
}

Extrema extrema(const GeneratingCurve& curve) {
  Extrema out;
  const auto& smp = curve.samples;
  if (smp.size() < 3) return out;

  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < smp.size(); ++i) {
    if (std::abs(std::sin(smp[i].theta)) > kZeroSin) nonzero.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < nonzero.size(); ++k) {
    const std::size_t i = nonzero[k];
    const std::size_t j = nonzero[k + 1];
    const double si = std::sin(smp[i].theta);
    const double sj = std::sin(smp[j].theta);
    if ((si < 0.0) == (sj < 0.0)) continue;

    double s_root;
    if (j == i + 1) {
      s_root = bisect([&](double s) { return std::sin(state_at(curve, s).theta); }, smp[i].s, smp[j].s);
    } else {
      std::size_t best = i + 1;
      for (std::size_t q = i + 1; q < j; ++q) {
        if (std::abs(std::sin(smp[q].theta)) < std::abs(std::sin(smp[best].theta))) best = q;
      }
      s_root = smp[best].s;
    }

    const CurveState at = state_at(curve, s_root);
    double zpp = std::numeric_limits<double>::quiet_NaN();
    if (const auto r = rate_of(curve.spec, at, curve.options.event_tol)) zpp = *r * std::cos(at.theta);
    // Fall back on the direction of the sign change when z'' is unavailable.
    const bool minimum = (std::isfinite(zpp) && zpp != 0.0) ? zpp > 0.0 : si < 0.0;
    (minimum ? out.minima : out.maxima).push_back(s_root);
  }
  return out;
}

std::vector<SelfIntersection> self_intersections(const GeneratingCurve& curve) {
  std::vector<SelfIntersection> out;
  const auto& p = curve.samples;
  if (p.size() < 4) return out;
  const std::size_t segs = p.size() - 1;

  double xmin = p[0].x, xmax = p[0].x, zmin = p[0].z, zmax = p[0].z, total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    xmin = std::min(xmin, p[i].x);
    xmax = std::max(xmax, p[i].x);
    zmin = std::min(zmin, p[i].z);
    zmax = std::max(zmax, p[i].z);
    if (i > 0) total += std::hypot(p[i].x - p[i - 1].x, p[i].z - p[i - 1].z);
  }
  const double diag = std::hypot(xmax - xmin, zmax - zmin);
  if (diag == 0.0) return out;
  const double cell = std::max({4.0 * total / static_cast<double>(segs), diag / 4096.0, 1e-300});

  auto cell_of = [&](double x, double z) {
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor((x - xmin) / cell)),
                                                 static_cast<std::int64_t>(std::floor((z - zmin) / cell))};
  };
  auto key = [](std::int64_t ix, std::int64_t iz) { return (ix << 32) ^ (iz & 0xffffffffLL); };

  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < segs; ++i) {
    const auto [ax, az] = cell_of(std::min(p[i].x, p[i + 1].x), std::min(p[i].z, p[i + 1].z));
    const auto [bx, bz] = cell_of(std::max(p[i].x, p[i + 1].x), std::max(p[i].z, p[i + 1].z));
    for (std::int64_t ix = ax; ix <= bx; ++ix) {
      for (std::int64_t iz = az; iz <= bz; ++iz) grid[key(ix, iz)].push_back(i);
    }
  }

  auto orient = [](double ax, double az, double bx, double bz, double cx, double cz) {
    return (bx - ax) * (cz - az) - (bz - az) * (cx - ax);
  };

  for (const auto& [k, list] : grid) {
    for (std::size_t u = 0; u < list.size(); ++u) {
      for (std::size_t v = u + 1; v < list.size(); ++v) {
        const std::size_t i = std::min(list[u], list[v]);
        const std::size_t j = std::max(list[u], list[v]);
        if (j - i < 2) continue;
        const CurveState& a0 = p[i];
        const CurveState& a1 = p[i + 1];
        const CurveState& b0 = p[j];
        const CurveState& b1 = p[j + 1];
        const double d1 = orient(b0.x, b0.z, b1.x, b1.z, a0.x, a0.z);
        const double d2 = orient(b0.x, b0.z, b1.x, b1.z, a1.x, a1.z);
        const double d3 = orient(a0.x, a0.z, a1.x, a1.z, b0.x, b0.z);
        const double d4 = orient(a0.x, a0.z, a1.x, a1.z, b1.x, b1.z);
        if (!(d1 * d2 < 0.0 && d3 * d4 < 0.0)) continue;
        const double t = d1 / (d1 - d2);
        const double w = d3 / (d3 - d4);
        const double x = a0.x + t * (a1.x - a0.x);
        const double z = a0.z + t * (a1.z - a0.z);
        // Report each crossing once: from the cell that contains it.
        const auto [cx, cz] = cell_of(x, z);
        if (key(cx, cz) != k) continue;
        out.push_back({x, z, a0.s + t * (a1.s - a0.s), b0.s + w * (b1.s - b0.s)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& l, const SelfIntersection& r) {
    return l.s_first != r.s_first ? l.s_first < r.s_first : l.s_second < r.s_second;
  });
  return out;
}

double contact_angle(const GeneratingCurve& curve, End end) {
  const TerminationReason& reason = end == End::Left ? curve.left_end : curve.right_end;
  const auto* bc = std::get_if<BoundaryContact>(&reason);
  if (!bc) throw Error(ErrorCode::NoBoundaryContact, "end did not reach the ideal boundary");

  // Nodes (z, theta) with z roughly doubling away from the boundary.
  std::vector<std::pair<double, double>> nodes{{bc->z_final, bc->theta_final}};
  const auto& smp = curve.samples;
  const std::size_t count = smp.size();
  double target = 2.0 * std::max(bc->z_final, 1e-300);
  double prev_z = bc->z_final;
  for (std::size_t k = 0; k < count && nodes.size() < 8; ++k) {
    const CurveState& st = end == End::Left ? smp[k] : smp[count - 1 - k];
    if (st.z < prev_z) break;  // keep the monotone tail only
    prev_z = st.z;
    if (st.z >= target) {
      nodes.emplace_back(st.z, st.theta);
      target = 2.0 * st.z;
    }
  }

  double theta = bc->theta_final;
  if (nodes.size() >= 2) {
    // Neville extrapolation of theta(z) to z = 0.
    std::vector<double> tab;
    for (const auto& nd : nodes) tab.push_back(nd.second);
    const std::size_t n = nodes.size();
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
      for (std::size_t i = 0; i + lvl < n; ++i) {
        const double zi = nodes[i].first;
        const double zj = nodes[i + lvl].first;
        tab[i] = (zj * tab[i] - zi * tab[i + 1]) / (zj - zi);
      }
    }
    if (std::isfinite(tab[0]) && std::abs(tab[0] - bc->theta_final) < 1e-2) theta = tab[0];
  }
  const double a = std::abs(std::atan2(std::sin(theta), std::cos(theta)));
  return std::min(a, std::numbers::pi - a);
}

PeriodMeasurement measure_period(const GeneratingCurve& curve) {
  RegimeLabel label;
  try {
    label = regime_of(curve.spec, curve.ic.theta0);
  } catch (const Error&) {
    throw Error(ErrorCode::NotPeriodic, "spec has no regime");
  }
  if (label != RegimeLabel::LWPeriodic) throw Error(ErrorCode::NotPeriodic, "regime is not periodic");

  const std::size_t o = origin_index(curve);
  const CurveState& start = curve.samples[o];
  const double rate = derivative(curve.spec, start, curve.options.event_tol).dtheta;
  const double turn = rate > 0.0 ? kTwoPi : -kTwoPi;

  for (int step : {+1, -1}) {
    // theta moves by +turn per turn along increasing s; along decreasing s it is reversed.
    const double dir = step > 0 ? turn : -turn;
    const auto s1 = theta_crossing(curve, o, step, start.theta + dir);
    if (!s1) continue;
    const auto s2 = theta_crossing(curve, o, step, start.theta + 2.0 * dir);
    if (!s2) continue;
    const double x1 = state_at(curve, *s1).x;
    const double x2 = state_at(curve, *s2).x;
    const double sgn = step > 0 ? 1.0 : -1.0;
    return {sgn * (x1 - start.x), sgn * (x2 - x1), std::abs(*s1), start.s};
  }
  throw Error(ErrorCode::NotPeriodic, "trace does not contain two full turns of theta");
}

double period(const GeneratingCurve& curve) { return measure_period(curve).period; }

double measured_height(const GeneratingCurve& curve) {
  if (curve.empty()) throw Error(ErrorCode::EmptyCurve, "curve has no samples");
  auto [lo, hi] = std::minmax_element(curve.samples.begin(), curve.samples.end(),
                                      [](const CurveState& a, const CurveState& b) { return a.z < b.z; });
  return std::log(hi->z / lo->z);
}

double symmetry_deviation(const GeneratingCurve& curve, double s0) {
  const CurveState pivot = state_at(curve, s0);
  if (std::abs(std::sin(pivot.theta)) > curve.options.event_tol) {
    throw Error(ErrorCode::NotAnExtremum, "z' does not vanish at s0");
  }
  double worst = 0.0;
  for (const CurveState& p : curve.samples) {
    const double partner = 2.0 * s0 - p.s;
    if (p.s == s0 || partner < curve.s_begin() || partner > curve.s_end()) continue;
    const CurveState q = state_at(curve, partner);
    worst = std::max(worst, std::hypot((p.x - pivot.x) + (q.x - pivot.x), p.z - q.z));
  }
  return worst;
}

double integral_identity_residual(const GeneratingCurve& curve, double m, double n) {
  const std::size_t o = origin_index(curve);
  const double c0 = std::cos(curve.ic.theta0);
  const double tol = curve.options.event_tol;
  double worst = 0.0;
  corrected_trapezoid(
      curve, o, [](const CurveState& st) { return std::sin(st.theta) * std::cos(st.theta); },
      [&](const CurveState& st) {
        const auto r = rate_of(curve.spec, st, tol);
        return r ? std::cos(2.0 * st.theta) * *r : std::numeric_limits<double>::quiet_NaN();
      },
      [&](const CurveState& st, double integral) {
        const double lhs = n + std::cos(st.theta);
        const double rhs = ((2.0 - m) * integral + n + c0) / st.z;
        worst = std::max(worst, std::abs(lhs - rhs));
      });
  return worst;
}

double second_integral_residual(const GeneratingCurve& curve, double m, double n) {
  const std::size_t o = origin_index(curve);
  const double s0 = std::sin(curve.ic.theta0);
  const double tol = curve.options.event_tol;
  double worst = 0.0;
  corrected_trapezoid(
      curve, o,
      [&](const CurveState& st) {
        const double c = std::cos(st.theta);
        return n * c + (m - 2.0) * c * c;
      },
      [&](const CurveState& st) {
        const auto r = rate_of(curve.spec, st, tol);
        if (!r) return std::numeric_limits<double>::quiet_NaN();
        const double c = std::cos(st.theta);
        return -std::sin(st.theta) * (n + 2.0 * (m - 2.0) * c) * *r;
      },
      [&](const CurveState& st, double integral) {
        const double lhs = std::sin(st.theta);
        const double rhs = (st.s + integral + s0) / st.z;
        worst = std::max(worst, std::abs(lhs - rhs));
      });
  return worst;
}

const char* to_string(Convexity c) noexcept {
  switch (c) {
    case Convexity::Convex: return "Convex";
    case Convexity::Concave: return "Concave";
    case Convexity::Flat: return "Flat";
    case Convexity::Mixed: return "Mixed";
  }
  return "Unknown";
}

Convexity measured_convexity(const GeneratingCurve& curve) {
  bool pos = false;
  bool neg = false;
  for (const CurveState& st : curve.samples) {
    const auto r = rate_of(curve.spec, st, curve.options.event_tol);
    if (!r) continue;
    const double zpp = *r * std::cos(st.theta);
    if (zpp > 1e-12) pos = true;
    if (zpp < -1e-12) neg = true;
  }
  if (pos && neg) return Convexity::Mixed;
  if (pos) return Convexity::Convex;
  if (neg) return Convexity::Concave;
  return Convexity::Flat;
}

bool is_graph_over_boundary(const GeneratingCurve& curve) {
  const auto& smp = curve.samples;
  if (smp.size() < 2) return true;
  const bool increasing = smp[1].x > smp[0].x;
  for (std::size_t i = 1; i < smp.size(); ++i) {
    const double dx = smp[i].x - smp[i - 1].x;
    if (increasing ? !(dx > 0.0) : !(dx < 0.0)) return false;
  }
  return true;
}

FeatureSet measure_features(const GeneratingCurve& curve) {
  if (curve.empty()) throw Error(ErrorCode::EmptyCurve, "curve has no samples");
  FeatureSet f;
  Extrema ex = extrema(curve);
  f.minima = std::move(ex.minima);
  f.maxima = std::move(ex.maxima);
  f.self_intersections = self_intersections(curve);
  if (std::holds_alternative<BoundaryContact>(curve.left_end)) f.contact_left = contact_angle(curve, End::Left);
  if (std::holds_alternative<BoundaryContact>(curve.right_end)) f.contact_right = contact_angle(curve, End::Right);
  try {
    f.period_x = period(curve);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPeriodic) throw;
  }
  f.height = measured_height(curve);
  f.is_graph_over_boundary = is_graph_over_boundary(curve);
  auto [lo, hi] = std::minmax_element(curve.samples.begin(), curve.samples.end(),
                                      [](const CurveState& a, const CurveState& b) { return a.theta < b.theta; });
  f.theta_min = lo->theta;
  f.theta_max = hi->theta;
  f.convexity = measured_convexity(curve);
  return f;
}

}  // namespace weingarten
