#include "weingarten/odetrace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "weingarten/error.hpp"

namespace weingarten {

namespace {

using Vec3 = std::array<double, 3>;

// Below this |cos(theta)| a constant-K trace hands over to theta as the
// independent variable for the approach to the vertical tangent.
constexpr double kThetaPhaseCos = 0.05;
constexpr double kMinStep = 1e-14;
constexpr std::size_t kMaxStepsPerHalf = 20'000'000;

struct Closure {
  bool gauss = false;
  double K = 0.0;
  double m = 0.0;
  double n = 0.0;
  double event_tol = 1e-10;

  // theta' as a function of (z, theta); nullopt where undefined.
  std::optional<double> rate(double z, double theta) const {
    if (!(z > 0.0)) return std::nullopt;
    const double c = std::cos(theta);
    double r;
    if (gauss) {
      if (std::abs(c) <= event_tol) return std::nullopt;
      const double sn = std::sin(theta);
      r = (K + sn * sn) / (z * c);
    } else {
      r = ((m - 1.0) * c + n) / z;
    }
    if (!std::isfinite(r)) return std::nullopt;
    return r;
  }
};

Closure make_closure(const WeingartenSpec& spec, double event_tol) {
  Closure c;
  c.event_tol = event_tol;
  if (const auto* g = std::get_if<GaussConstant>(&spec)) {
    c.gauss = true;
    c.K = g->K;
  } else if (const auto* lp = std::get_if<LinearPrincipal>(&spec)) {
    c.m = lp->m;
    c.n = lp->n;
  } else {
    throw Error(ErrorCode::UnsupportedSpec, "only constant-K and linear k1 = m k2 + n relations are traced");
  }
  return c;
}

struct StepResult {
  Vec3 y{};
  double err = 0.0;
  bool ok = false;
};

template <class F>
bool axpy_eval(F& f, double t, const Vec3& y, double h, std::initializer_list<std::pair<double, const Vec3*>> terms,
               Vec3& out) {
  Vec3 tmp = y;
  for (const auto& [a, k] : terms) {
    for (int i = 0; i < 3; ++i) tmp[i] += h * a * (*k)[i];
  }
  const auto r = f(t, tmp);
  if (!r) return false;
  out = *r;
  return true;
}

// Dormand-Prince 5(4); f(t, y) -> optional<Vec3>.
template <class F>
StepResult dopri_step(F& f, double t, const Vec3& y, double h, double atol, double rtol) {
  StepResult res;
  Vec3 k1, k2, k3, k4, k5, k6, k7;
  const auto r1 = f(t, y);
  if (!r1) return res;
  k1 = *r1;
  if (!axpy_eval(f, t + h / 5.0, y, h, {{1.0 / 5.0, &k1}}, k2)) return res;
  if (!axpy_eval(f, t + 3.0 * h / 10.0, y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}, k3)) return res;
  if (!axpy_eval(f, t + 4.0 * h / 5.0, y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}, k4))
    return res;
  if (!axpy_eval(f, t + 8.0 * h / 9.0, y, h,
                 {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2}, {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}},
                 k5))
    return res;
  if (!axpy_eval(f, t + h, y, h,
                 {{9017.0 / 3168.0, &k1},
                  {-355.0 / 33.0, &k2},
                  {46732.0 / 5247.0, &k3},
                  {49.0 / 176.0, &k4},
                  {-5103.0 / 18656.0, &k5}},
                 k6))
    return res;
  Vec3 y5 = y;
  for (int i = 0; i < 3; ++i) {
    y5[i] += h * (35.0 / 384.0 * k1[i] + 500.0 / 1113.0 * k3[i] + 125.0 / 192.0 * k4[i] -
                  2187.0 / 6784.0 * k5[i] + 11.0 / 84.0 * k6[i]);
  }
  const auto r7 = f(t + h, y5);
  if (!r7) return res;
  k7 = *r7;
  double err = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double e = h * (71.0 / 57600.0 * k1[i] - 71.0 / 16695.0 * k3[i] + 71.0 / 1920.0 * k4[i] -
                          17253.0 / 339200.0 * k5[i] + 22.0 / 525.0 * k6[i] - 1.0 / 40.0 * k7[i]);
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(e) / sc);
  }
  for (double v : y5) {
    if (!std::isfinite(v)) return res;
  }
  res.y = y5;
  res.err = err;
  res.ok = true;
  return res;
}

template <class F>
StepResult rk4_step(F& f, double t, const Vec3& y, double h) {
  StepResult res;
  Vec3 k1, k2, k3, k4;
  const auto r1 = f(t, y);
  if (!r1) return res;
  k1 = *r1;
  if (!axpy_eval(f, t + h / 2.0, y, h, {{0.5, &k1}}, k2)) return res;
  if (!axpy_eval(f, t + h / 2.0, y, h, {{0.5, &k2}}, k3)) return res;
  if (!axpy_eval(f, t + h, y, h, {{1.0, &k3}}, k4)) return res;
  Vec3 yn = y;
  for (int i = 0; i < 3; ++i) yn[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  for (double v : yn) {
    if (!std::isfinite(v)) return res;
  }
  res.y = yn;
  res.ok = true;
  return res;
}

// Root of g on [a, b] given opposite signs at the ends: bisection down to tol,
// then one secant step. Returns the located parameter.
template <class G>
double refine_root(G&& g, double a, double ga, double b, double gb, double tol) {
  for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
      gb = gm;
    }
  }
  if (ga == gb) return 0.5 * (a + b);
  const double t = a - ga * (b - a) / (gb - ga);
  return std::clamp(t, std::min(a, b), std::max(a, b));
}

struct HalfTrace {
  std::vector<CurveState> samples;
  TerminationReason end = MaxArcLength{};
  std::vector<double> symmetry;
};

class HalfIntegrator {
 public:
  HalfIntegrator(const Closure& cl, const TraceOptions& opts, double sigma) : cl_(cl), opts_(opts), sigma_(sigma) {}

  HalfTrace run(const CurveState& start) {
    out_.samples.push_back(start);
    if (cl_.gauss && std::abs(std::cos(start.theta)) <= opts_.event_tol) {
      out_.end = VerticalTangent{start.s};
      return std::move(out_);
    }
    if (!cl_.rate(start.z, start.theta)) {
      out_.end = StepUnderflow{};
      return std::move(out_);
    }
    if (needs_theta_phase(start)) {
      theta_phase(start);
    } else {
      arc_phase(start);
    }
    return std::move(out_);
  }

 private:
  bool needs_theta_phase(const CurveState& st) const {
    if (!cl_.gauss) return false;
    const double c = std::abs(std::cos(st.theta));
    const double sn = std::sin(st.theta);
    return c < kThetaPhaseCos && std::abs(cl_.K + sn * sn) > c;
  }

  auto arc_rhs() const {
    return [this](double, const Vec3& y) -> std::optional<Vec3> {
      const auto r = cl_.rate(y[1], y[2]);
      if (!r) return std::nullopt;
      return Vec3{std::cos(y[2]), std::sin(y[2]), *r};
    };
  }

  StepResult arc_step(const Vec3& y, double h) const {
    auto f = arc_rhs();
    if (opts_.integrator == Integrator::FixedRK4) return rk4_step(f, 0.0, y, sigma_ * h);
    return dopri_step(f, 0.0, y, sigma_ * h, opts_.abs_tol, opts_.rel_tol);
  }

  static CurveState to_state(double s, const Vec3& y) { return CurveState{s, y[0], y[1], y[2]}; }

  void arc_phase(const CurveState& start) {
    Vec3 y{start.x, start.z, start.theta};
    double s = start.s;
    const bool fixed = opts_.integrator == Integrator::FixedRK4;
    double h = fixed ? opts_.fixed_step : std::min(opts_.max_step, 1e-3);

    for (std::size_t steps = 0; steps < kMaxStepsPerHalf; ++steps) {
      const double remaining = opts_.s_max - std::abs(s);
      if (remaining <= 0.0) {
        out_.end = MaxArcLength{};
        return;
      }
      bool last = false;
      if (fixed) {
        h = std::min(opts_.fixed_step, remaining);
      } else {
        h = std::min(h, opts_.max_step);
        if (const auto r = cl_.rate(y[1], y[2]); r && *r != 0.0) h = std::min(h, opts_.max_turn / std::abs(*r));
      }
      if (h >= remaining) {
        h = remaining;
        last = true;
      }
      if (h < kMinStep) {
        out_.end = StepUnderflow{};
        return;
      }

      const StepResult st = arc_step(y, h);
      if (!st.ok) {
        h *= 0.25;
        continue;
      }
      if (!fixed) {
        if (st.err > 1.0) {
          h *= std::max(0.2, 0.9 * std::pow(st.err, -0.2));
          continue;
        }
        const double turn = std::abs(st.y[2] - y[2]);
        if (turn > opts_.max_turn) {
          h *= 0.9 * opts_.max_turn / turn;
          continue;
        }
      }
      if (cl_.gauss && (std::cos(st.y[2]) > 0.0) != (std::cos(y[2]) > 0.0)) {
        h *= 0.5;
        continue;
      }

      const double s_new = last ? sigma_ * opts_.s_max : s + sigma_ * h;

      // Boundary contact: g = z - z_floor changes sign inside the step.
      if (st.y[1] <= opts_.z_floor) {
        finish_boundary(s, y, h);
        return;
      }

      // Symmetry candidate: sin(theta) changes sign strictly inside the step.
      const double g0 = std::sin(y[2]);
      const double g1 = std::sin(st.y[2]);
      if (g0 * g1 < 0.0) {
        const double tau = refine_root(
            [&](double t) {
              const StepResult r = arc_step(y, t);
              return r.ok ? std::sin(r.y[2]) : g1;
            },
            0.0, g0, h, g1, opts_.event_tol);
        if (tau > 0.0 && tau < h) {
          const StepResult r = arc_step(y, tau);
          if (r.ok) {
            const double s_sym = s + sigma_ * tau;
            out_.samples.push_back(to_state(s_sym, r.y));
            out_.symmetry.push_back(s_sym);
            if (opts_.stop_at_symmetry) {
              out_.end = SymmetryPoint{s_sym, r.y[2]};
              return;
            }
          }
        }
      }

      y = st.y;
      s = s_new;
      out_.samples.push_back(to_state(s, y));

      if (needs_theta_phase(out_.samples.back())) {
        theta_phase(out_.samples.back());
        return;
      }
      if (!fixed) {
        const double grow = st.err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(st.err, -0.2));
        h *= grow;
      }
    }
    out_.end = StepUnderflow{};
  }

  void finish_boundary(double s, const Vec3& y, double h) {
    auto g = [&](double t) {
      const StepResult r = arc_step(y, t);
      // An invalid trial step can only come from z collapsing: count it as below.
      return r.ok ? r.y[1] - opts_.z_floor : -1.0;
    };
    double a = 0.0;
    double b = h;
    double ga = y[1] - opts_.z_floor;
    for (int it = 0; it < 200 && b - a > opts_.event_tol; ++it) {
      const double mid = 0.5 * (a + b);
      const double gm = g(mid);
      if (gm > 0.0) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    (void)ga;
    if (a > 0.0) {
      const StepResult above = arc_step(y, a);
      if (above.ok) out_.samples.push_back(to_state(s + sigma_ * a, above.y));
    }
    const StepResult below = arc_step(y, b);
    if (below.ok) {
      out_.end = BoundaryContact{below.y[1], below.y[2]};
    } else {
      const CurveState& last = out_.samples.back();
      out_.end = BoundaryContact{last.z, last.theta};
    }
  }

  // Constant-K approach to a vertical tangent with theta as the independent
  // variable: ds/dtheta = z cos(theta) / (K + sin^2(theta)) stays bounded.
  void theta_phase(const CurveState& start) {
    const auto rate = cl_.rate(start.z, start.theta);
    if (!rate || *rate == 0.0) {
      out_.end = StepUnderflow{};
      return;
    }
    const double dir = (sigma_ * *rate) > 0.0 ? 1.0 : -1.0;  // sign of dtheta along the trace
    const double half_pi = std::numbers::pi / 2.0;
    const double k = dir > 0.0 ? std::ceil((start.theta - half_pi) / std::numbers::pi)
                               : std::floor((start.theta - half_pi) / std::numbers::pi);
    const double target = half_pi + k * std::numbers::pi;

    const double K = cl_.K;
    auto f = [K](double th, const Vec3& y) -> std::optional<Vec3> {
      const double c = std::cos(th);
      const double sn = std::sin(th);
      const double den = K + sn * sn;
      if (!(y[2] > 0.0) || den == 0.0) return std::nullopt;
      const double ds = y[2] * c / den;
      return Vec3{ds, c * ds, sn * ds};
    };
    auto step = [&](double th, const Vec3& y, double dth) {
      if (opts_.integrator == Integrator::FixedRK4) return rk4_step(f, th, y, dth);
      return dopri_step(f, th, y, dth, opts_.abs_tol, opts_.rel_tol);
    };

    Vec3 y{start.s, start.x, start.z};
    double th = start.theta;
    double h = opts_.max_turn;
    for (std::size_t steps = 0; steps < kMaxStepsPerHalf; ++steps) {
      const double remaining = std::abs(target - th);
      if (remaining <= 0.0) break;
      h = std::min({h, opts_.max_turn, remaining});
      const bool last = h >= remaining;
      if (h < kMinStep) {
        out_.end = StepUnderflow{};
        return;
      }
      const StepResult st = step(th, y, dir * h);
      if (!st.ok) {
        h *= 0.25;
        continue;
      }
      if (opts_.integrator == Integrator::DormandPrince && st.err > 1.0) {
        h *= std::max(0.2, 0.9 * std::pow(st.err, -0.2));
        continue;
      }
      if (st.y[2] <= opts_.z_floor) {
        // Boundary reached before the vertical tangent.
        double a = 0.0;
        double b = h;
        for (int it = 0; it < 200 && b - a > opts_.event_tol; ++it) {
          const double mid = 0.5 * (a + b);
          const StepResult r = step(th, y, dir * mid);
          if (r.ok && r.y[2] > opts_.z_floor) {
            a = mid;
          } else {
            b = mid;
          }
        }
        if (a > 0.0) {
          const StepResult above = step(th, y, dir * a);
          if (above.ok) out_.samples.push_back(CurveState{above.y[0], above.y[1], above.y[2], th + dir * a});
        }
        const StepResult below = step(th, y, dir * b);
        const CurveState& lastst = out_.samples.back();
        out_.end = below.ok ? BoundaryContact{below.y[2], th + dir * b} : BoundaryContact{lastst.z, lastst.theta};
        return;
      }
      th = last ? target : th + dir * h;
      y = st.y;
      out_.samples.push_back(CurveState{y[0], y[1], y[2], th});
      if (last) break;
      if (opts_.integrator == Integrator::DormandPrince) {
        h *= st.err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(st.err, -0.2));
      }
    }
    out_.end = VerticalTangent{out_.samples.back().s};
  }

  const Closure& cl_;
  const TraceOptions& opts_;
  double sigma_;
  HalfTrace out_;
};

std::optional<double> theta_rate(const WeingartenSpec& spec, double z, double theta, double tol) {
  if (std::holds_alternative<Kappa1Constant>(spec) || std::holds_alternative<Kappa2Constant>(spec)) {
    return std::nullopt;
  }
  return make_closure(spec, tol).rate(z, theta);
}

TerminationReason mirror_reason(const TerminationReason& r, double s0, double theta0) {
  return std::visit(
      [&](const auto& v) -> TerminationReason {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoundaryContact>) {
          return BoundaryContact{v.z_final, 2.0 * theta0 - v.theta_final};
        } else if constexpr (std::is_same_v<T, VerticalTangent>) {
          return VerticalTangent{2.0 * s0 - v.s};
        } else if constexpr (std::is_same_v<T, SymmetryPoint>) {
          return SymmetryPoint{2.0 * s0 - v.s, 2.0 * theta0 - v.theta};
        } else {
          return v;
        }
      },
      r);
}

}  // namespace

const char* termination_name(const TerminationReason& reason) noexcept {
  switch (reason.index()) {
    case 0: return "BoundaryContact";
    case 1: return "VerticalTangent";
    case 2: return "SymmetryPoint";
    case 3: return "MaxArcLength";
    default: return "StepUnderflow";
  }
}

void TraceOptions::validate() const {
  const bool ok = s_max > 0.0 && z_floor > 0.0 && z_floor < 1.0 && rel_tol > 0.0 && abs_tol > 0.0 &&
                  max_step > 0.0 && event_tol > 0.0 && max_turn > 0.0 && fixed_step > 0.0;
  if (!ok) throw Error(ErrorCode::InvalidArgument, "trace options must be positive with z_floor < 1");
}

Derivative derivative(const WeingartenSpec& spec, const CurveState& state, double event_tol) {
  const Closure cl = make_closure(spec, event_tol);
  if (!(state.z > 0.0)) throw Error(ErrorCode::NonpositiveHeight, "z must be positive");
  const double c = std::cos(state.theta);
  if (cl.gauss && std::abs(c) <= event_tol) {
    throw Error(ErrorCode::SingularVerticalTangent, "constant-K closure is singular at cos(theta) = 0");
  }
  const auto r = cl.rate(state.z, state.theta);
  if (!r) throw Error(ErrorCode::SingularVerticalTangent, "theta' is not finite");
  return Derivative{c, std::sin(state.theta), *r};
}

GeneratingCurve trace(const WeingartenSpec& spec, const InitialConditions& ic, const TraceOptions& opts) {
  opts.validate();
  const Closure cl = make_closure(spec, opts.event_tol);
  if (const auto* lp = std::get_if<LinearPrincipal>(&spec); lp && is_trivial(*lp)) {
    throw Error(ErrorCode::UnsupportedSpec, "umbilic and constant mean curvature relations are not traced");
  }
  if (ic.x0 != 0.0 || ic.z0 != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "initial point must be (0, 1)");
  }
  if (!std::isfinite(ic.theta0)) throw Error(ErrorCode::InvalidArgument, "theta0 must be finite");

  GeneratingCurve curve;
  curve.spec = spec;
  curve.ic = ic;
  curve.ic.theta0 = normalize_angle(ic.theta0);
  curve.options = opts;

  const CurveState start{0.0, 0.0, 1.0, curve.ic.theta0};
  HalfTrace back = HalfIntegrator(cl, opts, -1.0).run(start);
  HalfTrace fwd = HalfIntegrator(cl, opts, 1.0).run(start);

  curve.samples.reserve(back.samples.size() + fwd.samples.size());
  for (auto it = back.samples.rbegin(); it != back.samples.rend(); ++it) curve.samples.push_back(*it);
  curve.samples.insert(curve.samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
  curve.left_end = back.end;
  curve.right_end = fwd.end;

  for (auto it = back.symmetry.rbegin(); it != back.symmetry.rend(); ++it) curve.symmetry_points.push_back(*it);
  curve.symmetry_points.insert(curve.symmetry_points.end(), fwd.symmetry.begin(), fwd.symmetry.end());
  return curve;
}

CurveState state_at(const GeneratingCurve& curve, double s) {
  const auto& smp = curve.samples;
  if (smp.empty()) throw Error(ErrorCode::EmptyCurve, "curve has no samples");
  if (s < smp.front().s || s > smp.back().s) throw Error(ErrorCode::OutOfDomain, "s outside the traced range");
  auto it = std::lower_bound(smp.begin(), smp.end(), s, [](const CurveState& a, double v) { return a.s < v; });
  if (it != smp.end() && it->s == s) return *it;
  const CurveState& p1 = *it;
  const CurveState& p0 = *(it - 1);

  const double d = p1.s - p0.s;
  const double t = (s - p0.s) / d;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  auto herm = [&](double a0, double m0, double a1, double m1) { return h00 * a0 + h10 * d * m0 + h01 * a1 + h11 * d * m1; };

  CurveState out;
  out.s = s;
  out.x = herm(p0.x, std::cos(p0.theta), p1.x, std::cos(p1.theta));
  out.z = herm(p0.z, std::sin(p0.theta), p1.z, std::sin(p1.theta));
  const double tol = curve.options.event_tol;
  const auto r0 = theta_rate(curve.spec, p0.z, p0.theta, tol);
  const auto r1 = theta_rate(curve.spec, p1.z, p1.theta, tol);
  if (r0 && r1) {
    out.theta = herm(p0.theta, *r0, p1.theta, *r1);
  } else {
    out.theta = p0.theta + t * (p1.theta - p0.theta);
  }
  return out;
}

GeneratingCurve reflect_extend(const GeneratingCurve& curve, double s0) {
  const CurveState pivot = state_at(curve, s0);
  if (std::abs(std::sin(pivot.theta)) > curve.options.event_tol) {
    throw Error(ErrorCode::NotAnExtremum, "z' does not vanish at the reflection point");
  }
  auto mirror = [&](const CurveState& p) {
    return CurveState{2.0 * s0 - p.s, 2.0 * pivot.x - p.x, p.z, 2.0 * pivot.theta - p.theta};
  };

  GeneratingCurve out = curve;
  std::vector<CurveState> left_ext;
  std::vector<CurveState> right_ext;
  for (const CurveState& p : curve.samples) {
    const CurveState q = mirror(p);
    if (p.s > s0 && q.s < curve.s_begin()) left_ext.push_back(q);
    if (p.s < s0 && q.s > curve.s_end()) right_ext.push_back(q);
  }
  std::reverse(left_ext.begin(), left_ext.end());
  std::reverse(right_ext.begin(), right_ext.end());

  if (!left_ext.empty()) {
    out.left_end = mirror_reason(curve.right_end, s0, pivot.theta);
    out.samples.insert(out.samples.begin(), left_ext.begin(), left_ext.end());
  }
  if (!right_ext.empty()) {
    out.right_end = mirror_reason(curve.left_end, s0, pivot.theta);
    out.samples.insert(out.samples.end(), right_ext.begin(), right_ext.end());
  }

  std::vector<double> sym = curve.symmetry_points;
  for (double p : curve.symmetry_points) {
    const double q = 2.0 * s0 - p;
    if (q < curve.s_begin() || q > curve.s_end()) sym.push_back(q);
  }
  std::sort(sym.begin(), sym.end());
  out.symmetry_points = std::move(sym);
  return out;
}

GeneratingCurve sub_curve(const GeneratingCurve& curve, double s_lo, double s_hi) {
  GeneratingCurve out = curve;
  out.samples.clear();
  for (const CurveState& p : curve.samples) {
    if (p.s >= s_lo && p.s <= s_hi) out.samples.push_back(p);
  }
  if (out.samples.empty()) throw Error(ErrorCode::EmptyCurve, "no samples in the requested range");
  if (out.samples.front().s != curve.s_begin()) out.left_end = MaxArcLength{};
  if (out.samples.back().s != curve.s_end()) out.right_end = MaxArcLength{};
  out.symmetry_points.clear();
  for (double p : curve.symmetry_points) {
    if (p >= s_lo && p <= s_hi) out.symmetry_points.push_back(p);
  }
  return out;
}

}  // namespace weingarten
