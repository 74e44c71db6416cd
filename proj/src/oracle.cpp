#include "bsym/oracle.hpp"

#include "bsym/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bsym {

void OracleConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("OracleConfig: tolerances must be positive");
  if (max_steps < 1) throw std::invalid_argument("OracleConfig: max_steps must be >= 1");
  if (!(blowup_threshold > 0.0)) throw std::invalid_argument("OracleConfig: blowup_threshold must be positive");
  if (!(max_step > 0.0)) throw std::invalid_argument("OracleConfig: max_step must be positive");
}

bool Trajectory::covers(double t) const noexcept {
  const double t0 = samples_.front().t;
  const double t1 = samples_.back().t;
  return t >= std::min(t0, t1) && t <= std::max(t0, t1);
}

double Trajectory::operator()(double t) const {
  if (!covers(t))
    throw DomainError("t = " + std::to_string(t) + " lies outside the integrated range ending at " +
                      std::to_string(t_reached()));
  if (segments_.empty()) return samples_.front().y;
  // Segments run away from t = 0; order them by distance along the direction.
  const double dir = segments_.front().h > 0.0 ? 1.0 : -1.0;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), dir * t,
                             [dir](double key, const Segment& s) { return key < dir * s.t0; });
  if (it != segments_.begin()) --it;
  const Segment& s = *it;
  const double theta = std::clamp((t - s.t0) / s.h, 0.0, 1.0);
  const double one = 1.0 - theta;
  return s.r[0] + theta * (s.r[1] + one * (s.r[2] + theta * (s.r[3] + one * s.r[4])));
}

namespace {

// Dormand-Prince 5(4) tableau with the Hairer-Wanner dense output weights.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

class Rhs {
public:
  explicit Rhs(const ProblemSpec& p) : a_(p.a), b_(p.b), n_(p.n.value()) {}

  double operator()(double t, double y) const {
    const double v = a_(t) * y + b_(t) * signed_pow(y, n_);
    if (!std::isfinite(v)) throw DomainError("non-finite derivative at t = " + std::to_string(t));
    return v;
  }

private:
  const Expr& a_;
  const Expr& b_;
  Rational n_;
};

double initial_step(const Rhs& f, double y0, double f0, double span, double dir, const OracleConfig& cfg) {
  const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0);
  const double dy0 = std::abs(y0) / sc;
  const double df0 = std::abs(f0) / sc;
  double h0 = (dy0 < 1e-5 || df0 < 1e-5) ? 1e-6 : 0.01 * dy0 / df0;
  h0 = std::min(h0, span);
  double h1 = 0.0;
  try {
    const double f1 = f(dir * h0, y0 + dir * h0 * f0);
    const double df1 = std::abs(f1 - f0) / sc / h0;
    const double m = std::max(df0, df1);
    h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 1.0 / 5.0);
  } catch (const Error&) {
    h1 = h0 * 1e-3;
  }
  return std::min({100.0 * h0, h1, span});
}

} // namespace

Trajectory rk_solve(const ProblemSpec& p, double t_end, const OracleConfig& cfg) {
  validate(p);
  cfg.validate();
  if (!std::isfinite(t_end)) throw std::invalid_argument("rk_solve: t_end must be finite");

  Trajectory traj;
  traj.samples_.push_back({0.0, p.d});
  if (t_end == 0.0) return traj;

  const Rhs f(p);
  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  double t = 0.0;
  double y = p.d;
  double k1 = f(t, y);
  double h = dir * initial_step(f, y, k1, std::abs(t_end), dir, cfg);
  bool rejected_last = false;
  const double large = std::sqrt(cfg.blowup_threshold);

  for (long step = 0; step < cfg.max_steps; ++step) {
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      if (std::abs(y) > large) {
        traj.status_ = OracleStatus::BlowUp;
        return traj;
      }
      throw StepFailure("step size underflow at t = " + std::to_string(t) + ", y = " + std::to_string(y));
    }
    if (std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
    const bool last = dir * (t + h - t_end) >= 0.0;
    if (last) h = t_end - t;

    double k2, k3, k4, k5, k6, k7, y1;
    try {
      k2 = f(t + c2 * h, y + h * a21 * k1);
      k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      k7 = f(t + h, y1);
    } catch (const DomainError& e) {
      // A trial stage left the real domain of y^n; retry with a smaller step
      // and give up only when the step collapses.
      if (std::abs(h) < 1e-12 * std::max(1.0, std::abs(t))) throw;
      h *= 0.25;
      rejected_last = true;
      continue;
    }

    const double err_abs = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y), std::abs(y1));
    const double err = err_abs / sc;

    if (err <= 1.0) {
      Trajectory::Segment seg{t, h, {}};
      seg.r[0] = y;
      seg.r[1] = y1 - y;
      seg.r[2] = h * k1 - seg.r[1];
      seg.r[3] = seg.r[1] - h * k7 - seg.r[2];
      seg.r[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      traj.segments_.push_back(seg);

      t = last ? t_end : t + h;
      y = y1;
      k1 = k7;
      traj.samples_.push_back({t, y});
      if (std::abs(y) > cfg.blowup_threshold) {
        traj.status_ = OracleStatus::BlowUp;
        return traj;
      }
      if (last) return traj;
      double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (rejected_last) fac = std::min(fac, 1.0);
      h *= fac;
      rejected_last = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      rejected_last = true;
    }
  }
  throw StepFailure("max_steps exhausted at t = " + std::to_string(t));
}

} // namespace bsym
