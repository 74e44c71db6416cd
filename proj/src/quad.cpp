#include "bsym/quad.hpp"

#include "bsym/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bsym {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("QuadConfig: tolerances must be positive");
  if (max_depth < 1) throw std::invalid_argument("QuadConfig: max_depth must be >= 1");
}

namespace {

constexpr int kNodes = 15;
constexpr int kGauss = 7;

// Kronrod abscissae and weights for the 7/15 pair (QUADPACK qk15), listed
// from the outermost node inward.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  std::array<double, kNodes> x{};      // ascending on [-1, 1]
  std::array<double, kNodes> wk{};     // Kronrod weights
  std::array<double, kNodes> wg{};     // Gauss weights, zero on Kronrod-only nodes
  std::array<int, kGauss> gauss_index{};
  // cumulative[k][j] = int_{-1}^{x_k} L_j, with L_j the Lagrange basis on all
  // 15 nodes; cumulative7 uses the basis on the 7 Gauss nodes only.
  std::array<std::array<double, kNodes>, kNodes> cumulative{};
  std::array<std::array<double, kGauss>, kNodes> cumulative7{};

  Rule() {
    for (int i = 0; i < 7; ++i) {
      x[i] = -kXgk[i];
      x[14 - i] = kXgk[i];
      wk[i] = wk[14 - i] = kWgk[i];
    }
    x[7] = 0.0;
    wk[7] = kWgk[7];
    for (int i = 0; i < 3; ++i) wg[2 * i + 1] = wg[13 - 2 * i] = kWg[i];
    wg[7] = kWg[3];
    for (int g = 0; g < kGauss; ++g) gauss_index[g] = 2 * g + 1;

    auto lagrange = [](const auto& nodes, int j, double y) {
      double v = 1.0;
      for (int m = 0; m < static_cast<int>(nodes.size()); ++m)
        if (m != j) v *= (y - nodes[m]) / (nodes[j] - nodes[m]);
      return v;
    };
    std::array<double, kGauss> gx{};
    for (int g = 0; g < kGauss; ++g) gx[g] = x[gauss_index[g]];

    // The Kronrod rule is exact to degree 22, so integrating the degree-14
    // basis over [-1, x_k] with it is exact up to rounding.
    for (int k = 0; k < kNodes; ++k) {
      const double half = 0.5 * (x[k] + 1.0);
      for (int m = 0; m < kNodes; ++m) {
        const double y = -1.0 + half * (1.0 + x[m]);
        for (int j = 0; j < kNodes; ++j) cumulative[k][j] += half * wk[m] * lagrange(x, j, y);
        for (int g = 0; g < kGauss; ++g) cumulative7[k][g] += half * wk[m] * lagrange(gx, g, y);
      }
    }
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct Estimate {
  double kronrod = 0.0;
  double error = 0.0;
};

Estimate gk15(const Expr& f, double lo, double hi) {
  const Rule& R = rule();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double k = 0.0;
  double g = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double v = f(mid + half * R.x[i]);
    k += R.wk[i] * v;
    g += R.wg[i] * v;
  }
  return {half * k, std::abs(half * (k - g))};
}

double adapt(const Expr& f, double lo, double hi, Estimate est, double tol_density, int depth, const QuadConfig& cfg) {
  if (est.error <= tol_density * (hi - lo)) return est.kronrod;
  if (depth >= cfg.max_depth)
    throw NoConvergence("integral_A: no convergence on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const double mid = 0.5 * (lo + hi);
  const Estimate left = gk15(f, lo, mid);
  const Estimate right = gk15(f, mid, hi);
  return adapt(f, lo, mid, left, tol_density, depth + 1, cfg) + adapt(f, mid, hi, right, tol_density, depth + 1, cfg);
}

constexpr double kDefaultStep = 0.25;
constexpr double kMaxStep = 1.0;

} // namespace

double integral_A(const Expr& a, double t, const QuadConfig& cfg) {
  cfg.validate();
  if (t == 0.0) return 0.0;
  const double lo = std::min(0.0, t);
  const double hi = std::max(0.0, t);
  const Estimate whole = gk15(a, lo, hi);
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole.kronrod));
  const double value = adapt(a, lo, hi, whole, tol / (hi - lo), 0, cfg);
  return t < 0.0 ? -value : value;
}

// ---------------------------------------------------------------------------

NestedIntegral::NestedIntegral(Expr a, Expr b, double weight_exponent, QuadConfig cfg)
    : a_(std::move(a)), b_(std::move(b)), k_(weight_exponent), cfg_(cfg) {
  cfg_.validate();
}

NestedIntegral::Point NestedIntegral::advance(const Point& from, double to) const {
  double h = kDefaultStep;
  return march(from, to, h);
}

NestedIntegral::Point NestedIntegral::march(const Point& from, double to, double& h_hint) const {
  const Rule& R = rule();
  Point p = from;
  if (to == p.t) return p;
  const double dir = to > p.t ? 1.0 : -1.0;
  const double min_step = std::max(std::abs(to - from.t), 1.0) * std::ldexp(1.0, -cfg_.max_depth);
  double h = dir * std::min(std::abs(h_hint), kMaxStep);

  std::array<double, kNodes> av{};
  std::array<double, kNodes> fv{};
  for (;;) {
    const double remaining = to - p.t;
    const bool last = std::abs(h) >= std::abs(remaining);
    const double step = last ? remaining : h;
    const double half = 0.5 * step;

    double dA_k = 0.0;
    double dA_g = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      av[i] = a_(p.t + half * (1.0 + R.x[i]));
      dA_k += R.wk[i] * av[i];
      dA_g += R.wg[i] * av[i];
    }
    double interp_gap = 0.0;
    double dW_k = 0.0;
    double dW_g = 0.0;
    double abs_w = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      double full = 0.0;
      for (int j = 0; j < kNodes; ++j) full += R.cumulative[i][j] * av[j];
      double coarse = 0.0;
      for (int g = 0; g < kGauss; ++g) coarse += R.cumulative7[i][g] * av[R.gauss_index[g]];
      interp_gap = std::max(interp_gap, std::abs(half * (full - coarse)));
      const double A_i = p.A + half * full;
      const double weight = std::exp(k_ * A_i);
      if (!std::isfinite(weight)) throw EvalError("exp overflow in weighted integrand near t = " + std::to_string(p.t));
      fv[i] = b_(p.t + half * (1.0 + R.x[i])) * weight;
      if (!std::isfinite(fv[i])) throw EvalError("non-finite weighted integrand near t = " + std::to_string(p.t));
      dW_k += R.wk[i] * fv[i];
      dW_g += R.wg[i] * fv[i];
      abs_w += R.wk[i] * std::abs(fv[i]);
    }
    const double dA = half * dA_k;
    const double dW = half * dW_k;
    const double errA = std::abs(half * (dA_k - dA_g));
    const double errW = std::abs(half * (dW_k - dW_g)) + std::abs(k_) * interp_gap * std::abs(half) * abs_w;
    const double tolA = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(p.A + dA));
    const double tolW = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(p.W + dW));
    const double ratio = std::max(errA / tolA, errW / tolW);

    if (ratio <= 1.0) {
      p.A += dA;
      p.W += dW;
      p.t = last ? to : p.t + step;
      if (last) {
        h_hint = h;
        return p;
      }
      if (ratio < 1e-3) h = dir * std::min(2.0 * std::abs(h), kMaxStep);
    } else {
      h = 0.5 * step;
      if (std::abs(h) < min_step)
        throw NoConvergence("nested integral: step underflow near t = " + std::to_string(p.t));
    }
  }
}

std::vector<NestedIntegral::Point> NestedIntegral::sweep(std::span<const double> ts) const {
  std::vector<Point> out(ts.size());
  std::vector<std::size_t> order(ts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ts[i] < ts[j]; });

  // Non-negative points ascending from 0, negative points descending from 0.
  const auto split = std::partition_point(order.begin(), order.end(), [&](std::size_t i) { return ts[i] < 0.0; });
  double h = kDefaultStep;
  Point p;
  for (auto it = split; it != order.end(); ++it) {
    p = march(p, ts[*it], h);
    out[*it] = p;
  }
  h = kDefaultStep;
  p = Point{};
  for (auto it = split; it != order.begin();) {
    --it;
    p = march(p, ts[*it], h);
    out[*it] = p;
  }
  return out;
}

double weighted_integral(const Expr& a, const Expr& b, double k, double t, const QuadConfig& cfg) {
  return NestedIntegral(a, b, k, cfg).advance({}, t).W;
}

double integral_B(const Expr& a, const Expr& b, const RationalExponent& n, double t, const QuadConfig& cfg) {
  return weighted_integral(a, b, n.minus_one().to_double(), t, cfg);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Identity id) {
  switch (id) {
  case Identity::Eq4: return "Eq4";
  case Identity::Eq7: return "Eq7";
  case Identity::Eq8: return "Eq8";
  case Identity::Eq9: return "Eq9";
  }
  return "?";
}

void require_identity_parity(Identity id, const Expr& a, const Expr& b) {
  Parity need_a = Parity::Even;
  Parity need_b = Parity::Even;
  switch (id) {
  case Identity::Eq4: need_b = Parity::Odd; break;
  case Identity::Eq7: need_a = Parity::Odd; break;
  case Identity::Eq8:
  case Identity::Eq9: break;
  }
  const Parity pa = detect_parity(a);
  const Parity pb = detect_parity(b);
  if (pa != need_a || pb != need_b)
    throw ParityViolation(std::string(to_string(id)) + " requires a " + std::string(to_string(need_a)) + " and b " +
                          std::string(to_string(need_b)) + ", got a " + std::string(to_string(pa)) + " and b " +
                          std::string(to_string(pb)));
}

IdentitySides identity_sides(Identity id, const Expr& a, const Expr& b, const RationalExponent& n, double t,
                             const QuadConfig& cfg) {
  require_identity_parity(id, a, b);
  const double k = n.minus_one().to_double();
  const NestedIntegral plus(a, b, k, cfg);
  const NestedIntegral minus(a, b, -k, cfg);
  // int_{-t}^0 f = -int_0^{-t} f
  auto left_of = [&](const NestedIntegral& w) { return -w.advance({}, -t).W; };
  auto right_of = [&](const NestedIntegral& w) { return w.advance({}, t).W; };
  switch (id) {
  case Identity::Eq4: return {left_of(minus), -right_of(plus)};
  case Identity::Eq7: return {left_of(plus), right_of(plus)};
  case Identity::Eq8: return {left_of(plus), right_of(minus)};
  case Identity::Eq9: return {left_of(minus), right_of(plus)};
  }
  return {};
}

double check_identity(Identity id, const Expr& a, const Expr& b, const RationalExponent& n, double t,
                      const QuadConfig& cfg) {
  const IdentitySides s = identity_sides(id, a, b, n, t, cfg);
  return std::abs(s.lhs - s.rhs);
}

} // namespace bsym
