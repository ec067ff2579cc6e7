#include "fibrenorm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fibrenorm {

std::uint64_t fib(int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "fib index must be >= 0");
  std::uint64_t a = 1, b = 2;
  for (int i = 0; i < n; ++i) {
    std::uint64_t next = 0;
    if (__builtin_add_overflow(a, b, &next))
      throw Error(ErrorKind::range, "S_" + std::to_string(n) + " overflows 64 bits",
                  static_cast<double>(n));
    a = b;
    b = next;
  }
  return a;
}

PowerFamilyMap::PowerFamilyMap(int degree_, long double c_) : degree(degree_), c(c_) {
  if (degree < 2 || degree % 2 != 0)
    throw Error(ErrorKind::usage, "degree must be even and >= 2, got " + std::to_string(degree));
}

namespace {

template <class T>
T ipow(T x, int k) {
  T r = T(1);
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

}  // namespace

long double PowerFamilyMap::operator()(long double x) const { return ipow(x, degree) + c; }
double PowerFamilyMap::operator()(double x) const {
  return ipow(x, degree) + static_cast<double>(c);
}
cplx PowerFamilyMap::operator()(cplx z) const { return ipow(z, degree) + static_cast<double>(c); }
cplxl PowerFamilyMap::operator()(cplxl z) const { return ipow(z, degree) + c; }
long double PowerFamilyMap::derivative(long double x) const {
  return degree * ipow(x, degree - 1);
}

double escape_radius(const PowerFamilyMap& f) {
  const double ac = std::fabs(static_cast<double>(f.c));
  return std::max(2.0, std::pow(ac + 1.0, 1.0 / (f.degree - 1)) + 1.0);
}

ReturnSignature closest_returns(const PowerFamilyMap& f, std::uint64_t t_max) {
  constexpr long double tie = 1e-12L;
  const long double radius = escape_radius(f);
  ReturnSignature sig;
  long double x = 0.0L;
  long double best = std::numeric_limits<long double>::infinity();
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    x = f(x);
    const long double ax = std::fabs(x);
    if (!(ax <= radius))
      throw Error(ErrorKind::partial_signature,
                  "critical orbit escapes at t = " + std::to_string(t), static_cast<double>(t));
    if (ax < best && (std::isinf(best) || best - ax > tie)) {
      sig.times.push_back(t);
      best = ax;
    }
  }
  return sig;
}

std::optional<int> escape_time(const PowerFamilyMap& f, cplx z, int max_iter, double radius) {
  return escape_time([&f](cplx w) { return f(w); }, z, max_iter, radius);
}

Interval Interval::divided_by(double s) const {
  const double a = lo / s, b = hi / s;
  return {std::min(a, b), std::max(a, b)};
}

Jet RealTwoBranchMap::operator()(double x) const {
  if (I01.contains(x)) return central(x);
  if (I11.contains(x)) return outer(x);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan};
}

namespace {

double polish_fixed_point(const RealBranch& f2, double x) {
  for (int it = 0; it < 60; ++it) {
    const Jet j = f2(x);
    const double den = j.slope - 1.0;
    if (!std::isfinite(j.value) || !std::isfinite(den) || den == 0.0) break;
    const double step = (j.value - x) / den;
    x -= step;
    if (std::fabs(step) <= 4e-16 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

void check_beta(const RealBranch& f2, double beta, double tol) {
  const Jet j = f2(beta);
  if (!std::isfinite(j.value) || std::fabs(j.value - beta) > tol * (1.0 + std::fabs(beta)))
    throw Error(ErrorKind::no_valid_beta, "f^2(beta) - beta does not vanish",
                std::fabs(j.value - beta));
  if (!(j.slope < 0.0))
    throw Error(ErrorKind::no_valid_beta, "multiplier Df^2(beta) is not negative", j.slope);
}

// Maximal subinterval of `within` around x0 on which pred holds.
Interval component_around(const std::function<bool(double)>& pred, double x0, Interval within,
                          int steps = 4096) {
  if (!within.contains(x0) || !pred(x0)) return {1.0, -1.0};
  const double h = within.width() / steps;
  auto edge = [&](double dir, double limit) {
    double x = x0;
    while (true) {
      double next = x + dir * h;
      if ((dir > 0 && next >= limit) || (dir < 0 && next <= limit)) {
        if (pred(limit)) return limit;
        next = limit;
      } else if (pred(next)) {
        x = next;
        continue;
      }
      double good = x, bad = next;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (good + bad);
        if (m == good || m == bad) break;
        (pred(m) ? good : bad) = m;
      }
      return good;
    }
  };
  return {edge(-1.0, within.lo), edge(1.0, within.hi)};
}

}  // namespace

double beta_fixed_point(const RealBranch& f2, Interval bracket, int scan_points, double tol) {
  if (!(bracket.width() > 0.0) || scan_points < 2)
    throw Error(ErrorKind::precondition, "beta bracket must have positive width");
  std::vector<double> xs(scan_points + 1), gs(scan_points + 1);
  for (int i = 0; i <= scan_points; ++i) {
    xs[i] = bracket.lo + bracket.width() * i / scan_points;
    gs[i] = f2(xs[i]).value - xs[i];
  }
  std::optional<double> best;
  for (int i = 0; i < scan_points; ++i) {
    if (!std::isfinite(gs[i]) || !std::isfinite(gs[i + 1])) continue;
    if ((gs[i] > 0.0) == (gs[i + 1] > 0.0) && gs[i + 1] != 0.0) continue;
    double a = xs[i], b = xs[i + 1], ga = gs[i];
    for (int it = 0; it < 100; ++it) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      const double gm = f2(m).value - m;
      if ((gm > 0.0) == (ga > 0.0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    double r = polish_fixed_point(f2, 0.5 * (a + b));
    if (!(r >= xs[i] - (b - a) && r <= xs[i + 1] + (b - a))) r = 0.5 * (a + b);
    const Jet j = f2(r);
    if (!(j.slope < 0.0)) continue;
    if (!best || std::fabs(r) < std::fabs(*best)) best = r;
  }
  if (!best)
    throw Error(ErrorKind::no_valid_beta,
                "no fixed point of f^2 with negative multiplier in bracket");
  check_beta(f2, *best, tol);
  return *best;
}

double beta_fixed_point_from_seed(const RealBranch& f2, double seed, double tol) {
  const double beta = polish_fixed_point(f2, seed);
  if (!std::isfinite(beta)) throw Error(ErrorKind::no_valid_beta, "Newton for beta diverged");
  check_beta(f2, beta, tol);
  return beta;
}

namespace {

void validate_intervals(const RealTwoBranchMap& f) {
  if (!f.central || !f.outer) throw Error(ErrorKind::malformed_input, "branches not set");
  const Interval& a = f.I01;
  const Interval& b = f.I11;
  if (!(a.width() > 0.0) || !(b.width() > 0.0))
    throw Error(ErrorKind::malformed_input, "intervals must have positive width");
  if (!a.interior(0.0)) throw Error(ErrorKind::malformed_input, "0 must be interior to I_0^1");
  if (std::fabs(a.lo + a.hi) > 1e-9 * a.width())
    throw Error(ErrorKind::malformed_input, "I_0^1 must be symmetric about 0");
  if (b.contains(0.0)) throw Error(ErrorKind::malformed_input, "0 must not lie in I_1^1");
  if (a.intersects(b)) throw Error(ErrorKind::malformed_input, "I_0^1 and I_1^1 overlap");
}

}  // namespace

RealRenormData real_renorm_data(const RealTwoBranchMap& f) {
  validate_intervals(f);
  RealRenormData d;
  d.I01 = f.I01;
  d.I11 = f.I11;
  const double o1 = f.outer(f.I11.lo).value, o2 = f.outer(f.I11.hi).value;
  d.I00 = {std::min(o1, o2), std::max(o1, o2)};

  const double v1 = f.central(0.0).value;
  if (!f.I11.contains(v1)) throw Error(ErrorKind::precondition, "f(0) not in I_1^1");
  const double v2 = f.outer(v1).value;
  if (!f.I01.contains(v2)) throw Error(ErrorKind::precondition, "f^2(0) not in I_0^1");
  const double v3 = f.central(v2).value;
  if (!f.I01.contains(v3)) throw Error(ErrorKind::precondition, "f^3(0) not in I_0^1");

  auto in11 = [&](double x) { return f.I11.contains(f.central(x).value); };
  const Interval dom2 = component_around(in11, 0.0, f.I01);
  RealBranch f2 = [&](double x) {
    const Jet g = f.central(x);
    const Jet h = f.outer(g.value);
    return Jet{h.value, h.slope * g.slope};
  };
  try {
    d.beta = beta_fixed_point(f2, dom2);
  } catch (const Error& e) {
    throw Error(ErrorKind::precondition, std::string("central component of dom f^2: ") + e.what());
  }

  auto ret0 = [&](double x) {
    const double g = f.central(x).value;
    return f.I11.contains(g) && f.I01.contains(f.outer(g).value);
  };
  auto ret1 = [&](double y) { return f.I01.contains(f.central(y).value); };
  d.I02 = component_around(ret0, 0.0, f.I01);
  d.I12 = component_around(ret1, v2, f.I01);
  if (!(d.I02.width() > 0.0) || !(d.I12.width() > 0.0) || d.I02.intersects(d.I12))
    throw Error(ErrorKind::precondition, "first-return components I_0^2, I_1^2 not disjoint");

  const double tol = 1e-9 * d.I00.width();
  auto on_edge = [&](double y) {
    return std::fabs(y - d.I00.lo) <= tol || std::fabs(y - d.I00.hi) <= tol;
  };
  d.boundary_preserved = on_edge(f.central(f.I01.lo).value) &&
                         on_edge(f.central(f.I01.hi).value) && on_edge(o1) && on_edge(o2);
  return d;
}

bool is_fibonacci_renormalizable(const RealTwoBranchMap& f) {
  validate_intervals(f);
  try {
    real_renorm_data(f);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::precondition) return false;
    throw;
  }
}

RealTwoBranchMap real_renormalize(const RealTwoBranchMap& f, RealRenormData* out) {
  const RealRenormData d = real_renorm_data(f);
  if (out) *out = d;
  const double b = d.beta;
  if (std::fabs(b) < 1e-12) throw Error(ErrorKind::singular_rescale, "beta vanishes", b);
  RealBranch g = f.central;
  RealBranch h = f.outer;
  RealTwoBranchMap r;
  r.central = [g, h, b](double x) {
    const Jet u = g(b * x);
    const Jet v = h(u.value);
    return Jet{v.value / b, v.slope * u.slope};
  };
  r.outer = [g, b](double x) {
    const Jet u = g(b * x);
    return Jet{u.value / b, u.slope};
  };
  r.I01 = d.I02.divided_by(b);
  const double half = 0.5 * r.I01.width();
  if (std::fabs(r.I01.mid()) > 1e-6 * half)
    throw Error(ErrorKind::numerical_failure, "renormalized central interval is not symmetric");
  r.I01 = {-half, half};
  r.I11 = d.I12.divided_by(b);
  return r;
}

}  // namespace fibrenorm
