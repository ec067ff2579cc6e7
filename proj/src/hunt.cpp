#include "fibrenorm/hunt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace fibrenorm {

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

long double eval_return(int degree, long double c, std::uint64_t period) {
  long double x = 0.0L;
  for (std::uint64_t t = 0; t < period; ++t) x = ipow(x, degree) + c;
  return x;
}

bool adjacent(long double a, long double b) {
  return std::nextafter(a, b) == b || a == b;
}

}  // namespace

ReturnSignature fibonacci_prefix(int n) {
  ReturnSignature s;
  for (int k = 0; k <= n; ++k) s.times.push_back(fib(k));
  return s;
}

std::pair<long double, long double> critical_return(int degree, long double c,
                                                    std::uint64_t period) {
  long double x = 0.0L, dx = 0.0L;
  for (std::uint64_t t = 0; t < period; ++t) {
    dx = degree * ipow(x, degree - 1) * dx + 1.0L;
    x = ipow(x, degree) + c;
  }
  return {x, dx};
}

HuntRecord superattractor_parameter(int degree, int n,
                                    std::pair<long double, long double> bracket) {
  const PowerFamilyMap f(degree, 0.0L);
  if (n < 1) throw Error(ErrorKind::precondition, "hunt depth must be >= 1");
  const std::uint64_t period = fib(n);
  long double a = std::min(bracket.first, bracket.second);
  long double b = std::max(bracket.first, bracket.second);
  long double fa = eval_return(degree, a, period);
  long double fb = eval_return(degree, b, period);
  int iters = 0;
  std::optional<long double> exact;
  if (fa == 0.0L) exact = a;
  if (fb == 0.0L) exact = b;
  if (!exact && (std::signbit(fa) == std::signbit(fb) || std::isnan(fa) || std::isnan(fb)))
    throw Error(ErrorKind::bracket, "no sign change of f^{S_n}(0) in bracket for n = " +
                                        std::to_string(n));

  constexpr long double kTarget = 1e-13L;
  long double best = exact.value_or(0.5L * (a + b));
  if (!exact) {
    // Bisection to width 1e-12, then Newton safeguarded by the bracket.
    while (b - a > 1e-12L && !adjacent(a, b)) {
      const long double m = 0.5L * (a + b);
      const long double fm = eval_return(degree, m, period);
      ++iters;
      if (fm == 0.0L) {
        exact = m;
        break;
      }
      if (std::signbit(fm) == std::signbit(fa)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    best = exact.value_or(0.5L * (a + b));
    for (int it = 0; it < 200 && !exact && !adjacent(a, b); ++it) {
      const auto [v, dv] = critical_return(degree, best, period);
      ++iters;
      if (v == 0.0L) {
        exact = best;
        break;
      }
      if (std::signbit(v) == std::signbit(fa)) {
        a = best;
        fa = v;
      } else {
        b = best;
      }
      if (std::fabs(v) < kTarget) break;
      long double next = best - v / dv;
      if (!(next > a && next < b) || !std::isfinite(next)) next = 0.5L * (a + b);
      if (next == best) break;
      best = next;
    }
  }
  long double c = exact.value_or(best);
  if (!exact) {
    // Representable parameter with the smallest |f^{S_n}(0)|.
    for (long double cand : {a, b}) {
      if (std::fabs(eval_return(degree, cand, period)) < std::fabs(eval_return(degree, c, period)))
        c = cand;
    }
  }
  const long double res = std::fabs(eval_return(degree, c, period));
  if (!(res < kTarget) && !adjacent(a, b))
    throw Error(ErrorKind::non_convergence, "root polish did not converge",
                static_cast<double>(res));

  HuntRecord r;
  r.n = n;
  r.period = period;
  r.c = c;
  r.bracket = bracket;
  r.iterations = iters;
  r.residual = res;
  try {
    r.signature = closest_returns(PowerFamilyMap(degree, c), period);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::partial_signature) throw;
    throw Error(ErrorKind::combinatorics, "critical orbit escapes at the root", e.value());
  }
  if (!(r.signature == fibonacci_prefix(n)))
    throw Error(ErrorKind::combinatorics,
                "root in bracket does not have Fibonacci closest returns for n = " +
                    std::to_string(n));
  return r;
}

std::vector<HuntRecord> fibonacci_bracket_chain(int degree, int n_max) {
  if (n_max < 3) throw Error(ErrorKind::precondition, "n_max must be >= 3");
  PowerFamilyMap(degree, 0.0L);
  constexpr int kGrid = 20000;
  std::vector<HuntRecord> out;
  out.push_back(superattractor_parameter(degree, 1, {-1.5L, -0.5L}));
  for (int n = 2; n <= n_max; ++n) {
    const long double prev = out.back().c;
    long double dir = -1.0L, gap = 1.0L / 1.5L;
    if (n >= 3) {
      const long double before = out[out.size() - 2].c;
      dir = prev < before ? -1.0L : 1.0L;
      gap = std::fabs(prev - before);
    }
    const long double width = 1.5L * gap;
    const long double ulp = std::fabs(std::nextafter(prev, 0.0L) - prev);
    if (width < 64.0L * ulp)
      throw Error(ErrorKind::precision_limit,
                  "parameter window below 64 ulps at n = " + std::to_string(n) +
                      "; max attainable n = " + std::to_string(n - 1),
                  n - 1);
    const std::uint64_t period = fib(n);
    // Grid from the far end of the window towards prev, stopping short of it.
    auto node = [&](int i) {
      if (i == kGrid) return prev + dir * width * 1e-9L;
      return prev + dir * width * (1.0L - static_cast<long double>(i) / kGrid);
    };
    std::optional<HuntRecord> best;
    long double x0 = node(0);
    long double v0 = eval_return(degree, x0, period);
    for (int i = 1; i <= kGrid; ++i) {
      const long double x1 = node(i);
      const long double v1 = eval_return(degree, x1, period);
      if (!std::isnan(v0) && !std::isnan(v1) && std::signbit(v0) != std::signbit(v1)) {
        try {
          HuntRecord r = superattractor_parameter(degree, n, {x0, x1});
          if (!best || std::fabs(r.c - prev) < std::fabs(best->c - prev)) best = r;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::combinatorics && e.kind() != ErrorKind::non_convergence)
            throw;
        }
      }
      x0 = x1;
      v0 = v1;
    }
    if (!best && n >= 4) {
      // Gap predicted from the last ratio; below 64 ulps the sign change
      // drowns in rounding.
      const long double r = (out[out.size() - 3].c - out[out.size() - 2].c) / (out[out.size() - 2].c - prev);
      if (std::fabs(gap / r) < 64.0L * ulp)
        throw Error(ErrorKind::precision_limit,
                    "predicted gap below 64 ulps at n = " + std::to_string(n) +
                        "; max attainable n = " + std::to_string(n - 1),
                    n - 1);
    }
    if (!best)
      throw Error(ErrorKind::bracket,
                  "no Fibonacci superattractor in the window for n = " + std::to_string(n));
    best->bracket = {std::min(prev, prev + dir * width), std::max(prev, prev + dir * width)};
    out.push_back(*best);
  }
  return out;
}

RatioReport ratio_table(const std::vector<long double>& c) {
  if (c.size() < 5) throw Error(ErrorKind::precondition, "ratio table needs >= 5 records");
  RatioReport r;
  for (std::size_t n = 0; n + 2 < c.size(); ++n) {
    const long double den = c[n + 1] - c[n + 2];
    if (den == 0.0L)
      throw Error(ErrorKind::degenerate_sequence,
                  "duplicate parameters at index " + std::to_string(n + 1));
    r.ratios.push_back(static_cast<double>((c[n] - c[n + 1]) / den));
  }
  auto aitken = [](long double x0, long double x1, long double x2) {
    const long double den = x2 - 2.0L * x1 + x0;
    if (den == 0.0L) return x2;
    return x2 - (x2 - x1) * (x2 - x1) / den;
  };
  const std::size_t k = r.ratios.size();
  r.gamma_estimate = r.ratios.back();
  r.extrapolated_gamma = static_cast<double>(aitken(r.ratios[k - 3], r.ratios[k - 2], r.ratios[k - 1]));
  const std::size_t m = c.size();
  r.c_infinity_estimate = aitken(c[m - 3], c[m - 2], c[m - 1]);
  return r;
}

RatioReport ratio_table(const std::vector<HuntRecord>& records) {
  std::vector<long double> c;
  for (const auto& r : records) c.push_back(r.c);
  return ratio_table(c);
}

ReturnMap::ReturnMap(const PowerFamilyMap& f, std::uint64_t max_period) : f_(f) {
  orbit_.reserve(max_period + 1);
  orbit_.push_back(0.0L);
  for (std::uint64_t t = 0; t < max_period; ++t) orbit_.push_back(f_(orbit_.back()));
}

template <class T>
T ReturnMap::deviation(long double tau, std::uint64_t period, T z) const {
  if (period == 0 || period >= orbit_.size())
    throw Error(ErrorKind::precondition, "return period outside the stored orbit");
  const int d = f_.degree;
  T delta = ipow(T(tau) * z, d);
  for (std::uint64_t k = 1; k < period; ++k) {
    const T x = T(orbit_[k]) + delta;
    const long double y = orbit_[k];
    T sum = T(0);
    T xp = T(1);
    for (int j = 0; j < d; ++j) {
      sum += xp * ipow(y, d - 1 - j);
      xp *= x;
    }
    delta *= sum;
  }
  return (T(orbit_[period]) + delta) / T(tau);
}

long double ReturnMap::operator()(long double tau, std::uint64_t period, long double x) const {
  return deviation(tau, period, x);
}

cplxl ReturnMap::operator()(long double tau, std::uint64_t period, cplxl z) const {
  return deviation(tau, period, z);
}

std::pair<long double, long double> ReturnMap::jet(long double tau, std::uint64_t period,
                                                   long double x) const {
  const int d = f_.degree;
  long double der = d * ipow(tau * x, d - 1);
  long double delta = ipow(tau * x, d);
  for (std::uint64_t k = 1; k < period; ++k) {
    const long double xk = orbit_[k] + delta;
    der *= d * ipow(xk, d - 1);
    long double sum = 0.0L, xp = 1.0L;
    for (int j = 0; j < d; ++j) {
      sum += xp * ipow(orbit_[k], d - 1 - j);
      xp *= xk;
    }
    delta *= sum;
  }
  return {(orbit_[period] + delta) / tau, der};
}

std::vector<long double> level_betas(const PowerFamilyMap& f, int m) {
  if (m < 0) throw Error(ErrorKind::precondition, "level depth must be >= 0");
  const ReturnMap ret(f, fib(m + 1));
  constexpr int kScan = 4000;
  constexpr long double kEdge = 0.99L;
  std::vector<long double> betas;
  long double tau = 1.0L;
  for (int k = 0; k < m; ++k) {
    const std::uint64_t period = fib(k + 1);
    auto g = [&](long double x) { return ret(tau, period, x) - x; };
    std::optional<long double> best;
    long double x0 = -kEdge, g0 = g(x0);
    for (int i = 1; i <= kScan; ++i) {
      const long double x1 = -kEdge + 2.0L * kEdge * i / kScan;
      const long double g1 = g(x1);
      if (std::isfinite(g0) && std::isfinite(g1) && std::signbit(g0) != std::signbit(g1)) {
        long double a = x0, b = x1, ga = g0;
        for (int it = 0; it < 200 && !adjacent(a, b); ++it) {
          const long double mid = 0.5L * (a + b);
          const long double gm = g(mid);
          if (gm == 0.0L) {
            a = b = mid;
            break;
          }
          if (std::signbit(gm) == std::signbit(ga)) {
            a = mid;
            ga = gm;
          } else {
            b = mid;
          }
        }
        const long double r = 0.5L * (a + b);
        if (ret.jet(tau, period, r).second < 0.0L && (!best || std::fabs(r) < std::fabs(*best)))
          best = r;
      }
      x0 = x1;
      g0 = g1;
    }
    if (!best)
      throw Error(ErrorKind::no_valid_beta,
                  "no negative-multiplier fixed point at level " + std::to_string(k));
    betas.push_back(*best);
    tau *= *best;
  }
  return betas;
}

long double level_tau(const std::vector<long double>& betas, int k) {
  if (k < 0 || k > static_cast<int>(betas.size()))
    throw Error(ErrorKind::precondition, "level beyond computed betas");
  long double tau = 1.0L;
  for (int i = 0; i < k; ++i) tau *= betas[i];
  return tau;
}

namespace {

cplx unit_root(int j, int m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / m);
}

TruncatedSeries fit_return(const ReturnMap& ret, long double tau, std::uint64_t period,
                           const Disk& disk, int order, Parity parity, double spill) {
  const int m = sample_count(order);
  std::vector<cplx> values(m);
  for (int j = 0; j < m; ++j) {
    const cplx z = disk.chart(unit_root(j, m));
    const cplxl w = ret(tau, period, cplxl(z.real(), z.imag()));
    const cplx v(static_cast<double>(w.real()), static_cast<double>(w.imag()));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e12)
      throw Error(ErrorKind::bootstrap_domain,
                  "rescaled orbit escapes on the disk boundary; use a deeper level or smaller "
                  "disks",
                  std::abs(v));
    values[j] = v;
  }
  return fit_from_samples(disk, values, order, parity, spill);
}

}  // namespace

SliceMap level_slice_map(const PowerFamilyMap& f, const std::vector<long double>& betas, int k,
                         const Disk& u0, int order0, const Disk& u1, int order1, bool even_mode,
                         double spill) {
  const long double tau = level_tau(betas, k);
  const ReturnMap ret(f, fib(std::max(k, 0)));
  const std::uint64_t pc = fib(k);
  const std::uint64_t po = k >= 1 ? fib(k - 1) : 1;
  TruncatedSeries central = fit_return(ret, tau, pc, u0, order0,
                                       even_mode ? Parity::even : Parity::all, spill);
  TruncatedSeries outer = fit_return(ret, tau, po, u1, order1, Parity::all, spill);
  // The critical point has exact order d; drop the round-off in c_1..c_{d-1}.
  std::vector<cplx> c(central.coeffs());
  for (int i = 1; i < f.degree && i < static_cast<int>(c.size()); ++i) c[i] = 0.0;
  return SliceMap(f.degree, TruncatedSeries(u0, std::move(c), central.parity()), std::move(outer),
                  even_mode);
}

SliceMap bootstrap_slice_map(const PowerFamilyMap& f, int m, const Disk& u0, int order0,
                             const Disk& u1, int order1, bool even_mode) {
  if (m < 1) throw Error(ErrorKind::precondition, "bootstrap depth must be >= 1");
  const auto betas = level_betas(f, m);
  SliceMap s = level_slice_map(f, betas, m, u0, order0, u1, order1, even_mode);
  std::vector<cplx> c(s.central.coeffs());
  c[0] += 1.0 - s.central.eval_unchecked(1.0);
  s.central = TruncatedSeries(u0, std::move(c), s.central.parity());
  s.validate();
  return s;
}

}  // namespace fibrenorm

namespace fibrenorm {

LevelDisks plan_level_disks(const PowerFamilyMap& f, const std::vector<long double>& betas,
                            int n, const Disk& u0_last, double u1_radius_last, double grow) {
  if (n < 0 || n > static_cast<int>(betas.size()))
    throw Error(ErrorKind::precondition, "level plan deeper than the computed betas");
  const ReturnMap ret(f, fib(n));
  constexpr int kSamples = 512;
  LevelDisks plan;
  plan.u0.resize(n + 1);
  plan.u1.resize(n + 1);
  const long double tau_n = level_tau(betas, n);
  plan.u0[n] = u0_last;
  plan.u1[n] = Disk(static_cast<double>(ret(tau_n, fib(n), 0.0L)), u1_radius_last);
  for (int k = n - 1; k >= 0; --k) {
    const double b = static_cast<double>(betas[k]);
    const long double tau = level_tau(betas, k);
    double reach = 0.0;
    std::vector<cplx> image(kSamples);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < kSamples; ++j) {
      const cplx z0 = b * plan.u0[k + 1].boundary_point(j, kSamples);
      const cplx z1 = b * plan.u1[k + 1].boundary_point(j, kSamples);
      reach = std::max({reach, std::abs(z0), std::abs(z1)});
      const cplxl w = ret(tau, fib(k), cplxl(z0.real(), z0.imag()));
      image[j] = cplx(static_cast<double>(w.real()), static_cast<double>(w.imag()));
      lo = std::min(lo, image[j].real());
      hi = std::max(hi, image[j].real());
    }
    const double center = 0.5 * (lo + hi);
    double spread = 0.0;
    for (const cplx& w : image) spread = std::max(spread, std::abs(w - center));
    plan.u0[k] = Disk(0.0, std::max(u0_last.outer_radius(), grow * reach));
    plan.u1[k] = Disk(center, grow * spread);
  }
  return plan;
}

ReturnIdentityReport return_map_identity(const PowerFamilyMap& f, int n, const Disk& u0,
                                         double u1_radius, int order, int samples) {
  if (n < 1) throw Error(ErrorKind::precondition, "identity depth must be >= 1");
  const auto betas = level_betas(f, n);
  const LevelDisks plan = plan_level_disks(f, betas, n, u0, u1_radius);
  ReturnIdentityReport rep;
  SliceMap s = level_slice_map(f, betas, 0, plan.u0[0], order, plan.u1[0], order, false);
  for (int k = 0; k < n; ++k) {
    const RenormResult r = renormalize_onto(s, plan.u0[k + 1], order, plan.u1[k + 1], order,
                                            static_cast<double>(betas[k]));
    rep.operator_betas.push_back(r.beta);
    rep.real_betas.push_back(static_cast<double>(betas[k]));
    s = r.map;
  }
  const long double tau = level_tau(betas, n);
  const std::uint64_t period = fib(n);
  for (int j = 0; j < samples; ++j) {
    const cplx z = u0.boundary_point(j, samples);
    cplxl w = cplxl(tau) * cplxl(z.real(), z.imag());
    for (std::uint64_t t = 0; t < period; ++t) w = f(w);
    w /= cplxl(tau);
    const cplx direct(static_cast<double>(w.real()), static_cast<double>(w.imag()));
    rep.sup_diff = std::max(rep.sup_diff, std::abs(direct - s.central.eval_unchecked(z)));
  }
  return rep;
}

}  // namespace fibrenorm
