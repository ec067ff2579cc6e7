#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fibrenorm/error.hpp"

namespace fibrenorm {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

// Fibonacci return times with S_0 = 1, S_1 = 2.
std::uint64_t fib(int n);

// x^degree + c.  The parameter is stored in long double so hunted values keep
// the digits that separate consecutive superattractors.
struct PowerFamilyMap {
  int degree = 2;
  long double c = 0.0L;

  PowerFamilyMap() = default;
  PowerFamilyMap(int degree, long double c);

  long double operator()(long double x) const;
  double operator()(double x) const;
  cplx operator()(cplx z) const;
  cplxl operator()(cplxl z) const;
  long double derivative(long double x) const;
};

double escape_radius(const PowerFamilyMap& f);

struct ReturnSignature {
  std::vector<std::uint64_t> times;
  bool operator==(const ReturnSignature&) const = default;
};

// Closest returns of the critical orbit; ties within 1e-12 do not count.
ReturnSignature closest_returns(const PowerFamilyMap& f, std::uint64_t t_max);

// Smallest n <= max_iter with |f^n(z)| > radius; non-finite values escape.
template <class F>
std::optional<int> escape_time(F&& f, cplx z, int max_iter, double radius) {
  for (int n = 0; n <= max_iter; ++n) {
    if (!(std::abs(z) <= radius)) return n;
    if (n == max_iter) break;
    z = f(z);
  }
  return std::nullopt;
}

std::optional<int> escape_time(const PowerFamilyMap& f, cplx z, int max_iter,
                               double radius);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool interior(double x) const { return x > lo && x < hi; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  // Image under x -> x / s, reordered when s < 0.
  Interval divided_by(double s) const;
};

struct Jet {
  double value = 0.0;
  double slope = 0.0;
};

using RealBranch = std::function<Jet(double)>;

// A real map on two intervals: `central` on I_0^1 (critical point at 0),
// `outer` on I_1^1 (diffeomorphic).
struct RealTwoBranchMap {
  RealBranch central;
  RealBranch outer;
  Interval I01;
  Interval I11;

  // Branch chosen by interval membership; NaN outside both.
  Jet operator()(double x) const;
};

struct RealRenormData {
  Interval I01;
  Interval I11;
  Interval I00;
  double beta = 0.0;
  Interval I02;
  Interval I12;
  // f(∂I_0^1) ⊂ ∂I_0^0 and f(∂I_1^1) ⊂ ∂I_0^0, reported only.
  bool boundary_preserved = false;
};

// Fixed point of f² with negative multiplier: sign-change scan of
// f²(x) − x over `bracket`, Newton polish, root closest to 0 kept.
double beta_fixed_point(const RealBranch& f2, Interval bracket,
                        int scan_points = 2000, double tol = 1e-13);
// Newton from a seed (continuation from a nearby map).
double beta_fixed_point_from_seed(const RealBranch& f2, double seed,
                                  double tol = 1e-13);

bool is_fibonacci_renormalizable(const RealTwoBranchMap& f);
// Computes I_0^0, β, I_0^2, I_1^2. Throws precondition if f is not
// Fibonacci renormalizable.
RealRenormData real_renorm_data(const RealTwoBranchMap& f);
RealTwoBranchMap real_renormalize(const RealTwoBranchMap& f,
                                  RealRenormData* data = nullptr);

}  // namespace fibrenorm
