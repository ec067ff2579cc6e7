#pragma once

#include <complex>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fibrenorm/hunt.hpp"
#include "fibrenorm/pipeline.hpp"
#include "fibrenorm/renorm.hpp"
#include "fibrenorm/series.hpp"

namespace fibrenorm::testing {

using quad = boost::multiprecision::cpp_bin_float_quad;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline cplx random_unit_complex() {
  return std::polar(uniform(0.0, 1.0), uniform(0.0, 6.283185307179586));
}

// Horner in quadruple precision on the local coordinate.
inline cplx quad_eval(const std::vector<cplx>& coeffs, cplx t) {
  quad re = 0, im = 0;
  const quad tr = t.real(), ti = t.imag();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    const quad nr = re * tr - im * ti + quad(it->real());
    const quad ni = re * ti + im * tr + quad(it->imag());
    re = nr;
    im = ni;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// Bisection of a continuous real function on [a, b] with a sign change.
template <class F>
long double bisect(F&& f, long double a, long double b) {
  long double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const long double m = 0.5L * (a + b);
    if (m == a || m == b) break;
    const long double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5L * (a + b);
}

struct D4Fixture {
  PipelineSetup setup;
  std::vector<HuntRecord> records;
  CycleSolution cycle;
};

// The d = 4 cycle at N = 60, solved once per process.
inline const D4Fixture& d4() {
  static const D4Fixture f = [] {
    PipelineSetup setup = default_setup(4);
    auto records = fibonacci_bracket_chain(4, setup.hunt_n);
    CycleSolution cycle = solve_cycle(setup, records);
    return D4Fixture{setup, std::move(records), std::move(cycle)};
  }();
  return f;
}

// Random tangent at f with unit sup-norm.
inline SliceMap random_tangent(const SliceMap& f) {
  const FreeCoordinates fc(f);
  Eigen::VectorXd x(fc.size());
  std::normal_distribution<double> nd;
  for (int i = 0; i < x.size(); ++i) x[i] = nd(rng());
  const SliceMap v = fc.unpack_tangent(x);
  return (1.0 / sup_norm(v)) * v;
}

// Tangent whose scaled coefficient of index k is damped by rho^k, so the
// perturbed map stays analytic on a larger disk than the chart.
inline SliceMap smooth_tangent(const SliceMap& f, double rho = 0.4) {
  const FreeCoordinates fc(f);
  const auto& ci = fc.central_index();
  const int nc = static_cast<int>(ci.size());
  Eigen::VectorXd x(fc.size());
  std::normal_distribution<double> nd;
  for (int i = 0; i < x.size(); ++i)
    x[i] = nd(rng()) * std::pow(rho, i < nc ? ci[i] : i - nc);
  const SliceMap v = fc.unpack_tangent(x);
  return (1.0 / sup_norm(v)) * v;
}

}  // namespace fibrenorm::testing
