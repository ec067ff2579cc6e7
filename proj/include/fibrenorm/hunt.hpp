#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fibrenorm/dynamics.hpp"
#include "fibrenorm/renorm.hpp"

namespace fibrenorm {

struct HuntRecord {
  int n = 0;
  std::uint64_t period = 0;
  long double c = 0.0L;
  std::pair<long double, long double> bracket{0.0L, 0.0L};
  ReturnSignature signature;
  int iterations = 0;
  // |f_c^{S_n}(0)| at the returned parameter.
  long double residual = 0.0L;
};

struct RatioReport {
  std::vector<double> ratios;
  double gamma_estimate = 0.0;
  double extrapolated_gamma = 0.0;
  long double c_infinity_estimate = 0.0L;
};

// S_0, ..., S_n.
ReturnSignature fibonacci_prefix(int n);

// f_c^{S_n}(0) and its c-derivative.
std::pair<long double, long double> critical_return(int degree, long double c, std::uint64_t period);

// Root of c -> f_c^{S_n}(0) inside the bracket, verified to carry the
// Fibonacci signature. The root is accepted when |f^{S_n}(0)| < 1e-13 or
// when the sign change is pinned between adjacent long doubles.
HuntRecord superattractor_parameter(int degree, int n, std::pair<long double, long double> bracket);

// Records for n = 1 .. n_max, each window derived from the previous two
// parameters.
std::vector<HuntRecord> fibonacci_bracket_chain(int degree, int n_max);

RatioReport ratio_table(const std::vector<HuntRecord>& records);
RatioReport ratio_table(const std::vector<long double>& params);

// tau^{-1} f^P(tau z), evaluated through the deviation from the critical
// orbit so tiny tau does not cancel.
class ReturnMap {
 public:
  ReturnMap(const PowerFamilyMap& f, std::uint64_t max_period);

  long double operator()(long double tau, std::uint64_t period, long double x) const;
  cplxl operator()(long double tau, std::uint64_t period, cplxl z) const;
  // Value and x-derivative of the real return.
  std::pair<long double, long double> jet(long double tau, std::uint64_t period,
                                          long double x) const;
  const PowerFamilyMap& map() const { return f_; }

 private:
  template <class T>
  T deviation(long double tau, std::uint64_t period, T z) const;

  PowerFamilyMap f_;
  std::vector<long double> orbit_;
};

// beta_0 .. beta_{m-1}: beta_k is the fixed point of the level-k return
// tau_k^{-1} f^{S_{k+1}}(tau_k x) closest to 0 with negative slope, and
// tau_{k+1} = tau_k * beta_k.
std::vector<long double> level_betas(const PowerFamilyMap& f, int m);
long double level_tau(const std::vector<long double>& betas, int k);

// Level-k rescaled return maps fitted on the given disks: central
// tau_k^{-1} f^{S_k}(tau_k z) on U_0, outer tau_k^{-1} f^{S_{k-1}}(tau_k z)
// on U_1 (S_{-1} = 1). No normalization is imposed.
SliceMap level_slice_map(const PowerFamilyMap& f, const std::vector<long double>& betas, int k,
                         const Disk& u0, int order0, const Disk& u1, int order1, bool even_mode,
                         double spill = kDefaultSpill);

// Newton seed: the level-m map projected onto the slice normalization.
SliceMap bootstrap_slice_map(const PowerFamilyMap& f, int m, const Disk& u0, int order0,
                             const Disk& u1, int order1, bool even_mode);

struct LevelDisks {
  std::vector<Disk> u0;
  std::vector<Disk> u1;
};

// Disks for levels 0..n, planned backwards from the level-n pair so each
// operator application samples inside its source disks: U_0 at level k
// covers beta_k times both level-(k+1) disks, U_1 covers the image of
// beta_k * boundary(U_0 at level k+1) under the level-k central return.
// Every level map is a polynomial, so only the ranges constrain the plan.
LevelDisks plan_level_disks(const PowerFamilyMap& f, const std::vector<long double>& betas,
                            int n, const Disk& u0_last, double u1_radius_last,
                            double grow = 1.05);

struct ReturnIdentityReport {
  // Sup over boundary(U_0) of |tau_n^{-1} f^{S_n}(tau_n z) - (R^n f)(z)|.
  double sup_diff = 0.0;
  std::vector<double> operator_betas;
  std::vector<double> real_betas;
};

// Applies the series operator n times to the level-0 slice map of f and
// compares with direct iteration of the polynomial.
ReturnIdentityReport return_map_identity(const PowerFamilyMap& f, int n, const Disk& u0,
                                         double u1_radius, int order, int samples = 256);

}  // namespace fibrenorm
