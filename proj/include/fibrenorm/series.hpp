#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fibrenorm/error.hpp"

namespace fibrenorm {

using cplx = std::complex<double>;

inline constexpr double kDefaultSlack = 0.05;
inline constexpr double kDefaultSpill = 1e-9;
// Number of trailing scaled coefficients inspected by the tail bound (at most
// order / 4 of them for short series).
inline constexpr int kTailWindow = 8;

// A disk, optionally warped by the univalent chart
//   z = center + radius * (u + warp * u^warp_power),  |u| <= 1.
// With warp = 0 this is the round disk |z - center| <= radius. Series live in
// the local coordinate t = radius * u, which is z - center on a round disk.
struct Disk {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  double warp = 0.0;
  int warp_power = 3;

  Disk() = default;
  Disk(cplx center, double radius, double warp = 0.0, int warp_power = 3);

  bool warped() const { return warp != 0.0; }
  cplx chart(cplx u) const;
  // d z / d u divided by radius, i.e. psi'(u).
  cplx chart_slope(cplx u) const;
  cplx unit(cplx z) const;
  cplx local(cplx z) const { return radius * unit(z); }
  double ratio(cplx z) const { return std::abs(unit(z)); }
  // Point of the boundary at parameter e^{2 pi i j / m}.
  cplx boundary_point(int j, int m) const;
  std::vector<cplx> boundary(int m) const;
  // Radius of the smallest round disk about `center` containing this one.
  double outer_radius() const { return radius * (1.0 + std::fabs(warp)); }
  // Radius of the largest round disk about `center` inside this one.
  double inner_radius() const { return radius * (1.0 - std::fabs(warp)); }

  bool operator==(const Disk&) const = default;
};

enum class Parity { all, even };

class TruncatedSeries {
 public:
  TruncatedSeries(Disk disk, std::vector<cplx> coeffs, Parity parity = Parity::all);
  // Coefficients given in the scaled form a_k = c_k * radius^k.
  static TruncatedSeries from_scaled(Disk disk, std::vector<cplx> scaled,
                                     Parity parity = Parity::all);
  static TruncatedSeries zero(Disk disk, int order, Parity parity = Parity::all);

  const Disk& disk() const { return disk_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const { return coeffs_.at(k); }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Parity parity() const { return parity_; }

  std::vector<cplx> scaled_coeffs() const;
  // max of the trailing scaled coefficients over the largest one.
  double tail_ratio() const;

  cplx eval_local(cplx t) const;
  cplx eval(cplx z, double slack = kDefaultSlack) const;
  cplx eval_unchecked(cplx z) const { return eval_local(disk_.local(z)); }
  // Value and z-derivative.
  std::pair<cplx, cplx> eval_with_slope(cplx z, double slack = kDefaultSlack) const;

  TruncatedSeries with_order(int order) const;
  TruncatedSeries negated() const;

 private:
  Disk disk_;
  std::vector<cplx> coeffs_;
  Parity parity_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(cplx s, const TruncatedSeries& a);

// Smallest admissible power-of-two sample count for order N.
int sample_count(int order);

TruncatedSeries fit_from_samples(const Disk& disk, std::span<const cplx> values, int order,
                                 Parity parity = Parity::all, double spill = kDefaultSpill);

template <class F>
TruncatedSeries fit_function(const Disk& disk, F&& f, int order, Parity parity = Parity::all,
                             double spill = kDefaultSpill) {
  const int m = sample_count(order);
  std::vector<cplx> values(m);
  for (int j = 0; j < m; ++j) values[j] = f(disk.boundary_point(j, m));
  return fit_from_samples(disk, values, order, parity, spill);
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner,
                        double slack = kDefaultSlack, int order = -1);
// z -> (1/beta) s(beta z) on the disk beta^{-1} * s.disk.
TruncatedSeries rescale(const TruncatedSeries& s, cplx beta);
TruncatedSeries derivative(const TruncatedSeries& s);
double sup_norm(const TruncatedSeries& s, int samples = 0);

}  // namespace fibrenorm
