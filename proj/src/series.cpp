#include "fibrenorm/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fibrenorm {

namespace {

cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx unit_root(int j, int m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j % m) / m);
}

std::string fmt_ratio(double r) { return std::to_string(r); }

}  // namespace

Disk::Disk(cplx center_, double radius_, double warp_, int warp_power_)
    : center(center_), radius(radius_), warp(warp_), warp_power(warp_power_) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorKind::malformed_input, "disk radius must be positive and finite");
  if (warp != 0.0) {
    if (warp_power < 3 || warp_power % 2 == 0)
      throw Error(ErrorKind::malformed_input, "warp power must be odd and >= 3");
    if (!(std::fabs(warp) * warp_power < 1.0))
      throw Error(ErrorKind::malformed_input, "warp too large for a univalent chart");
  }
}

cplx Disk::chart(cplx u) const {
  if (!warped()) return center + radius * u;
  return center + radius * (u + warp * ipow(u, warp_power));
}

cplx Disk::chart_slope(cplx u) const {
  if (!warped()) return 1.0;
  return 1.0 + warp * static_cast<double>(warp_power) * ipow(u, warp_power - 1);
}

cplx Disk::unit(cplx z) const {
  const cplx w = (z - center) / radius;
  if (!warped()) return w;
  cplx u = w;
  for (int it = 0; it < 80; ++it) {
    const cplx up = ipow(u, warp_power - 1);
    const cplx du = (u + warp * up * u - w) / (1.0 + warp * static_cast<double>(warp_power) * up);
    u -= du;
    if (!finite(u)) break;
    if (std::abs(du) <= 1e-16 * (1.0 + std::abs(u))) break;
  }
  return u;
}

cplx Disk::boundary_point(int j, int m) const { return chart(unit_root(j, m)); }

std::vector<cplx> Disk::boundary(int m) const {
  std::vector<cplx> pts(m);
  for (int j = 0; j < m; ++j) pts[j] = boundary_point(j, m);
  return pts;
}

TruncatedSeries::TruncatedSeries(Disk disk, std::vector<cplx> coeffs, Parity parity)
    : disk_(disk), coeffs_(std::move(coeffs)), parity_(parity) {
  if (coeffs_.size() < 2)
    throw Error(ErrorKind::malformed_input, "series needs order N >= 1");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!finite(coeffs_[k]))
      throw Error(ErrorKind::malformed_input, "non-finite coefficient at index " +
                                                  std::to_string(k));
    if (parity_ == Parity::even && (k % 2 == 1) && coeffs_[k] != 0.0)
      throw Error(ErrorKind::malformed_input, "even series with nonzero odd coefficient");
  }
}

TruncatedSeries TruncatedSeries::from_scaled(Disk disk, std::vector<cplx> scaled, Parity parity) {
  double rk = 1.0;
  for (auto& a : scaled) {
    a /= rk;
    rk *= disk.radius;
  }
  return TruncatedSeries(disk, std::move(scaled), parity);
}

TruncatedSeries TruncatedSeries::zero(Disk disk, int order, Parity parity) {
  return TruncatedSeries(disk, std::vector<cplx>(std::max(order, 1) + 1, 0.0), parity);
}

std::vector<cplx> TruncatedSeries::scaled_coeffs() const {
  std::vector<cplx> a(coeffs_);
  double rk = 1.0;
  for (auto& c : a) {
    c *= rk;
    rk *= disk_.radius;
  }
  return a;
}

double TruncatedSeries::tail_ratio() const {
  const auto a = scaled_coeffs();
  double top = 0.0, tail = 0.0;
  const int n = order();
  // Short series inspect fewer trailing terms so exact low-degree fits pass.
  const int window = std::clamp(n / 4, 1, kTailWindow);
  for (int k = 0; k <= n; ++k) {
    top = std::max(top, std::abs(a[k]));
    if (k > n - window && k > 0) tail = std::max(tail, std::abs(a[k]));
  }
  return top > 0.0 ? tail / top : 0.0;
}

cplx TruncatedSeries::eval_local(cplx t) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

cplx TruncatedSeries::eval(cplx z, double slack) const {
  const cplx u = disk_.unit(z);
  const double ratio = std::abs(u);
  if (!(ratio <= 1.0 + slack))
    throw Error(ErrorKind::domain, "evaluation at |z-center|/radius = " + fmt_ratio(ratio), ratio);
  return eval_local(disk_.radius * u);
}

std::pair<cplx, cplx> TruncatedSeries::eval_with_slope(cplx z, double slack) const {
  const cplx u = disk_.unit(z);
  const double ratio = std::abs(u);
  if (!(ratio <= 1.0 + slack))
    throw Error(ErrorKind::domain, "evaluation at |z-center|/radius = " + fmt_ratio(ratio), ratio);
  const cplx t = disk_.radius * u;
  cplx v = 0.0, dv = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dv = dv * t + v;
    v = v * t + *it;
  }
  return {v, dv / disk_.chart_slope(u)};
}

TruncatedSeries TruncatedSeries::with_order(int n) const {
  std::vector<cplx> c(coeffs_);
  c.resize(std::max(n, 1) + 1, 0.0);
  if (parity_ == Parity::even)
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = 0.0;
  return TruncatedSeries(disk_, std::move(c), parity_);
}

TruncatedSeries TruncatedSeries::negated() const {
  std::vector<cplx> c(coeffs_);
  for (auto& x : c) x = -x;
  return TruncatedSeries(disk_, std::move(c), parity_);
}

namespace {

void require_same_disk(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.disk() == b.disk()))
    throw Error(ErrorKind::malformed_input, "series live on different disks");
}

TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, double sb) {
  require_same_disk(a, b);
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<cplx> c(n, 0.0);
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) c[k] += a.coeffs()[k];
  for (std::size_t k = 0; k < b.coeffs().size(); ++k) c[k] += sb * b.coeffs()[k];
  const Parity p =
      (a.parity() == Parity::even && b.parity() == Parity::even) ? Parity::even : Parity::all;
  return TruncatedSeries(a.disk(), std::move(c), p);
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return combine(a, b, 1.0);
}
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return combine(a, b, -1.0);
}
TruncatedSeries operator*(cplx s, const TruncatedSeries& a) {
  std::vector<cplx> c(a.coeffs());
  for (auto& x : c) x *= s;
  return TruncatedSeries(a.disk(), std::move(c), a.parity());
}

int sample_count(int order) {
  const int need = std::max({2 * order + 2, 4 * order, 64});
  int m = 1;
  while (m < need) m <<= 1;
  return m;
}

TruncatedSeries fit_from_samples(const Disk& disk, std::span<const cplx> values, int order,
                                 Parity parity, double spill) {
  const int m = static_cast<int>(values.size());
  if (order < 1) throw Error(ErrorKind::precondition, "fit order must be >= 1");
  if (m < 2 * order + 2)
    throw Error(ErrorKind::precondition, "need M >= 2N+2 samples, got " + std::to_string(m));
  std::vector<cplx> roots(m);
  for (int j = 0; j < m; ++j) roots[j] = std::conj(unit_root(j, m));
  std::vector<cplx> a(order + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    if (parity == Parity::even && k % 2 == 1) continue;
    cplx acc = 0.0;
    long idx = 0;
    for (int j = 0; j < m; ++j) {
      acc += values[j] * roots[idx];
      idx += k;
      if (idx >= m) idx -= m;
    }
    a[k] = acc / static_cast<double>(m);
    if (!finite(a[k]))
      throw Error(ErrorKind::malformed_input, "non-finite samples in fit");
  }
  TruncatedSeries s = TruncatedSeries::from_scaled(disk, std::move(a), parity);
  const double tail = s.tail_ratio();
  if (tail > spill)
    throw Error(ErrorKind::truncation_overflow,
                "tail bound " + std::to_string(tail) + " exceeds spill threshold at order " +
                    std::to_string(order),
                tail);
  return s;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner, double slack,
                        int order) {
  const int n = order > 0 ? order : std::max(outer.order(), inner.order());
  const int m = sample_count(n);
  std::vector<cplx> values(m);
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    const cplx w = inner.eval_local(inner.disk().radius * unit_root(j, m));
    worst = std::max(worst, outer.disk().ratio(w));
    values[j] = w;
  }
  if (!(worst <= 1.0 + slack))
    throw Error(ErrorKind::composition_domain,
                "inner image leaves outer disk, max excursion ratio " + std::to_string(worst),
                worst);
  for (auto& v : values) v = outer.eval_unchecked(v);
  return fit_from_samples(inner.disk(), values, n, Parity::all);
}

TruncatedSeries rescale(const TruncatedSeries& s, cplx beta) {
  if (!(std::abs(beta) >= 1e-6))
    throw Error(ErrorKind::singular_rescale, "|beta| below 1e-6", std::abs(beta));
  const Disk& d = s.disk();
  if (d.warped() && beta.imag() != 0.0)
    throw Error(ErrorKind::usage, "warped disks rescale by real factors only");
  const Disk target(d.center / beta, d.radius / std::abs(beta), d.warp, d.warp_power);
  std::vector<cplx> c(s.coeffs());
  cplx bk = 1.0 / beta;
  for (auto& x : c) {
    x *= bk;
    bk *= beta;
  }
  return TruncatedSeries(target, std::move(c), s.parity());
}

TruncatedSeries derivative(const TruncatedSeries& s) {
  const Disk& d = s.disk();
  if (d.warped()) {
    const int n = std::max(s.order() - 1, 1);
    return fit_function(
        d, [&](cplx z) { return s.eval_with_slope(z, 0.0).second; }, n, Parity::all,
        std::numeric_limits<double>::infinity());
  }
  const int n = s.order();
  std::vector<cplx> c(std::max(n, 2), 0.0);
  for (int k = 1; k <= n; ++k) c[k - 1] = static_cast<double>(k) * s.coeff(k);
  return TruncatedSeries(d, std::move(c), Parity::all);
}

double sup_norm(const TruncatedSeries& s, int samples) {
  const int m = std::max({samples, 4 * s.order(), 64});
  const double r = s.disk().radius;
  auto at = [&](double theta) { return std::abs(s.eval_local(std::polar(r, theta))); };
  std::vector<double> v(m);
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    v[j] = std::abs(s.eval_local(r * unit_root(j, m)));
    best = std::max(best, v[j]);
  }
  // Golden-section polish around sampled peaks close to the maximum.
  const double h = 2.0 * std::numbers::pi / m;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int j = 0; j < m; ++j) {
    if (v[j] < 0.9 * best || v[j] < v[(j + m - 1) % m] || v[j] < v[(j + 1) % m]) continue;
    double a = (j - 1) * h, b = (j + 1) * h;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = at(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = at(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace fibrenorm
