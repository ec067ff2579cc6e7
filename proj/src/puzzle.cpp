#include "fibrenorm/puzzle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fibrenorm {

namespace {

int grid_count(double lo, double hi, double res) {
  if (!(res > 0.0) || !(hi >= lo))
    throw Error(ErrorKind::precondition, "grid needs positive resolution and a nonempty window");
  return static_cast<int>(std::floor((hi - lo) / res + 1e-9)) + 1;
}

}  // namespace

EscapeGrid escape_grid(const PlaneMap& map, const PlaneSet& domain, const Window& window,
                       double resolution, int max_iter, Exec exec) {
  EscapeGrid g;
  g.window = window;
  g.resolution = resolution;
  g.nx = grid_count(window.xmin, window.xmax, resolution);
  g.ny = grid_count(window.ymin, window.ymax, resolution);
  g.escape.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
  auto row = [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      cplx z = g.point(i, j);
      std::uint16_t e = 0;
      for (int n = 0; n <= max_iter; ++n) {
        if (!domain(z)) {
          e = static_cast<std::uint16_t>(std::min(n + 1, 65535));
          break;
        }
        if (n < max_iter) z = map(z);
      }
      g.escape[static_cast<std::size_t>(j) * g.nx + i] = e;
    }
  };
  if (exec == Exec::serial) {
    for (int j = 0; j < g.ny; ++j) row(j);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < g.ny; ++j) row(j);
  }
  return g;
}

PointCloud filled_julia(const PlaneMap& map, const PlaneSet& domain, const Window& window,
                        double resolution, int max_iter, Exec exec) {
  const EscapeGrid g = escape_grid(map, domain, window, resolution, max_iter, exec);
  PointCloud cloud;
  cloud.resolution = resolution;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.escape[static_cast<std::size_t>(j) * g.nx + i] == 0) cloud.points.push_back(g.point(i, j));
  cloud.too_coarse = cloud.points.empty();
  return cloud;
}

PointCloud grid_inside(const ClosedCurve& c, const Window& window, double resolution) {
  PointCloud cloud;
  cloud.resolution = resolution;
  const int nx = grid_count(window.xmin, window.xmax, resolution);
  const int ny = grid_count(window.ymin, window.ymax, resolution);
  const Box b = bounding_box(c);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const cplx z(window.xmin + i * resolution, window.ymin + j * resolution);
      if (z.real() < b.xmin || z.real() > b.xmax || z.imag() < b.ymin || z.imag() > b.ymax)
        continue;
      if (winding_number(c, z) != 0) cloud.points.push_back(z);
    }
  cloud.too_coarse = cloud.points.empty();
  return cloud;
}

namespace {

// Uniform bucket grid for nearest-neighbour queries.
class Buckets {
 public:
  explicit Buckets(std::span<const cplx> pts) : pts_(pts) {
    double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
    for (const cplx& p : pts) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    const double extent = std::max({xmax - xmin, ymax - ymin, 1e-300});
    size_ = std::max(extent / std::sqrt(static_cast<double>(pts.size())), extent * 1e-6);
    x0_ = xmin;
    y0_ = ymin;
    nx_ = static_cast<long>((xmax - xmin) / size_) + 1;
    ny_ = static_cast<long>((ymax - ymin) / size_) + 1;
    start_.assign(static_cast<std::size_t>(nx_ * ny_ + 1), 0);
    std::vector<long> cell(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell[i] = index(cx(pts[i]), cy(pts[i]));
      ++start_[cell[i] + 1];
    }
    for (std::size_t k = 1; k < start_.size(); ++k) start_[k] += start_[k - 1];
    order_.resize(pts.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) order_[fill[cell[i]]++] = i;
  }

  double nearest(cplx p) const {
    const long ci = cx(p), cj = cy(p);
    // Rings start where the grid begins, seen from p's cell.
    const long r0 = std::max({0L, -ci, ci - (nx_ - 1), -cj, cj - (ny_ - 1)});
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](long i, long j) {
      const long k = j * nx_ + i;
      for (std::size_t q = start_[k]; q < start_[k + 1]; ++q)
        best = std::min(best, std::abs(pts_[order_[q]] - p));
    };
    for (long r = r0;; ++r) {
      for (long j = std::max(cj - r, 0L); j <= std::min(cj + r, ny_ - 1); ++j) {
        if (j == cj - r || j == cj + r) {
          for (long i = std::max(ci - r, 0L); i <= std::min(ci + r, nx_ - 1); ++i) visit(i, j);
        } else {
          if (ci - r >= 0 && ci - r < nx_) visit(ci - r, j);
          if (r > 0 && ci + r >= 0 && ci + r < nx_) visit(ci + r, j);
        }
      }
      if (best <= static_cast<double>(r) * size_) return best;
      if (r > nx_ + ny_ + std::abs(ci) + std::abs(cj)) return best;
    }
  }

 private:
  long cx(cplx p) const { return static_cast<long>(std::floor((p.real() - x0_) / size_)); }
  long cy(cplx p) const { return static_cast<long>(std::floor((p.imag() - y0_) / size_)); }
  long index(long i, long j) const {
    return std::clamp(j, 0L, ny_ - 1) * nx_ + std::clamp(i, 0L, nx_ - 1);
  }

  std::span<const cplx> pts_;
  double size_ = 1.0, x0_ = 0.0, y0_ = 0.0;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_, order_;
};

double directed(std::span<const cplx> a, std::span<const cplx> b, Exec exec) {
  const Buckets bk(b);
  std::vector<double> d(a.size());
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = bk.nearest(a[i]);
  } else {
    const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) d[i] = bk.nearest(a[i]);
  }
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

}  // namespace

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b, Exec exec) {
  if (a.empty() || b.empty())
    throw Error(ErrorKind::precondition, "Hausdorff distance needs nonempty sets");
  return std::max(directed(a, b, exec), directed(b, a, exec));
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b, Exec exec) {
  return hausdorff_distance(std::span<const cplx>(a.points), std::span<const cplx>(b.points), exec);
}

double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b) {
  double d = 0.0;
  for (const cplx& z : a.vertices()) d = std::max(d, distance_to_curve(b, z));
  for (const cplx& z : b.vertices()) d = std::max(d, distance_to_curve(a, z));
  return d;
}

namespace {

std::optional<cplx> solve_preimage(const TruncatedSeries& s, cplx target, cplx w, double slack) {
  const double scale = 1.0 + std::abs(target);
  for (int it = 0; it < 40; ++it) {
    std::pair<cplx, cplx> vd;
    try {
      vd = s.eval_with_slope(w, slack);
    } catch (const Error&) {
      return std::nullopt;
    }
    const cplx r = vd.first - target;
    if (std::abs(r) <= 1e-13 * scale) return w;
    if (vd.second == 0.0) return std::nullopt;
    const cplx step = r / vd.second;
    w -= step;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) {
      try {
        if (std::abs(s.eval(w, slack) - target) <= 1e-10 * scale) return w;
      } catch (const Error&) {
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

ClosedCurve pullback_curve(const TruncatedSeries& branch, const ClosedCurve& curve_in,
                           const PullbackOptions& opts) {
  const int k = opts.critical_order;
  if (k < 1) throw Error(ErrorKind::precondition, "critical order must be >= 1");
  const cplx center = branch.disk().center;
  ClosedCurve curve = curve_in;
  cplx guess = opts.anchor;
  if (k > 1) {
    const cplx cv = branch.eval_local(0.0);
    const int wn = winding_number(curve, cv);
    if (std::abs(wn) != 1)
      throw Error(ErrorKind::domain, "curve must wind once around the critical value, winds " +
                                         std::to_string(wn));
    if (wn < 0) curve = reversed(curve);
    const cplx ak = branch.coeff(k);
    if (ak == 0.0) throw Error(ErrorKind::precondition, "branch has no term of the critical order");
    guess = center + std::pow((curve[0] - cv) / ak, 1.0 / k);
  }
  const std::size_t m = curve.size();
  const auto w0 = solve_preimage(branch, curve[0], guess, opts.slack);
  if (!w0)
    throw Error(ErrorKind::domain, "first vertex has no preimage in the branch disk");
  const double jump = opts.max_jump * branch.disk().radius;

  cplx w = *w0;
  auto advance = [&](auto&& self, cplx from, cplx to, int depth) -> void {
    const auto next = solve_preimage(branch, to, w, opts.slack);
    if (next && std::abs(*next - w) <= jump) {
      w = *next;
      return;
    }
    if (depth >= opts.max_subdivisions) {
      if (!next)
        throw Error(ErrorKind::domain, "preimage leaves the branch disk near " +
                                           std::to_string(to.real()) + "+" +
                                           std::to_string(to.imag()) + "i");
      throw Error(ErrorKind::monodromy, "branch tracking jumped by " +
                                            std::to_string(std::abs(*next - w)),
                  std::abs(*next - w));
    }
    const cplx mid = 0.5 * (from + to);
    self(self, from, mid, depth + 1);
    self(self, mid, to, depth + 1);
  };

  const std::size_t steps = static_cast<std::size_t>(k) * m;
  std::vector<cplx> out;
  out.reserve(steps);
  out.push_back(w);
  for (std::size_t j = 0; j < steps; ++j) {
    advance(advance, curve[j % m], curve[(j + 1) % m], 0);
    if (j + 1 < steps) out.push_back(w);
  }
  if (std::abs(w - *w0) > 1e-8 * (1.0 + std::abs(*w0)))
    throw Error(ErrorKind::monodromy, "continuation did not close up", std::abs(w - *w0));
  ClosedCurve result(std::move(out));
  if (!is_simple(result, 0.0))
    throw Error(ErrorKind::monodromy, "preimage curve is not simple");
  if (k > 1 && winding_number(result, center) == 0)
    throw Error(ErrorKind::monodromy, "preimage component misses the critical point");
  return result;
}

double roundness(const ClosedCurve& c, int grid) {
  if (grid < 2) throw Error(ErrorKind::precondition, "roundness grid must be >= 2");
  const double diam = diameter(c);
  if (!(diam > 0.0)) throw Error(ErrorKind::degenerate_region, "curve has zero diameter");
  const Box b = bounding_box(c);
  double best = -1.0;
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      const cplx z(b.xmin + (b.xmax - b.xmin) * i / (grid - 1),
                   b.ymin + (b.ymax - b.ymin) * j / (grid - 1));
      if (winding_number(c, z) == 0) continue;
      best = std::max(best, distance_to_curve(c, z) / diam);
    }
  if (best <= 0.0) throw Error(ErrorKind::degenerate_region, "no interior grid samples");
  return best;
}

TruncatedSeries cycle_generator(const CycleSolution& cycle) {
  return cplx(cycle.beta) * rescale(cycle.map.central, cycle.beta);
}

std::vector<NestLevel> principal_nest(const CycleSolution& cycle, const ClosedCurve& gamma0,
                                      int depth, const NestOptions& opts) {
  if (depth < 0) throw Error(ErrorKind::precondition, "nest depth must be >= 0");
  const double beta = cycle.beta;
  const TruncatedSeries g = cycle_generator(cycle);
  const TruncatedSeries& h = cycle.map.outer;
  const cplx critical_value = cycle.map.central.eval_local(0.0);

  std::vector<NestLevel> levels;
  ClosedCurve w = gamma0;
  double tau = 1.0;
  for (int n = 0; n <= depth; ++n) {
    if (tau < 1e-100)
      throw Error(ErrorKind::depth_limit, "tau_n underflows at level " + std::to_string(n), n);
    NestLevel lv{n, tau, w, affine_image(w, tau, 0.0), std::nullopt};
    if (n < depth) {
      PullbackOptions po;
      po.critical_order = cycle.map.degree;
      ClosedCurve next;
      try {
        next = resample_arclength(pullback_curve(g, w, po), opts.vertices);
      } catch (const Error& e) {
        throw Error(e.kind(), "level " + std::to_string(n + 1) + ": " + e.what(), e.value());
      }
      if (!curve_inside(affine_image(next, beta, 0.0), w))
        throw Error(ErrorKind::precondition,
                    "level " + std::to_string(n + 1) + " is not nested in level " +
                        std::to_string(n));
      if (opts.outer) {
        PullbackOptions oo;
        oo.anchor = critical_value;
        try {
          lv.outer = pullback_curve(h, affine_image(next, beta, 0.0), oo);
        } catch (const Error&) {
          lv.outer.reset();
        }
      }
      levels.push_back(std::move(lv));
      w = std::move(next);
      tau *= beta;
    } else {
      levels.push_back(std::move(lv));
    }
  }
  return levels;
}

PointCloud cycle_julia(const CycleSolution& cycle, const ClosedCurve& gamma0,
                       const ShapeOptions& opts, Window* window_out) {
  double r = 0.0;
  for (const cplx& z : gamma0.vertices()) r = std::max(r, std::abs(z));
  const TruncatedSeries g = cycle_generator(cycle);
  const Window win{-r, r, -r, r};
  if (window_out) *window_out = win;
  return filled_julia([&g](cplx z) { return g.eval_unchecked(z); },
                      [r](cplx z) { return std::abs(z) <= r; }, win, opts.resolution,
                      opts.max_iter, opts.exec);
}

std::vector<ShapeRow> shape_convergence_report(const CycleSolution& cycle,
                                               const std::vector<NestLevel>& nest,
                                               const ShapeOptions& opts) {
  if (nest.empty()) throw Error(ErrorKind::precondition, "empty nest");
  Window win;
  const PointCloud k = cycle_julia(cycle, nest.front().rescaled, opts, &win);
  if (k.too_coarse)
    throw Error(ErrorKind::degenerate_region, "filled Julia set is empty at this resolution");
  const cplx critical_value = cycle.map.central.eval_local(0.0);
  std::vector<ShapeRow> rows;
  for (const NestLevel& lv : nest) {
    ShapeRow row;
    row.n = lv.n;
    const PointCloud inside = grid_inside(lv.rescaled, win, opts.resolution);
    row.dist_h = inside.points.empty() ? std::numeric_limits<double>::infinity()
                                       : hausdorff_distance(inside, k, opts.exec);
    row.roundness = roundness(lv.rescaled, opts.roundness_grid);
    if (lv.outer) {
      const double d = distance_to_curve(*lv.outer, critical_value);
      row.eq1_distance = winding_number(*lv.outer, critical_value) != 0 ? d : -d;
    }
    rows.push_back(row);
  }
  return rows;
}

double functional_equation_residual(const TruncatedSeries& g, double beta, double slack) {
  const int m = sample_count(g.order());
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    const cplx z = g.disk().boundary_point(j, m);
    cplx inner, outer;
    try {
      inner = g.eval(beta * z, slack);
      outer = g.eval(inner, slack);
    } catch (const Error& e) {
      throw Error(ErrorKind::composition_domain,
                  std::string("functional equation leaves the disk: ") + e.what(), e.value());
    }
    const cplx lhs = -outer / (beta * beta);
    worst = std::max(worst, std::abs(lhs - g.eval_local(g.disk().radius * g.disk().unit(z))));
  }
  return worst;
}

}  // namespace fibrenorm
