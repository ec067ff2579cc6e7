#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fibrenorm/geometry.hpp"
#include "fibrenorm/parallel.hpp"
#include "fibrenorm/renorm.hpp"
#include "fibrenorm/series.hpp"

namespace fibrenorm {

struct PointCloud {
  std::vector<cplx> points;
  double resolution = 0.0;
  // Set when no grid point survived: the grid is too coarse for the set.
  bool too_coarse = false;
};

struct Window {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};

using PlaneMap = std::function<cplx(cplx)>;
using PlaneSet = std::function<bool(cplx)>;

// Escape times on a grid of spacing `resolution` anchored at (xmin, ymin).
// Points whose orbit stays in `domain` for max_iter steps get 0.
struct EscapeGrid {
  Window window;
  double resolution = 0.0;
  int nx = 0, ny = 0;
  std::vector<std::uint16_t> escape;  // row-major, y outer

  cplx point(int i, int j) const {
    return {window.xmin + i * resolution, window.ymin + j * resolution};
  }
};

EscapeGrid escape_grid(const PlaneMap& map, const PlaneSet& domain, const Window& window,
                       double resolution, int max_iter, Exec exec = Exec::serial);
PointCloud filled_julia(const PlaneMap& map, const PlaneSet& domain, const Window& window,
                        double resolution, int max_iter, Exec exec = Exec::serial);
// Grid points strictly inside the curve, on the same lattice convention.
PointCloud grid_inside(const ClosedCurve& c, const Window& window, double resolution);

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b,
                          Exec exec = Exec::serial);
double hausdorff_distance(const PointCloud& a, const PointCloud& b, Exec exec = Exec::serial);
// Boundary-to-boundary distance using point-to-polyline distances.
double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b);

struct PullbackOptions {
  // Local degree of the branch at its disk centre; 1 for univalent branches.
  int critical_order = 1;
  // Univalent pullbacks start Newton from this point (component selection).
  cplx anchor{0.0, 0.0};
  // Consecutive preimage points may not be farther apart than this fraction
  // of the branch disk radius.
  double max_jump = 0.1;
  int max_subdivisions = 16;
  double slack = kDefaultSlack;
};

// Preimage component of `curve` under `branch`. With critical order k > 1
// the curve must wind once around the critical value and is traversed k
// times; the result contains the critical point.
ClosedCurve pullback_curve(const TruncatedSeries& branch, const ClosedCurve& curve,
                           const PullbackOptions& opts);

// lambda* = max over interior grid points of dist(x, curve) / diam.
double roundness(const ClosedCurve& c, int grid = 65);

struct NestLevel {
  int n = 0;
  double tau = 1.0;
  // beta^{-n} times the level-n critical piece boundary.
  ClosedCurve rescaled;
  // tau_n times `rescaled`.
  ClosedCurve boundary;
  // Rescaled outer piece H^{-1}(beta * rescaled(n+1)), when computed.
  std::optional<ClosedCurve> outer;
};

struct NestOptions {
  int vertices = 512;
  bool outer = true;
};

// g(w) = G(beta w), the central branch of the cycle in rescaled coordinates.
TruncatedSeries cycle_generator(const CycleSolution& cycle);

std::vector<NestLevel> principal_nest(const CycleSolution& cycle, const ClosedCurve& gamma0,
                                      int depth, const NestOptions& opts = {});

struct ShapeRow {
  int n = 0;
  double dist_h = 0.0;
  double roundness = 0.0;
  std::optional<double> eq1_distance;
};

struct ShapeOptions {
  double resolution = 0.02;
  int max_iter = 80;
  int roundness_grid = 65;
  Exec exec = Exec::serial;
};

// Filled Julia set of g with escape from the disk bounded by gamma0's
// largest modulus.
PointCloud cycle_julia(const CycleSolution& cycle, const ClosedCurve& gamma0,
                       const ShapeOptions& opts, Window* window_out = nullptr);

std::vector<ShapeRow> shape_convergence_report(const CycleSolution& cycle,
                                               const std::vector<NestLevel>& nest,
                                               const ShapeOptions& opts = {});

// sup over boundary samples of |-(1/beta^2) g(g(beta z)) - g(z)|.
double functional_equation_residual(const TruncatedSeries& g, double beta,
                                    double slack = kDefaultSlack);

}  // namespace fibrenorm
