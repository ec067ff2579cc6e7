#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fibrenorm/geometry.hpp"

namespace fibrenorm {

struct Region {
  ClosedCurve boundary;
  int id = 0;
};

struct CenteredRegion {
  Region region;
  cplx center;
};

// Validates simplicity and positive enclosed area.
Region make_region(ClosedCurve boundary, int id);
// The centre must lie strictly inside the boundary.
CenteredRegion make_centered(Region region, cplx center);

enum class RegionRelation { disjoint, first_inside, second_inside, overlap };

RegionRelation relate(const Region& a, const Region& b, double tol = kGeomTol);
bool region_contains(const Region& r, cplx p, double tol = kGeomTol);
double region_area(const Region& r);

struct MarkovCheck {
  bool ok = true;
  // Ids of the first violating pair, in input order.
  std::optional<std::pair<int, int>> counterexample;
};

MarkovCheck markov_check(std::span<const Region> regions, double tol = kGeomTol);

// Regions with their nesting forest: parent[i] is the index of the minimal
// region strictly containing regions[i], or -1.
struct MarkovFamily {
  std::vector<Region> regions;
  std::vector<int> parent;
};

// Throws precondition when the regions are not pairwise disjoint or nested.
MarkovFamily make_markov_family(std::vector<Region> regions, double tol = kGeomTol);

// Maximal regions among those containing each target. Throws coverage when
// a target lies in no region.
MarkovFamily markov_subfamily(const MarkovFamily& family, std::span<const cplx> targets,
                              double tol = kGeomTol);

struct ScaleCoverReport {
  // passed[i][k]: some region contains points[i], has diameter <= scales[k]
  // and its boundary avoids every point of X.
  std::vector<std::vector<bool>> passed;
  bool all = true;
};

ScaleCoverReport covers_arbitrary_small_scales(std::span<const Region> family,
                                               std::span<const cplx> points,
                                               std::span<const double> scales,
                                               double tol = kGeomTol);

enum class GeometryMode { uniform, pointwise, all_scales };

struct GeometryStats {
  GeometryMode mode = GeometryMode::uniform;
  // uniform: roundness per region; pointwise: dist(center, boundary)/diam
  // per entry; all_scales: the sandwich constant C per distinct centre.
  std::vector<double> values;
  std::vector<cplx> centers;
  // min of values for uniform/pointwise, max for all_scales.
  double worst = 0.0;
  std::size_t worst_index = 0;
};

GeometryStats bounded_geometry(std::span<const Region> family, int roundness_grid = 65);
GeometryStats bounded_geometry(std::span<const CenteredRegion> family, GeometryMode mode,
                               std::span<const double> scales = {}, int roundness_grid = 65);

using PlaneHomeo = std::function<cplx(cplx)>;

// max |h - h(x0)| / min |h - h(x0)| over `samples` points of |x - x0| = r0.
double circular_dilatation(const PlaneHomeo& h, cplx x0, double r0, int samples = 256);

}  // namespace fibrenorm
