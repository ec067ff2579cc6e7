#include "fibrenorm/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fibrenorm/puzzle.hpp"

namespace fibrenorm {

Region make_region(ClosedCurve boundary, int id) {
  if (boundary.size() == 0) throw Error(ErrorKind::malformed_input, "empty region boundary");
  if (!is_simple(boundary))
    throw Error(ErrorKind::malformed_input,
                "region " + std::to_string(id) + " boundary is not simple");
  if (!(std::abs(signed_area(boundary)) > 0.0))
    throw Error(ErrorKind::malformed_input, "region " + std::to_string(id) + " has zero area");
  return Region{std::move(boundary), id};
}

CenteredRegion make_centered(Region region, cplx center) {
  if (!contains(region.boundary, center))
    throw Error(ErrorKind::malformed_input,
                "centre is not inside region " + std::to_string(region.id));
  return CenteredRegion{std::move(region), center};
}

bool region_contains(const Region& r, cplx p, double tol) { return contains(r.boundary, p, tol); }

double region_area(const Region& r) { return std::abs(signed_area(r.boundary)); }

namespace {

bool boxes_apart(const Box& a, const Box& b, double tol) {
  return a.xmax + tol < b.xmin || b.xmax + tol < a.xmin || a.ymax + tol < b.ymin ||
         b.ymax + tol < a.ymin;
}

RegionRelation relate_boxed(const Region& a, const Box& ba, const Region& b, const Box& bb,
                            double tol) {
  if (boxes_apart(ba, bb, tol)) return RegionRelation::disjoint;
  if (curves_cross(a.boundary, b.boundary, tol)) return RegionRelation::overlap;
  // Without crossings each boundary lies wholly inside or outside the other.
  if (winding_number(b.boundary, a.boundary[0]) != 0) return RegionRelation::first_inside;
  if (winding_number(a.boundary, b.boundary[0]) != 0) return RegionRelation::second_inside;
  return RegionRelation::disjoint;
}

std::vector<Box> boxes_of(std::span<const Region> regions) {
  std::vector<Box> b;
  b.reserve(regions.size());
  for (const Region& r : regions) b.push_back(bounding_box(r.boundary));
  return b;
}

}  // namespace

RegionRelation relate(const Region& a, const Region& b, double tol) {
  return relate_boxed(a, bounding_box(a.boundary), b, bounding_box(b.boundary), tol);
}

MarkovCheck markov_check(std::span<const Region> regions, double tol) {
  const auto boxes = boxes_of(regions);
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j)
      if (relate_boxed(regions[i], boxes[i], regions[j], boxes[j], tol) ==
          RegionRelation::overlap)
        return {false, std::pair{regions[i].id, regions[j].id}};
  return {};
}

MarkovFamily make_markov_family(std::vector<Region> regions, double tol) {
  const std::size_t n = regions.size();
  const auto boxes = boxes_of(regions);
  std::vector<double> area(n);
  for (std::size_t i = 0; i < n; ++i) area[i] = region_area(regions[i]);
  std::vector<int> parent(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rel = relate_boxed(regions[i], boxes[i], regions[j], boxes[j], tol);
      if (rel == RegionRelation::overlap)
        throw Error(ErrorKind::precondition,
                    "regions " + std::to_string(regions[i].id) + " and " +
                        std::to_string(regions[j].id) + " overlap");
      auto adopt = [&](std::size_t child, std::size_t p) {
        if (parent[child] < 0 || area[p] < area[parent[child]]) parent[child] = int(p);
      };
      if (rel == RegionRelation::first_inside) adopt(i, j);
      if (rel == RegionRelation::second_inside) adopt(j, i);
    }
  return {std::move(regions), std::move(parent)};
}

MarkovFamily markov_subfamily(const MarkovFamily& family, std::span<const cplx> targets,
                              double tol) {
  std::vector<char> chosen(family.regions.size(), 0);
  for (const cplx& t : targets) {
    int best = -1;
    for (std::size_t i = 0; i < family.regions.size(); ++i)
      if (region_contains(family.regions[i], t, tol) &&
          (best < 0 || region_area(family.regions[i]) > region_area(family.regions[best])))
        best = int(i);
    if (best < 0) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "target (%.17g, %.17g) lies in no region", t.real(),
                    t.imag());
      throw Error(ErrorKind::coverage, buf);
    }
    chosen[best] = 1;
  }
  std::vector<Region> out;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i]) out.push_back(family.regions[i]);
  // Maximal elements are pairwise disjoint, so the forest is flat.
  std::vector<int> parent(out.size(), -1);
  return {std::move(out), std::move(parent)};
}

ScaleCoverReport covers_arbitrary_small_scales(std::span<const Region> family,
                                               std::span<const cplx> points,
                                               std::span<const double> scales, double tol) {
  std::vector<double> diam(family.size());
  std::vector<char> clean(family.size(), 1);
  for (std::size_t a = 0; a < family.size(); ++a) {
    diam[a] = diameter(family[a].boundary);
    for (const cplx& x : points)
      if (distance_to_curve(family[a].boundary, x) <= tol) {
        clean[a] = 0;
        break;
      }
  }
  ScaleCoverReport rep;
  rep.passed.assign(points.size(), std::vector<bool>(scales.size(), false));
  for (std::size_t i = 0; i < points.size(); ++i) {
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < family.size(); ++a)
      if (clean[a] && region_contains(family[a], points[i], tol))
        smallest = std::min(smallest, diam[a]);
    for (std::size_t k = 0; k < scales.size(); ++k) {
      rep.passed[i][k] = smallest <= scales[k];
      rep.all = rep.all && rep.passed[i][k];
    }
  }
  return rep;
}

namespace {

void finish(GeometryStats& s, bool take_max) {
  if (s.values.empty()) return;
  const auto it = take_max ? std::max_element(s.values.begin(), s.values.end())
                           : std::min_element(s.values.begin(), s.values.end());
  s.worst = *it;
  s.worst_index = std::size_t(it - s.values.begin());
}

}  // namespace

GeometryStats bounded_geometry(std::span<const Region> family, int roundness_grid) {
  if (family.empty()) throw Error(ErrorKind::malformed_input, "empty family");
  GeometryStats s;
  s.mode = GeometryMode::uniform;
  for (const Region& r : family) s.values.push_back(roundness(r.boundary, roundness_grid));
  finish(s, false);
  return s;
}

GeometryStats bounded_geometry(std::span<const CenteredRegion> family, GeometryMode mode,
                               std::span<const double> scales, int roundness_grid) {
  if (family.empty()) throw Error(ErrorKind::malformed_input, "empty family");
  if (mode == GeometryMode::uniform) {
    std::vector<Region> plain;
    for (const auto& c : family) plain.push_back(c.region);
    return bounded_geometry(plain, roundness_grid);
  }
  GeometryStats s;
  s.mode = mode;
  if (mode == GeometryMode::pointwise) {
    for (const auto& c : family) {
      s.values.push_back(distance_to_curve(c.region.boundary, c.center) /
                         diameter(c.region.boundary));
      s.centers.push_back(c.center);
    }
    finish(s, false);
    return s;
  }
  if (scales.empty()) throw Error(ErrorKind::malformed_input, "all-scales mode needs scales");
  std::vector<double> diam(family.size());
  for (std::size_t a = 0; a < family.size(); ++a) diam[a] = diameter(family[a].region.boundary);
  for (std::size_t a = 0; a < family.size(); ++a) {
    const cplx x = family[a].center;
    if (std::find(s.centers.begin(), s.centers.end(), x) != s.centers.end()) continue;
    double c = 1.0;
    for (double eps : scales) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < family.size(); ++b)
        if (family[b].center == x) best = std::min(best, std::max(diam[b] / eps, eps / diam[b]));
      c = std::max(c, best);
    }
    s.centers.push_back(x);
    s.values.push_back(c);
  }
  finish(s, true);
  return s;
}

double circular_dilatation(const PlaneHomeo& h, cplx x0, double r0, int samples) {
  if (samples < 3 || !(r0 > 0.0))
    throw Error(ErrorKind::precondition, "need samples >= 3 and r0 > 0");
  const cplx h0 = h(x0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double d = std::abs(h(x0 + std::polar(r0, 2.0 * std::numbers::pi * j / samples)) - h0);
    if (!(d > 0.0) || !std::isfinite(d))
      throw Error(ErrorKind::degenerate_map, "h(x) = h(x0) on the sample circle", double(j));
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

}  // namespace fibrenorm
