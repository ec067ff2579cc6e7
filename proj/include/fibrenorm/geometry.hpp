#pragma once

#include <complex>
#include <vector>

#include "fibrenorm/error.hpp"

namespace fibrenorm {

using cplx = std::complex<double>;

inline constexpr int kMinCurveVertices = 16;
inline constexpr double kGeomTol = 1e-9;

// Closed polygon; the last vertex connects to the first.
class ClosedCurve {
 public:
  ClosedCurve() = default;
  // Requires >= 16 finite vertices. Simplicity is checked by is_simple().
  explicit ClosedCurve(std::vector<cplx> vertices);

  const std::vector<cplx>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  cplx edge_end(std::size_t i) const { return v_[(i + 1) % v_.size()]; }

 private:
  std::vector<cplx> v_;
};

ClosedCurve circle_curve(cplx center, double radius, int m = 256);
// Axis-aligned rectangle with each side subdivided so the total count is m.
ClosedCurve rectangle_curve(cplx center, double width, double height, int m = 64);

// Image of the curve under z -> a z + b.
ClosedCurve affine_image(const ClosedCurve& c, cplx a, cplx b);
ClosedCurve reversed(const ClosedCurve& c);

double signed_area(const ClosedCurve& c);
double perimeter(const ClosedCurve& c);
// Largest vertex distance, through the convex hull.
double diameter(const std::vector<cplx>& pts);
double diameter(const ClosedCurve& c);

int winding_number(const ClosedCurve& c, cplx p);
// Strictly inside: nonzero winding and farther than tol from the boundary.
bool contains(const ClosedCurve& c, cplx p, double tol = kGeomTol);

bool segments_intersect(cplx a, cplx b, cplx c, cplx d, double tol = kGeomTol);
double point_segment_distance(cplx p, cplx a, cplx b);
double distance_to_curve(const ClosedCurve& c, cplx p);

// No two non-adjacent edges meet (sweep over x-sorted edges).
bool is_simple(const ClosedCurve& c, double tol = kGeomTol);
bool curves_cross(const ClosedCurve& a, const ClosedCurve& b, double tol = kGeomTol);
// Every vertex of `inner` strictly inside `outer` and no crossings.
bool curve_inside(const ClosedCurve& inner, const ClosedCurve& outer, double tol = kGeomTol);

// m points equally spaced in arc length, starting at vertex 0.
ClosedCurve resample_arclength(const ClosedCurve& c, int m);

struct Box {
  double xmin, xmax, ymin, ymax;
};
Box bounding_box(const ClosedCurve& c);

}  // namespace fibrenorm
