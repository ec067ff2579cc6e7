#include "fibrenorm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fibrenorm {

ClosedCurve::ClosedCurve(std::vector<cplx> vertices) : v_(std::move(vertices)) {
  if (v_.size() < static_cast<std::size_t>(kMinCurveVertices))
    throw Error(ErrorKind::malformed_input,
                "closed curve needs >= 16 vertices, got " + std::to_string(v_.size()));
  for (const cplx& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::malformed_input, "non-finite curve vertex");
}

ClosedCurve circle_curve(cplx center, double radius, int m) {
  std::vector<cplx> v(m);
  for (int j = 0; j < m; ++j)
    v[j] = center + std::polar(radius, 2.0 * std::numbers::pi * j / m);
  return ClosedCurve(std::move(v));
}

ClosedCurve rectangle_curve(cplx center, double width, double height, int m) {
  const int per = std::max(4, m / 4);
  const cplx corners[4] = {{-width / 2, -height / 2},
                           {width / 2, -height / 2},
                           {width / 2, height / 2},
                           {-width / 2, height / 2}};
  std::vector<cplx> v;
  for (int s = 0; s < 4; ++s)
    for (int j = 0; j < per; ++j)
      v.push_back(center + corners[s] + (corners[(s + 1) % 4] - corners[s]) * (double(j) / per));
  return ClosedCurve(std::move(v));
}

ClosedCurve affine_image(const ClosedCurve& c, cplx a, cplx b) {
  std::vector<cplx> v(c.vertices());
  for (auto& z : v) z = a * z + b;
  return ClosedCurve(std::move(v));
}

ClosedCurve reversed(const ClosedCurve& c) {
  std::vector<cplx> v(c.vertices().rbegin(), c.vertices().rend());
  return ClosedCurve(std::move(v));
}

double signed_area(const ClosedCurve& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx a = c[i], b = c.edge_end(i);
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

double perimeter(const ClosedCurve& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += std::abs(c.edge_end(i) - c[i]);
  return s;
}

namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<cplx> convex_hull(std::vector<cplx> p) {
  std::sort(p.begin(), p.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  if (p.size() < 3) return p;
  std::vector<cplx> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

double diameter(const std::vector<cplx>& pts) {
  const auto h = convex_hull(pts);
  double best = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) best = std::max(best, std::abs(h[i] - h[j]));
  return best;
}

double diameter(const ClosedCurve& c) { return diameter(c.vertices()); }

int winding_number(const ClosedCurve& c, cplx p) {
  int w = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx a = c[i], b = c.edge_end(i);
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross(a, b, p) > 0) ++w;
    } else {
      if (b.imag() <= p.imag() && cross(a, b, p) < 0) --w;
    }
  }
  return w;
}

bool contains(const ClosedCurve& c, cplx p, double tol) {
  return winding_number(c, p) != 0 && distance_to_curve(c, p) > tol;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double distance_to_curve(const ClosedCurve& c, cplx p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    best = std::min(best, point_segment_distance(p, c[i], c.edge_end(i)));
  return best;
}

bool segments_intersect(cplx a, cplx b, cplx c, cplx d, double tol) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b);
  const double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return point_segment_distance(a, c, d) <= tol || point_segment_distance(b, c, d) <= tol ||
         point_segment_distance(c, a, b) <= tol || point_segment_distance(d, a, b) <= tol;
}

namespace {

struct Edge {
  double xmin, xmax;
  cplx a, b;
  int curve;
  std::size_t index;
};

std::vector<Edge> edges_of(const ClosedCurve& c, int id) {
  std::vector<Edge> e;
  e.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx a = c[i], b = c.edge_end(i);
    e.push_back({std::min(a.real(), b.real()), std::max(a.real(), b.real()), a, b, id, i});
  }
  return e;
}

// Calls visit(e, f) for every edge pair whose x-extents overlap within tol.
// Returns true as soon as visit does.
template <class Visit>
bool sweep(std::vector<Edge> edges, double tol, Visit&& visit) {
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.xmin < y.xmin; });
  std::vector<const Edge*> active;
  for (const Edge& e : edges) {
    std::erase_if(active, [&](const Edge* a) { return a->xmax + tol < e.xmin; });
    for (const Edge* a : active)
      if (visit(*a, e)) return true;
    active.push_back(&e);
  }
  return false;
}

bool edges_adjacent(const Edge& x, const Edge& y, std::size_t n) {
  if (x.curve != y.curve) return false;
  const std::size_t d = x.index > y.index ? x.index - y.index : y.index - x.index;
  return d == 0 || d == 1 || d == n - 1;
}

}  // namespace

bool is_simple(const ClosedCurve& c, double tol) {
  const std::size_t n = c.size();
  return !sweep(edges_of(c, 0), tol, [&](const Edge& x, const Edge& y) {
    if (edges_adjacent(x, y, n)) return false;
    if (std::max(x.a.imag(), x.b.imag()) + tol < std::min(y.a.imag(), y.b.imag()) ||
        std::max(y.a.imag(), y.b.imag()) + tol < std::min(x.a.imag(), x.b.imag()))
      return false;
    return segments_intersect(x.a, x.b, y.a, y.b, tol);
  });
}

bool curves_cross(const ClosedCurve& a, const ClosedCurve& b, double tol) {
  auto e = edges_of(a, 0);
  const auto f = edges_of(b, 1);
  e.insert(e.end(), f.begin(), f.end());
  return sweep(std::move(e), tol, [&](const Edge& x, const Edge& y) {
    if (x.curve == y.curve) return false;
    if (std::max(x.a.imag(), x.b.imag()) + tol < std::min(y.a.imag(), y.b.imag()) ||
        std::max(y.a.imag(), y.b.imag()) + tol < std::min(x.a.imag(), x.b.imag()))
      return false;
    return segments_intersect(x.a, x.b, y.a, y.b, tol);
  });
}

bool curve_inside(const ClosedCurve& inner, const ClosedCurve& outer, double tol) {
  for (const cplx& z : inner.vertices())
    if (winding_number(outer, z) == 0) return false;
  return !curves_cross(inner, outer, tol);
}

ClosedCurve resample_arclength(const ClosedCurve& c, int m) {
  const std::size_t n = c.size();
  std::vector<double> s(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + std::abs(c.edge_end(i) - c[i]);
  const double total = s[n];
  if (!(total > 0.0)) throw Error(ErrorKind::degenerate_region, "curve has zero length");
  std::vector<cplx> v(m);
  std::size_t seg = 0;
  for (int j = 0; j < m; ++j) {
    const double t = total * j / m;
    while (seg + 1 < n && s[seg + 1] <= t) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double u = len > 0.0 ? (t - s[seg]) / len : 0.0;
    v[j] = c[seg] + u * (c.edge_end(seg) - c[seg]);
  }
  return ClosedCurve(std::move(v));
}

Box bounding_box(const ClosedCurve& c) {
  Box b{c[0].real(), c[0].real(), c[0].imag(), c[0].imag()};
  for (const cplx& z : c.vertices()) {
    b.xmin = std::min(b.xmin, z.real());
    b.xmax = std::max(b.xmax, z.real());
    b.ymin = std::min(b.ymin, z.imag());
    b.ymax = std::max(b.ymax, z.imag());
  }
  return b;
}

}  // namespace fibrenorm
