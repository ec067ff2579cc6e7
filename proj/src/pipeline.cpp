#include "fibrenorm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fibrenorm {

bool is_experimental(int degree) { return degree == 2; }

PipelineSetup default_setup(int degree) {
  if (degree < 2 || degree % 2 != 0)
    throw Error(ErrorKind::usage, "degree must be even and >= 2, got " + std::to_string(degree));
  PipelineSetup s;
  s.degree = degree;
  if (degree == 2) {
    // Quadratic Fibonacci maps degenerate under renormalization; these disks
    // only give the bootstrap something to try.
    s.order = 60;
    s.u0 = Disk(0.0, 1.5);
    s.u1 = Disk(3.0, 0.8);
    s.hunt_n = 10;
    s.bootstrap_levels = 8;
  } else if (degree == 4) {
    s.order = 60;
    s.u0 = Disk(0.0, 1.55);
    s.u1 = Disk(2.5426, 0.55);
    s.hunt_n = 14;
  } else {
    // The central disk is pinched along the imaginary axis so that G maps it
    // into the outer disk; a round disk of the same real extent does not.
    s.order = 140;
    s.u0 = Disk(0.0, 1.275, 0.06, 7);
    s.u1 = Disk(1.758, 0.382);
    s.hunt_n = 14;
  }
  return s;
}

HuntRun run_hunt(int degree, int n_max) {
  HuntRun h;
  h.records = fibonacci_bracket_chain(degree, n_max);
  h.ratios = ratio_table(h.records);
  return h;
}

CycleSolution solve_cycle(const PipelineSetup& setup, const std::vector<HuntRecord>& records,
                          const std::optional<CycleSolution>& seed) {
  CycleOptions opts;
  opts.tol = setup.newton_tol;
  opts.exec = setup.exec;
  SliceMap start = [&] {
    if (seed) return seed->map;
    if (records.empty()) throw Error(ErrorKind::precondition, "no hunt records to bootstrap from");
    const PowerFamilyMap f(setup.degree, records.back().c);
    return bootstrap_slice_map(f, setup.bootstrap_levels, setup.u0, setup.order, setup.u1,
                               setup.order, setup.even_mode);
  }();
  CycleSolution sol = find_cycle(start, opts);
  if (!(sol.residual < setup.residual_tol))
    throw Error(ErrorKind::non_convergence,
                "cycle residual " + format_real(sol.residual) + " above " +
                    format_real(setup.residual_tol),
                sol.residual, sol.trace);
  return sol;
}

SpectrumRun run_spectrum(const PipelineSetup& setup, const CycleSolution& cycle,
                         const std::vector<HuntRecord>& records, bool second_iterate) {
  const int order = cycle.map.central.order();
  SpectrumRun out;
  out.report = spectrum(cycle_jacobian(cycle.map, setup.exec), setup.margin, order);
  if (setup.refine > 0) {
    PipelineSetup fine = setup;
    fine.order = order + setup.refine;
    std::optional<CycleSolution> seed;
    if (records.empty()) {
      // No hunt data: lift the checkpoint to the finer order instead.
      SliceMap m = cycle.map;
      m.central = m.central.with_order(fine.order);
      m.outer = m.outer.with_order(fine.order);
      seed = CycleSolution{m, cycle.beta, cycle.residual, 0, {}};
    }
    const CycleSolution refined = solve_cycle(fine, records, seed);
    const SpectrumReport r2 = spectrum(cycle_jacobian(refined.map, setup.exec), setup.margin,
                                       fine.order);
    out.report.drift = std::fabs(std::abs(out.report.eigenvalues.at(0)) -
                                 std::abs(r2.eigenvalues.at(0)));
  } else {
    out.report.drift = std::numeric_limits<double>::quiet_NaN();
  }
  out.verdict = hyperbolicity_verdict(out.report, setup.drift_tol);
  if (second_iterate) {
    const SpectrumReport r2 = spectrum(second_iterate_jacobian(cycle.map, setup.exec));
    out.second_iterate_top = std::abs(r2.eigenvalues.at(0));
  }
  return out;
}

double default_gamma0_radius(const CycleSolution& cycle) {
  const TruncatedSeries g = cycle_generator(cycle);
  return 0.5 * (std::abs(g.eval_local(g.disk().local(0.0))) + g.disk().inner_radius());
}

void check_gamma0(const CycleSolution& cycle, double radius) {
  const TruncatedSeries g = cycle_generator(cycle);
  const double value = std::abs(g.eval_local(g.disk().local(0.0)));
  const double outer = g.disk().inner_radius();
  const double gap = 0.05 * radius;
  if (!(radius > value + gap && radius < outer - gap)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gamma0 radius %.6g must lie in (|g(0)|, disk radius) = (%.6g, %.6g) "
                  "with 5%% clearance",
                  radius, value, outer);
    throw Error(ErrorKind::domain, buf, radius);
  }
}

NestRun run_nest(const PipelineSetup& setup, const CycleSolution& cycle) {
  NestRun out;
  out.gamma0_radius = setup.gamma0_radius.value_or(default_gamma0_radius(cycle));
  check_gamma0(cycle, out.gamma0_radius);
  NestOptions no;
  no.vertices = setup.nest_vertices;
  out.levels = principal_nest(cycle, circle_curve(0.0, out.gamma0_radius, setup.nest_vertices),
                              setup.nest_depth, no);
  ShapeOptions so;
  so.resolution = setup.shape_resolution;
  so.exec = setup.exec;
  out.rows = shape_convergence_report(cycle, out.levels, so);
  return out;
}

FamilyFile nest_pieces(const NestRun& nest, const CycleSolution& cycle) {
  const cplx critical_value = cycle.map.central.eval_local(0.0);
  FamilyFile f;
  int id = 0;
  for (const NestLevel& lv : nest.levels) {
    f.regions.push_back(make_region(lv.boundary, id++));
    f.centers.push_back(cplx(0.0));
    if (lv.outer) {
      f.regions.push_back(make_region(affine_image(*lv.outer, lv.tau, 0.0), id++));
      f.centers.push_back(lv.tau * critical_value);
    }
  }
  return f;
}

namespace {

void draw_segment(Image& img, const Window& w, double px, cplx a, cplx b, std::uint8_t r,
                  std::uint8_t g, std::uint8_t bl) {
  const int steps = std::max(1, int(std::ceil(std::abs(b - a) / px)) * 2);
  for (int s = 0; s <= steps; ++s) {
    const cplx z = a + (b - a) * (double(s) / steps);
    img.set(int(std::lround((z.real() - w.xmin) / px)), int(std::lround((w.ymax - z.imag()) / px)), r,
            g, bl);
  }
}

}  // namespace

Image render_nest(const CycleSolution& cycle, const NestRun& nest, int width, int max_iter,
                  Exec exec) {
  if (width < 16) throw Error(ErrorKind::usage, "image width must be >= 16");
  const double r = nest.gamma0_radius;
  const double px = 2.0 * r / width;
  // Pixel centres, so the grid is exactly width x width.
  const Window win{-r + 0.5 * px, r - 0.5 * px, -r + 0.5 * px, r - 0.5 * px};
  const TruncatedSeries g = cycle_generator(cycle);
  const EscapeGrid grid = escape_grid([&g](cplx z) { return g.eval_unchecked(z); },
                                      [r](cplx z) { return std::abs(z) <= r; }, win, px,
                                      max_iter, exec);
  Image img(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const int e = grid.escape[std::size_t(j) * grid.nx + i];
      // Grid rows run upwards, image rows downwards.
      const int y = grid.ny - 1 - j;
      if (e == 0) {
        img.set(i, y, 0, 0, 0);
      } else {
        const double t = std::log1p(double(e)) / std::log1p(double(max_iter + 1));
        const auto v = std::uint8_t(255.0 * (1.0 - t));
        img.set(i, y, v, v, 255);
      }
    }
  static constexpr std::uint8_t palette[4][3] = {
      {255, 64, 64}, {255, 200, 0}, {0, 200, 80}, {200, 0, 200}};
  for (const NestLevel& lv : nest.levels) {
    const auto& c = palette[lv.n % 4];
    for (std::size_t k = 0; k < lv.rescaled.size(); ++k)
      draw_segment(img, win, px, lv.rescaled[k], lv.rescaled.edge_end(k), c[0], c[1], c[2]);
  }
  return img;
}

}  // namespace fibrenorm
