#pragma once

#include <optional>
#include <vector>

#include "fibrenorm/covering.hpp"
#include "fibrenorm/hunt.hpp"
#include "fibrenorm/io.hpp"
#include "fibrenorm/puzzle.hpp"
#include "fibrenorm/renorm.hpp"

namespace fibrenorm {

// Everything a run needs; default_setup fills in per-degree values that are
// known to bootstrap.
struct PipelineSetup {
  int degree = 4;
  int order = 60;
  Disk u0{0.0, 1.55};
  Disk u1{2.5426, 0.55};
  bool even_mode = true;
  // Hunted level used for the bootstrap and the number of return levels.
  int hunt_n = 14;
  int bootstrap_levels = 10;
  double newton_tol = 1e-12;
  double residual_tol = 1e-10;
  double margin = 0.05;
  double drift_tol = 1e-3;
  int refine = 10;
  int nest_depth = 8;
  // Defaults to the midpoint between |g(0)| and the radius of g's disk.
  std::optional<double> gamma0_radius;
  int nest_vertices = 512;
  double shape_resolution = 0.02;
  Exec exec = Exec::parallel;
};

// Throws usage for odd or small degrees. Degree 2 gets a setup outside the
// theorem's hypotheses and is flagged by is_experimental.
PipelineSetup default_setup(int degree);
bool is_experimental(int degree);

struct HuntRun {
  std::vector<HuntRecord> records;
  RatioReport ratios;
};

HuntRun run_hunt(int degree, int n_max);

// Bootstraps from the last hunted parameter, or polishes `seed` when given.
// Throws non_convergence (with the residual trace) above residual_tol.
CycleSolution solve_cycle(const PipelineSetup& setup, const std::vector<HuntRecord>& records,
                          const std::optional<CycleSolution>& seed = {});

struct SpectrumRun {
  SpectrumReport report;
  HyperbolicityVerdict verdict;
  // |lambda_1|^2 against the top eigenvalue of D(R^2), when requested.
  std::optional<double> second_iterate_top;
};

// The drift re-runs the whole pipeline at order + setup.refine.
SpectrumRun run_spectrum(const PipelineSetup& setup, const CycleSolution& cycle,
                         const std::vector<HuntRecord>& records, bool second_iterate = false);

struct NestRun {
  double gamma0_radius = 0.0;
  std::vector<NestLevel> levels;
  std::vector<ShapeRow> rows;
};

double default_gamma0_radius(const CycleSolution& cycle);
// Circle admissibility proxy: radius strictly between |g(0)| and the radius of
// g's disk, at least 5% of the radius away from both. Throws domain.
void check_gamma0(const CycleSolution& cycle, double radius);
NestRun run_nest(const PipelineSetup& setup, const CycleSolution& cycle);

// True-scale critical pieces and outer pieces of the nest, each region
// carrying the point it was pulled back around.
FamilyFile nest_pieces(const NestRun& nest, const CycleSolution& cycle);

// Escape-time image of K(g) on the gamma0 disk with the rescaled nest
// boundaries drawn on top.
Image render_nest(const CycleSolution& cycle, const NestRun& nest, int width, int max_iter,
                  Exec exec);

}  // namespace fibrenorm
