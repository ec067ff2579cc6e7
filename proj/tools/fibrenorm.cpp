#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "config.hpp"
#include "fibrenorm/io.hpp"
#include "fibrenorm/pipeline.hpp"

namespace fs = std::filesystem;
using namespace fibrenorm;

namespace {

enum Exit { ok = 0, usage = 1, precision = 2, no_convergence = 3, inconclusive = 4, io_failure = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage:
    case ErrorKind::precondition:
    case ErrorKind::malformed_input:
      return usage;
    case ErrorKind::precision_limit:
      return precision;
    case ErrorKind::inconclusive:
      return inconclusive;
    case ErrorKind::io:
    case ErrorKind::parse:
      return io_failure;
    default:
      return no_convergence;
  }
}

struct Flags {
  std::optional<int> degree;
  std::optional<std::string> config;
  std::optional<int> order;
  std::optional<std::string> output_dir;
  std::optional<std::string> seed_checkpoint;
  std::string exec = "parallel";
  std::optional<int> n_max;
  std::optional<int> refine;
  std::optional<int> depth;
  std::optional<double> gamma0_radius;
  int resolution = 800;
  int max_iter = 200;
  std::string family;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--degree", f.degree, "Even critical degree d");
  sub->add_option("--config", f.config, "TOML run configuration")->check(CLI::ExistingFile);
  sub->add_option("--order", f.order, "Truncation order N per branch");
  sub->add_option("--output-dir", f.output_dir,
                  "Directory for all outputs (default $FIBRENORM_OUTPUT_DIR or .)");
  sub->add_option("--exec", f.exec, "Kernel execution")
      ->check(CLI::IsMember({"serial", "parallel"}));
}

void add_checkpoint(CLI::App* sub, Flags& f) {
  sub->add_option("--seed-checkpoint", f.seed_checkpoint, "Cycle checkpoint to start from");
}

RunConfig build_config(const Flags& f) {
  RunConfig c = f.config ? load_config(*f.config, f.degree)
                         : config_from_table({}, f.degree.value_or(4));
  if (f.order) c.setup.order = *f.order;
  if (f.refine) c.setup.refine = *f.refine;
  if (f.depth) c.setup.nest_depth = *f.depth;
  if (f.gamma0_radius) c.setup.gamma0_radius = *f.gamma0_radius;
  if (f.seed_checkpoint) c.seed_checkpoint = fs::path(*f.seed_checkpoint);
  c.setup.exec = f.exec == "serial" ? Exec::serial : Exec::parallel;
  bool dir_from_file = false;
  if (f.config) {
    const TomlTable t = parse_toml([&] {
      std::ifstream is(*f.config);
      std::stringstream ss;
      ss << is.rdbuf();
      return ss.str();
    }());
    dir_from_file = t.count("output_dir") > 0;
  }
  if (f.output_dir) {
    c.output_dir = *f.output_dir;
  } else if (!dir_from_file) {
    const char* env = std::getenv("FIBRENORM_OUTPUT_DIR");
    c.output_dir = env && *env ? fs::path(env) : fs::path(".");
  }
  validate_config(c);
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output dir " + c.output_dir.string());
  if (is_experimental(c.setup.degree))
    std::fprintf(stderr,
                 "EXPERIMENTAL: degree 2 lies outside the hypotheses of the hyperbolicity "
                 "theorem; results are unsupported\n");
  return c;
}

std::string tag(const char* name, int d) { return std::string(name) + "_d" + std::to_string(d); }

CycleSolution load_cycle(const RunConfig& c) {
  const fs::path p = c.seed_checkpoint.value_or(c.output_dir / (tag("cycle", c.setup.degree) + ".json"));
  CycleSolution sol = cycle_from_json(read_json(p));
  if (sol.map.degree != c.setup.degree)
    throw Error(ErrorKind::usage, "checkpoint " + p.string() + " has degree " +
                                      std::to_string(sol.map.degree) + ", run uses " +
                                      std::to_string(c.setup.degree));
  return sol;
}

int cmd_hunt(const RunConfig& c, const Flags& f) {
  const int d = c.setup.degree;
  const int n_max = f.n_max.value_or(c.setup.hunt_n);
  int code = ok;
  std::vector<HuntRecord> records;
  try {
    records = fibonacci_bracket_chain(d, n_max);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::precision_limit) throw;
    std::fprintf(stderr, "fibrenorm: hunt: %s\n", e.what());
    code = precision;
    const int reach = int(e.value());
    if (reach >= 3) records = fibonacci_bracket_chain(d, reach);
  }
  write_text(c.output_dir / (tag("hunt", d) + ".csv"), hunt_csv(records));
  for (const auto& r : records)
    std::printf("n=%d S_n=%llu c_n=%s\n", r.n, static_cast<unsigned long long>(r.period),
                format_param(r.c).c_str());
  if (records.size() >= 5) {
    const RatioReport rr = ratio_table(records);
    write_json(c.output_dir / (tag("ratio", d) + ".json"), ratio_to_json(rr));
    std::printf("gamma_estimate=%s extrapolated_gamma=%s\n", format_real(rr.gamma_estimate).c_str(),
                format_real(rr.extrapolated_gamma).c_str());
  } else {
    std::printf("ratio table skipped: needs at least 5 records\n");
  }
  return code;
}

int cmd_cycle(const RunConfig& c) {
  const int d = c.setup.degree;
  std::optional<CycleSolution> seed;
  std::vector<HuntRecord> records;
  if (c.seed_checkpoint)
    seed = load_cycle(c);
  else
    records = fibonacci_bracket_chain(d, c.setup.hunt_n);
  const CycleSolution sol = [&] {
    try {
      return solve_cycle(c.setup, records, seed);
    } catch (const Error& e) {
      if (!e.trace().empty()) {
        std::string csv = "iteration,residual\n";
        for (std::size_t i = 0; i < e.trace().size(); ++i)
          csv += std::to_string(i) + "," + format_real(e.trace()[i]) + "\n";
        write_text(c.output_dir / (tag("cycle", d) + "_trace.csv"), csv);
      }
      throw;
    }
  }();
  write_json(c.output_dir / (tag("cycle", d) + ".json"), cycle_to_json(sol));
  std::printf("beta=%s residual=%s newton_iters=%d\n", format_real(sol.beta).c_str(),
              format_real(sol.residual).c_str(), sol.newton_iters);
  return ok;
}

int cmd_spectrum(const RunConfig& c) {
  const int d = c.setup.degree;
  const CycleSolution sol = load_cycle(c);
  std::vector<HuntRecord> records;
  if (c.setup.refine > 0) records = fibonacci_bracket_chain(d, c.setup.hunt_n);
  const SpectrumRun run = run_spectrum(c.setup, sol, records);
  write_json(c.output_dir / (tag("spectrum", d) + ".json"),
             spectrum_to_json(run.report, run.verdict));
  const char* word = run.verdict.status == VerdictStatus::hyperbolic       ? "HYPERBOLIC"
                     : run.verdict.status == VerdictStatus::not_hyperbolic ? "NOT_HYPERBOLIC"
                                                                           : "INCONCLUSIVE";
  const double gamma = std::abs(run.report.eigenvalues.at(0));
  std::printf("%s unstable=%d gamma=%s drift=%s\n", word, run.report.unstable_count,
              format_real(gamma).c_str(), format_real(run.report.drift).c_str());
  const fs::path ratio = c.output_dir / (tag("ratio", d) + ".json");
  if (fs::exists(ratio)) {
    const double hunt = read_json(ratio).at("extrapolated_gamma").get<double>();
    std::printf("CROSSCHECK gamma=%s hunt_extrapolated=%s relative=%s\n",
                format_real(gamma).c_str(), format_real(hunt).c_str(),
                format_real(std::abs(hunt - gamma) / gamma).c_str());
  }
  return run.verdict.status == VerdictStatus::inconclusive ? inconclusive : ok;
}

int cmd_nest(const RunConfig& c) {
  const int d = c.setup.degree;
  const CycleSolution sol = load_cycle(c);
  const NestRun nest = run_nest(c.setup, sol);
  write_text(c.output_dir / (tag("nest", d) + ".csv"), nest_csv(nest.levels, nest.rows));
  json curves = json::array();
  for (const auto& lv : nest.levels) curves.push_back(curve_to_json(lv.rescaled));
  write_json(c.output_dir / (tag("nest_curves", d) + ".json"), curves);
  write_json(c.output_dir / "nest_pieces.json", family_to_json(nest_pieces(nest, sol)));
  std::printf("gamma0_radius=%s\n", format_real(nest.gamma0_radius).c_str());
  for (const auto& r : nest.rows)
    std::printf("n=%d dist_h=%s roundness=%s eq1=%s\n", r.n, format_real(r.dist_h).c_str(),
                format_real(r.roundness).c_str(),
                r.eq1_distance ? format_real(*r.eq1_distance).c_str() : "-");
  return ok;
}

int cmd_render(const RunConfig& c, const Flags& f) {
  const int d = c.setup.degree;
  const CycleSolution sol = load_cycle(c);
  const NestRun nest = run_nest(c.setup, sol);
  const Image img = render_nest(sol, nest, f.resolution, f.max_iter, c.setup.exec);
  const fs::path out = c.output_dir / (tag("julia", d) + ".ppm");
  write_ppm(out, img);
  std::size_t interior = 0;
  for (std::size_t k = 0; k < img.rgb.size(); k += 3)
    interior += img.rgb[k] == 0 && img.rgb[k + 1] == 0 && img.rgb[k + 2] == 0;
  std::printf("image=%s width=%d height=%d interior_pixels=%zu\n", out.string().c_str(),
              img.width, img.height, interior);
  return ok;
}

int cmd_audit(const RunConfig& c, const Flags& f) {
  const FamilyFile fam = family_from_json(read_json(f.family));
  const MarkovCheck mc = markov_check(fam.regions);
  if (mc.ok)
    std::printf("markov_check true\n");
  else
    std::printf("markov_check false regions=%d,%d\n", mc.counterexample->first,
                mc.counterexample->second);
  std::vector<int> parent(fam.regions.size(), -1);
  if (mc.ok) parent = make_markov_family(fam.regions).parent;
  const GeometryStats uni = bounded_geometry(fam.regions);
  std::string csv = "id,parent,roundness,center_ratio\n";
  double pointwise_floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fam.regions.size(); ++i) {
    csv += std::to_string(fam.regions[i].id) + ",";
    if (parent[i] >= 0) csv += std::to_string(fam.regions[parent[i]].id);
    csv += "," + format_real(uni.values[i]) + ",";
    if (fam.centers[i]) {
      const CenteredRegion cr = make_centered(fam.regions[i], *fam.centers[i]);
      const GeometryStats pw =
          bounded_geometry(std::span<const CenteredRegion>(&cr, 1), GeometryMode::pointwise);
      csv += format_real(pw.values[0]);
      pointwise_floor = std::min(pointwise_floor, pw.values[0]);
    }
    csv += "\n";
  }
  write_text(c.output_dir / "audit.csv", csv);
  std::printf("regions=%zu uniform_roundness_floor=%s", fam.regions.size(),
              format_real(uni.worst).c_str());
  if (std::isfinite(pointwise_floor))
    std::printf(" pointwise_floor=%s", format_real(pointwise_floor).c_str());
  std::printf("\n");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci renormalization: parameter hunt, cycle, spectrum and puzzle geometry"};
  app.require_subcommand(1);
  Flags f;

  auto* hunt = app.add_subcommand("hunt", "Hunt Fibonacci superattracting parameters");
  add_common(hunt, f);
  hunt->add_option("--n-max", f.n_max, "Last level to hunt");

  auto* cycle = app.add_subcommand("cycle", "Bootstrap and solve the renormalization cycle");
  add_common(cycle, f);
  add_checkpoint(cycle, f);

  auto* spec = app.add_subcommand("spectrum", "Spectrum of D(R o phi) and hyperbolicity verdict");
  add_common(spec, f);
  add_checkpoint(spec, f);
  spec->add_option("--refine", f.refine, "Order increment for the drift re-run");

  auto* nest = app.add_subcommand("nest", "Principal nest and shape convergence table");
  add_common(nest, f);
  add_checkpoint(nest, f);
  nest->add_option("--depth", f.depth, "Nest depth");
  nest->add_option("--gamma0-radius", f.gamma0_radius, "Radius of the starting circle");

  auto* render = app.add_subcommand("render", "PPM image of K(g) with nest boundaries");
  add_common(render, f);
  add_checkpoint(render, f);
  render->add_option("--depth", f.depth, "Nest depth");
  render->add_option("--gamma0-radius", f.gamma0_radius, "Radius of the starting circle");
  render->add_option("--resolution", f.resolution, "Image width in pixels")
      ->check(CLI::Range(16, 20000));
  render->add_option("--max-iter", f.max_iter, "Escape iterations")->check(CLI::Range(1, 65000));

  auto* audit = app.add_subcommand("audit", "Covering-geometry statistics of a region family");
  add_common(audit, f);
  audit->add_option("--family", f.family, "Family JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    const RunConfig c = build_config(f);
    if (hunt->parsed()) return cmd_hunt(c, f);
    if (cycle->parsed()) return cmd_cycle(c);
    if (spec->parsed()) return cmd_spectrum(c);
    if (nest->parsed()) return cmd_nest(c);
    if (render->parsed()) return cmd_render(c, f);
    return cmd_audit(c, f);
  } catch (const Error& e) {
    const std::string name = app.get_subcommands().empty() ? "fibrenorm"
                                                           : app.get_subcommands().front()->get_name();
    std::fprintf(stderr, "fibrenorm: %s: %s\n", name.c_str(), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fibrenorm: %s\n", e.what());
    return no_convergence;
  }
}
