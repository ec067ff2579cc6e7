#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace fibrenorm {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(ErrorKind::usage, "config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad(line, "not a number: '" + s + "'");
  }
  if (used != s.size()) bad(line, "trailing characters in '" + s + "'");
  return v;
}

// Drops a # comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable out;
  std::istringstream is(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) bad(line, "empty key or value");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.count(full)) bad(line, "duplicate key '" + full + "'");
    if (val == "true" || val == "false") {
      out[full] = val == "true";
    } else if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') bad(line, "unterminated string");
      out[full] = val.substr(1, val.size() - 2);
    } else if (val.front() == '[') {
      if (val.back() != ']') bad(line, "unterminated array");
      std::vector<double> xs;
      std::istringstream items(val.substr(1, val.size() - 2));
      std::string item;
      while (std::getline(items, item, ','))
        if (!trim(item).empty()) xs.push_back(parse_number(trim(item), line));
      out[full] = std::move(xs);
    } else {
      out[full] = parse_number(val, line);
    }
  }
  return out;
}

namespace {

template <class T>
const T& get(const TomlTable& t, const std::string& key) {
  const T* v = std::get_if<T>(&t.at(key));
  if (!v) throw Error(ErrorKind::usage, "config key '" + key + "' has the wrong type");
  return *v;
}

int get_int(const TomlTable& t, const std::string& key) {
  const double v = get<double>(t, key);
  if (v != std::floor(v)) throw Error(ErrorKind::usage, "config key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

cplx get_point(const TomlTable& t, const std::string& key) {
  const auto& v = get<std::vector<double>>(t, key);
  if (v.size() != 2) throw Error(ErrorKind::usage, "config key '" + key + "' must be [re, im]");
  return {v[0], v[1]};
}

}  // namespace

RunConfig config_from_table(const TomlTable& table, int degree) {
  RunConfig c;
  if (table.count("degree")) degree = get_int(table, "degree");
  c.setup = default_setup(degree);
  PipelineSetup& s = c.setup;
  using Apply = std::function<void(const std::string&)>;
  const std::map<std::string, Apply> keys = {
      {"degree", [](const std::string&) {}},
      {"truncation_order", [&](const std::string& k) { s.order = get_int(table, k); }},
      {"output_dir", [&](const std::string& k) { c.output_dir = get<std::string>(table, k); }},
      {"seed_checkpoint",
       [&](const std::string& k) { c.seed_checkpoint = get<std::string>(table, k); }},
      {"disks.u0_center", [&](const std::string& k) { s.u0.center = get_point(table, k); }},
      {"disks.u0_radius", [&](const std::string& k) { s.u0.radius = get<double>(table, k); }},
      {"disks.u0_warp", [&](const std::string& k) { s.u0.warp = get<double>(table, k); }},
      {"disks.u0_warp_power", [&](const std::string& k) { s.u0.warp_power = get_int(table, k); }},
      {"disks.u1_center", [&](const std::string& k) { s.u1.center = get_point(table, k); }},
      {"disks.u1_radius", [&](const std::string& k) { s.u1.radius = get<double>(table, k); }},
      {"tolerances.newton", [&](const std::string& k) { s.newton_tol = get<double>(table, k); }},
      {"tolerances.residual",
       [&](const std::string& k) { s.residual_tol = get<double>(table, k); }},
      {"tolerances.margin", [&](const std::string& k) { s.margin = get<double>(table, k); }},
      {"tolerances.drift", [&](const std::string& k) { s.drift_tol = get<double>(table, k); }},
      {"depths.hunt_n_max", [&](const std::string& k) { s.hunt_n = get_int(table, k); }},
      {"depths.nest_depth", [&](const std::string& k) { s.nest_depth = get_int(table, k); }},
      {"depths.bootstrap_levels",
       [&](const std::string& k) { s.bootstrap_levels = get_int(table, k); }},
      {"nest.gamma0_radius",
       [&](const std::string& k) { s.gamma0_radius = get<double>(table, k); }},
      {"nest.vertices", [&](const std::string& k) { s.nest_vertices = get_int(table, k); }},
      {"nest.resolution",
       [&](const std::string& k) { s.shape_resolution = get<double>(table, k); }},
  };
  for (const auto& [k, v] : table) {
    const auto it = keys.find(k);
    if (it == keys.end()) throw Error(ErrorKind::usage, "unknown config key '" + k + "'");
    it->second(k);
  }
  // Rebuild the disks so the chart invariants are checked.
  s.u0 = Disk(s.u0.center, s.u0.radius, s.u0.warp, s.u0.warp_power);
  s.u1 = Disk(s.u1.center, s.u1.radius, s.u1.warp, s.u1.warp_power);
  return c;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<int> degree) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::io, "cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  TomlTable t = parse_toml(ss.str());
  // A degree given on the command line picks the defaults the file amends.
  if (degree) t["degree"] = double(*degree);
  return config_from_table(t, degree.value_or(4));
}

void validate_config(const RunConfig& c) {
  const PipelineSetup& s = c.setup;
  if (s.degree < 2 || s.degree % 2 != 0)
    throw Error(ErrorKind::usage, "degree must be even and >= 2");
  if (!(s.newton_tol > 0 && s.residual_tol > 0 && s.margin > 0 && s.drift_tol > 0))
    throw Error(ErrorKind::usage, "tolerances must be positive");
  if (s.order < 8) throw Error(ErrorKind::usage, "truncation order must be >= 8");
  if (s.refine < 0) throw Error(ErrorKind::usage, "refine must be >= 0");
  if (s.nest_depth < 0) throw Error(ErrorKind::usage, "nest depth must be >= 0");
  if (!(s.shape_resolution > 0)) throw Error(ErrorKind::usage, "resolution must be positive");
}

}  // namespace fibrenorm
