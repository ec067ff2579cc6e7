#include "fibrenorm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fibrenorm {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_param(long double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

namespace {

void emit(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        emit(v, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::parse, what); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_fail(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  emit(j, out);
  out += '\n';
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::io, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, dump_json(j)); }

json read_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::io, "cannot open " + path.string());
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, path.string() + ": " + e.what());
  }
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json series_to_json(const TruncatedSeries& s, int degree_hint) {
  json coeffs = json::array();
  for (const cplx& c : s.coeffs()) coeffs.push_back(complex_to_json(c));
  const Disk& d = s.disk();
  return {{"degree_hint", degree_hint},
          {"parity", s.parity() == Parity::even ? "even" : "all"},
          {"disk",
           {{"center", complex_to_json(d.center)},
            {"radius", d.radius},
            {"warp", d.warp},
            {"warp_power", d.warp_power}}},
          {"coeffs", std::move(coeffs)}};
}

TruncatedSeries series_from_json(const json& j) {
  const json disk = field<json>(j, "disk");
  Disk d(complex_from_json(field<json>(disk, "center")), field<double>(disk, "radius"),
         disk.contains("warp") ? field<double>(disk, "warp") : 0.0,
         disk.contains("warp_power") ? field<int>(disk, "warp_power") : 3);
  const std::string parity = field<std::string>(j, "parity");
  if (parity != "even" && parity != "all") parse_fail("parity must be 'even' or 'all'");
  const json cj = field<json>(j, "coeffs");
  if (!cj.is_array() || cj.empty()) parse_fail("coeffs must be a nonempty array");
  std::vector<cplx> coeffs;
  for (const json& c : cj) coeffs.push_back(complex_from_json(c));
  try {
    return TruncatedSeries(d, std::move(coeffs), parity == "even" ? Parity::even : Parity::all);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

json cycle_to_json(const CycleSolution& c) {
  json trace = json::array();
  for (double r : c.trace) trace.push_back(r);
  return {{"degree", c.map.degree},
          {"even_mode", c.map.even_mode},
          {"beta", c.beta},
          {"residual", c.residual},
          {"newton_iters", c.newton_iters},
          {"trace", std::move(trace)},
          {"central", series_to_json(c.map.central, c.map.degree)},
          {"outer", series_to_json(c.map.outer, 1)}};
}

CycleSolution cycle_from_json(const json& j) {
  const int degree = field<int>(j, "degree");
  const bool even = field<bool>(j, "even_mode");
  CycleSolution c{SliceMap(degree, series_from_json(field<json>(j, "central")),
                           series_from_json(field<json>(j, "outer")), even),
                  field<double>(j, "beta"), field<double>(j, "residual"), 0, {}};
  if (j.contains("newton_iters")) c.newton_iters = field<int>(j, "newton_iters");
  if (j.contains("trace")) c.trace = field<std::vector<double>>(j, "trace");
  if (!(c.beta > 0.0 && c.beta < 1.0)) parse_fail("beta outside (0, 1)");
  try {
    c.map.validate();
  } catch (const Error& e) {
    parse_fail(std::string("checkpoint map: ") + e.what());
  }
  return c;
}

json spectrum_to_json(const SpectrumReport& r, const HyperbolicityVerdict& v) {
  json ev = json::array();
  for (const cplx& z : r.eigenvalues) ev.push_back(complex_to_json(z));
  const char* status = v.status == VerdictStatus::hyperbolic       ? "hyperbolic"
                       : v.status == VerdictStatus::not_hyperbolic ? "not_hyperbolic"
                                                                   : "inconclusive";
  return {{"eigenvalues", std::move(ev)},
          {"unstable_count", r.unstable_count},
          {"neutral_count", r.neutral_count},
          {"margin", r.margin},
          {"truncation_order", r.truncation_order},
          {"drift", r.drift},
          {"verdict", status},
          {"gamma", v.gamma},
          {"unstable_eigenvalue", complex_to_json(v.unstable_eigenvalue)}};
}

json ratio_to_json(const RatioReport& r) {
  json ratios = json::array();
  for (double x : r.ratios) ratios.push_back(x);
  return {{"ratios", std::move(ratios)},
          {"gamma_estimate", r.gamma_estimate},
          {"extrapolated_gamma", r.extrapolated_gamma},
          {"c_infinity_estimate", format_param(r.c_infinity_estimate)}};
}

std::string hunt_csv(const std::vector<HuntRecord>& records) {
  std::ostringstream os;
  os << "n,S_n,c_n,gap,ratio,signature_ok\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const HuntRecord& r = records[i];
    os << r.n << ',' << r.period << ',' << format_param(r.c) << ',';
    if (i >= 1) os << format_real(double(records[i - 1].c - r.c));
    os << ',';
    if (i >= 2) {
      const long double den = records[i - 1].c - r.c;
      if (den != 0.0L) os << format_real(double((records[i - 2].c - records[i - 1].c) / den));
    }
    os << ',' << (r.signature == fibonacci_prefix(r.n) ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string nest_csv(const std::vector<NestLevel>& nest, const std::vector<ShapeRow>& rows) {
  std::ostringstream os;
  os << "n,tau,dist_h,roundness,eq1_distance\n";
  for (const ShapeRow& r : rows) {
    os << r.n << ',' << format_real(nest.at(r.n).tau) << ',' << format_real(r.dist_h) << ','
       << format_real(r.roundness) << ',';
    if (r.eq1_distance) os << format_real(*r.eq1_distance);
    os << '\n';
  }
  return os.str();
}

json curve_to_json(const ClosedCurve& c) {
  json out = json::array();
  for (const cplx& z : c.vertices()) out.push_back(complex_to_json(z));
  return out;
}

ClosedCurve curve_from_json(const json& j) {
  if (!j.is_array()) parse_fail("curve must be an array of [re, im]");
  std::vector<cplx> v;
  for (const json& z : j) v.push_back(complex_from_json(z));
  try {
    return ClosedCurve(std::move(v));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

json family_to_json(const FamilyFile& f) {
  json regions = json::array();
  for (std::size_t i = 0; i < f.regions.size(); ++i) {
    json r = {{"id", f.regions[i].id}, {"boundary", curve_to_json(f.regions[i].boundary)}};
    if (i < f.centers.size() && f.centers[i]) r["center"] = complex_to_json(*f.centers[i]);
    regions.push_back(std::move(r));
  }
  return {{"regions", std::move(regions)}};
}

FamilyFile family_from_json(const json& j) {
  const json regions = field<json>(j, "regions");
  if (!regions.is_array()) parse_fail("'regions' must be an array");
  FamilyFile f;
  for (const json& r : regions) {
    f.regions.push_back(make_region(curve_from_json(field<json>(r, "boundary")), field<int>(r, "id")));
    f.centers.push_back(r.contains("center") ? std::optional(complex_from_json(r["center"]))
                                             : std::nullopt);
  }
  return f;
}

void Image::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const std::size_t k = (std::size_t(y) * width + x) * 3;
  rgb[k] = r;
  rgb[k + 1] = g;
  rgb[k + 2] = b;
}

void write_ppm(const std::filesystem::path& path, const Image& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
  if (!os) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace fibrenorm
