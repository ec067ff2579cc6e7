#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fibrenorm/covering.hpp"
#include "fibrenorm/geometry.hpp"
#include "fibrenorm/hunt.hpp"
#include "fibrenorm/puzzle.hpp"
#include "fibrenorm/renorm.hpp"
#include "fibrenorm/series.hpp"

namespace fibrenorm {

using json = nlohmann::json;

// "%.17g"; non-finite values become null in JSON.
std::string format_real(double x);
// Long double parameters need more digits to separate hunted values.
std::string format_param(long double x);

// Compact, key-ordered JSON with every double printed by format_real, so
// identical inputs give byte-identical files.
std::string dump_json(const json& j);
void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json series_to_json(const TruncatedSeries& s, int degree_hint);
TruncatedSeries series_from_json(const json& j);

json cycle_to_json(const CycleSolution& c);
// Throws parse on missing fields, wrong types or a map failing validation.
CycleSolution cycle_from_json(const json& j);

json spectrum_to_json(const SpectrumReport& r, const HyperbolicityVerdict& v);
json ratio_to_json(const RatioReport& r);

// Columns n, S_n, c_n, gap, ratio, signature_ok.
std::string hunt_csv(const std::vector<HuntRecord>& records);
// Columns n, tau, dist_h, roundness, eq1_distance.
std::string nest_csv(const std::vector<NestLevel>& nest, const std::vector<ShapeRow>& rows);

json curve_to_json(const ClosedCurve& c);
ClosedCurve curve_from_json(const json& j);

// {"regions": [{"id": k, "boundary": [[re, im], ...], "center": [re, im]?}]}
struct FamilyFile {
  std::vector<Region> regions;
  std::vector<std::optional<cplx>> centers;
};
json family_to_json(const FamilyFile& f);
FamilyFile family_from_json(const json& j);

struct Image {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  Image(int w, int h) : width(w), height(h), rgb(std::size_t(w) * h * 3, 0) {}
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Binary PPM (P6).
void write_ppm(const std::filesystem::path& path, const Image& img);

}  // namespace fibrenorm
