#pragma once
// Deterministic JSON and CSV serialization.  Series files carry
// {meta, entries: [{x, orbit_size, coeffs}]} with orbit representatives in
// lexicographic order, rationals as canonical "p/q" decimal strings, and
// floats printed with 17 significant digits so identical values always
// produce identical bytes.  dump_json is a custom emitter over
// nlohmann::ordered_json with those formatting rules; parsing goes through
// nlohmann's parser.

#include <string>

#include <nlohmann/json.hpp>

#include "wsaw/spatial_series.hpp"
#include "wsaw/walk_enum.hpp"

namespace wsaw {

using Json = nlohmann::ordered_json;

// 17-significant-digit floats (non-finite values become null), 2-space
// indent, arrays of primitives kept on one line
std::string dump_json(const Json& j);
Json parse_json(const std::string& text);  // throws argument_error

struct SeriesFile {
  std::string kind;  // "G", "F", "Pi", ...
  int d = 0;
  int order = 0;
  bool has_beta = false;
  Rational beta;
  bool has_z = false;
  Rational z;
  SpatialSeries series;
};

Json series_file_to_json(const SeriesFile& f);
SeriesFile series_file_from_json(const Json& j);

Json gseries_to_json(const GSeries& g);
GSeries gseries_from_json(const Json& j);

// header x1..xd,orbit_size,c0..cN; rational coefficients in canonical form
std::string series_to_csv(const SpatialSeries& s);

Json error_json(const std::string& type, const std::string& message);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace wsaw
