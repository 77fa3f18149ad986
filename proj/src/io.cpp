#include "wsaw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wsaw/errors.hpp"

namespace wsaw {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_number(std::string& out, const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      out += "null";
      return;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    return;
  }
  if (j.is_number_unsigned()) {
    out += std::to_string(j.get<std::uint64_t>());
    return;
  }
  out += std::to_string(j.get<std::int64_t>());
}

bool all_primitive(const Json& arr) {
  for (const auto& e : arr)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

void emit(std::string& out, const Json& j, int depth) {
  const std::string pad(std::size_t(2 * depth), ' ');
  const std::string pad_in(std::size_t(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::string: append_escaped(out, j.get<std::string>()); break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::number_float: append_number(out, j); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      if (all_primitive(j)) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          emit(out, e, depth);
        }
        out += ']';
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        emit(out, e, depth + 1);
      }
      out += '\n';
      out += pad;
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        emit(out, it.value(), depth + 1);
      }
      out += '\n';
      out += pad;
      out += '}';
      break;
    }
    default:
      throw argument_error("unsupported json value type");
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  emit(out, j, 0);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw argument_error("malformed json");
  return j;
}

Json series_file_to_json(const SeriesFile& f) {
  Json meta;
  meta["format"] = "wsaw-series";
  meta["version"] = 1;
  meta["kind"] = f.kind;
  meta["d"] = f.d;
  meta["order"] = f.order;
  if (f.has_beta) meta["beta"] = to_string(f.beta);
  if (f.has_z) meta["z"] = to_string(f.z);
  meta["orbit_reduced"] = f.series.orbit_reduced();
  meta["walk_support"] = f.series.walk_support();

  Json entries = Json::array();
  for (const auto& [x, poly] : f.series.entries()) {
    Json e;
    Json coords = Json::array();
    for (int j = 0; j < f.d; ++j) coords.push_back(x[j]);
    e["x"] = std::move(coords);
    e["orbit_size"] = orbit_size(x);
    Json coeffs = Json::array();
    for (int n = 0; n <= f.order; ++n)
      coeffs.push_back(to_string(poly.coeff(n)));
    e["coeffs"] = std::move(coeffs);
    entries.push_back(std::move(e));
  }

  Json doc;
  doc["meta"] = std::move(meta);
  doc["entries"] = std::move(entries);
  return doc;
}

namespace {

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw argument_error(std::string("series json missing key: ") + key);
  return *it;
}

}  // namespace

SeriesFile series_file_from_json(const Json& j) {
  if (!j.is_object()) throw argument_error("series json: not an object");
  const Json& meta = require(j, "meta");
  if (require(meta, "format").get<std::string>() != "wsaw-series")
    throw argument_error("series json: unexpected format tag");
  if (require(meta, "version").get<int>() != 1)
    throw argument_error("series json: unsupported version");

  SeriesFile f;
  f.kind = require(meta, "kind").get<std::string>();
  f.d = require(meta, "d").get<int>();
  f.order = require(meta, "order").get<int>();
  if (f.d < 1 || f.d > LatticePoint::kMaxDim || f.order < 0)
    throw argument_error("series json: d or order out of range");
  if (auto it = meta.find("beta"); it != meta.end()) {
    f.has_beta = true;
    f.beta = rational_from_string(it->get<std::string>());
  }
  if (auto it = meta.find("z"); it != meta.end()) {
    f.has_z = true;
    f.z = rational_from_string(it->get<std::string>());
  }
  const bool orbit_reduced = require(meta, "orbit_reduced").get<bool>();
  const bool walk_support = require(meta, "walk_support").get<bool>();

  f.series = SpatialSeries(f.d, f.order, orbit_reduced);
  for (const Json& e : require(j, "entries")) {
    const Json& xs = require(e, "x");
    if (int(xs.size()) != f.d)
      throw argument_error("series json: entry dimension mismatch");
    LatticePoint x(f.d);
    for (int c = 0; c < f.d; ++c) x[c] = xs[std::size_t(c)].get<Coord>();
    if (orbit_reduced && x != orbit_representative(x))
      throw argument_error("series json: entry is not an orbit representative");
    const Json& coeffs = require(e, "coeffs");
    if (int(coeffs.size()) != f.order + 1)
      throw argument_error("series json: coefficient count mismatch");
    ZPolynomial poly(f.order);
    for (int n = 0; n <= f.order; ++n)
      poly.set_coeff(n, rational_from_string(coeffs[std::size_t(n)].get<std::string>()));
    f.series.set(x, std::move(poly));
  }
  f.series.prune_zeros();
  f.series.set_walk_support(walk_support);
  return f;
}

Json gseries_to_json(const GSeries& g) {
  SeriesFile f;
  f.kind = "G";
  f.d = g.params.d;
  f.order = g.params.order;
  f.has_beta = true;
  f.beta = g.params.beta;
  f.series = g.series;
  return series_file_to_json(f);
}

GSeries gseries_from_json(const Json& j) {
  SeriesFile f = series_file_from_json(j);
  if (f.kind != "G")
    throw argument_error("expected a series of kind G, got " + f.kind);
  if (!f.has_beta) throw argument_error("G series json missing beta");
  GSeries g;
  g.params.d = f.d;
  g.params.beta = f.beta;
  g.params.order = f.order;
  g.series = std::move(f.series);
  return g;
}

std::string series_to_csv(const SpatialSeries& s) {
  std::ostringstream out;
  for (int j = 0; j < s.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "orbit_size";
  for (int n = 0; n <= s.order(); ++n) out << ",c" << n;
  out << '\n';
  for (const auto& [x, poly] : s.entries()) {
    for (int j = 0; j < s.dim(); ++j) out << x[j] << ',';
    out << orbit_size(x);
    for (int n = 0; n <= s.order(); ++n)
      out << ',' << to_string(poly.coeff(n));
    out << '\n';
  }
  return out.str();
}

Json error_json(const std::string& type, const std::string& message) {
  Json err;
  err["type"] = type;
  err["message"] = message;
  Json doc;
  doc["error"] = std::move(err);
  return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw argument_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw argument_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw argument_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace wsaw
