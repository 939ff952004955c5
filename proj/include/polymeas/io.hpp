#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "polymeas/chambers.hpp"

namespace polymeas::io {

using Json = nlohmann::ordered_json;

inline constexpr int kVersion = 1;
inline constexpr const char* kConfigFormat = "polymeas/config";
inline constexpr const char* kMeasureFormat = "polymeas/measure";
inline constexpr const char* kResultFormat = "polymeas/result";

inline const char* field_name(Field f) { return f == Field::rational ? "Q" : "Q(r3)"; }

inline Field parse_field(const std::string& name) {
  if (name == "Q") return Field::rational;
  if (name == "Q(r3)") return Field::sqrt3;
  throw ParseError("unknown field '" + name + "' (expected Q or Q(r3))");
}

inline void expect_header(const Json& doc, const char* format) {
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != format)
    throw ParseError(std::string("expected a ") + format + " document");
  if (!doc.contains("version") || doc["version"] != kVersion)
    throw ParseError(std::string("unsupported ") + format + " version");
}

inline Json scalar_json(const Scalar& x) { return x.to_string(); }

inline Json point_json(const CNum& z) { return Json::array({z.re.to_string(), z.im.to_string()}); }

inline Json config_json(const PointSet& s) {
  Json pts = Json::array();
  for (const auto& z : s.points()) pts.push_back(point_json(z));
  return Json{{"format", kConfigFormat}, {"version", kVersion}, {"field", field_name(s.field())}, {"points", pts}};
}

inline Scalar parse_scalar_in(const Json& j, Field field) {
  if (!j.is_string()) throw ParseError("coordinates must be strings in exact syntax");
  Scalar x = Scalar::parse(j.get<std::string>());
  if (field == Field::rational && !x.is_rational())
    throw ParseError("irrational value '" + j.get<std::string>() + "' in a Q document");
  return x;
}

inline PointSet config_from_json(const Json& doc) {
  expect_header(doc, kConfigFormat);
  Field field = parse_field(doc.at("field").get<std::string>());
  std::vector<CNum> pts;
  for (const auto& p : doc.at("points")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("each point must be a pair [x, y]");
    pts.emplace_back(parse_scalar_in(p[0], field), parse_scalar_in(p[1], field));
  }
  try {
    return PointSet(std::move(pts), field);
  } catch (const GeometryError& e) {
    throw ParseError(e.what());
  }
}

inline Json measure_json(const PolygonalMeasure& mu) {
  Json dens = Json::array();
  for (const auto& [key, d] : mu.densities())
    dens.push_back(Json{{"triangle", Json::array({0, key.first, key.second})},
                        {"re", d.re.to_string()},
                        {"im", d.im.to_string()}});
  return Json{{"format", kMeasureFormat}, {"version", kVersion}, {"config", config_json(mu.base())}, {"densities", dens}};
}

inline PolygonalMeasure measure_from_json(const Json& doc) {
  expect_header(doc, kMeasureFormat);
  PointSet s = config_from_json(doc.at("config"));
  PolygonalMeasure mu(s);
  for (const auto& e : doc.at("densities")) {
    const auto& t = e.at("triangle");
    if (!t.is_array() || t.size() != 3 || t[0] != 0)
      throw ParseError("densities must be given on basis triangles [0, i, j]");
    int i = t[1].get<int>(), j = t[2].get<int>();
    if (!(1 <= i && i < j && j <= s.last())) throw ParseError("basis triangle index out of range");
    CNum d(parse_scalar_in(e.at("re"), s.field()), parse_scalar_in(e.value("im", Json("0")), s.field()));
    mu.add_density(i, j, d);
  }
  return mu;
}

inline std::string sign_string(const SignVector& sv) {
  std::string out;
  for (auto x : sv) out.push_back(x > 0 ? '+' : '-');
  return out;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline Json result_json(const std::string& command, const std::string& input_hash, Json payload) {
  return Json{{"format", kResultFormat},
              {"version", kVersion},
              {"command", command},
              {"input_hash", input_hash},
              {"payload", std::move(payload)}};
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// Writes through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline Json chamber_json(const Chamber& ch, std::size_t index, const Scalar* density) {
  Json pieces = Json::array();
  for (const auto& p : ch.pieces) {
    Json poly = Json::array();
    for (const auto& v : p.polygon) poly.push_back(point_json(v));
    pieces.push_back(poly);
  }
  Json signs = Json::array();
  for (const auto& sv : ch.cell_sign_vectors) signs.push_back(sign_string(sv));
  Json j{{"index", index},
         {"sign_vector", sign_string(ch.sign_vector)},
         {"cell_sign_vectors", signs},
         {"representative", point_json(ch.representative)},
         {"area", ch.area.to_string()}};
  if (density) j["density"] = density->to_string();
  j["pieces"] = pieces;
  j["approx"] = Json{{"area", ch.area.to_double()}};
  return j;
}

/// Chambers filled by density sign, labelled with their exact density.
inline std::string chambers_svg(const Arrangement& arr, const std::vector<Scalar>* densities) {
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& z : arr.points.points()) {
    minx = std::min(minx, z.re.to_double());
    maxx = std::max(maxx, z.re.to_double());
    miny = std::min(miny, z.im.to_double());
    maxy = std::max(maxy, z.im.to_double());
  }
  const double size = 480, margin = 30;
  const double scale = (size - 2 * margin) / std::max({maxx - minx, maxy - miny, 1e-12});
  auto px = [&](const Scalar& x) { return margin + (x.to_double() - minx) * scale; };
  auto py = [&](const Scalar& y) { return size - margin - (y.to_double() - miny) * scale; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  for (std::size_t c = 0; c < arr.chambers.size(); ++c) {
    const char* fill = "#f4f4f4";
    if (densities) {
      int sg = (*densities)[c].sign();
      fill = sg > 0 ? "#f6c1b5" : (sg < 0 ? "#b5cdf6" : "#f4f4f4");
    }
    for (const auto& p : arr.chambers[c].pieces) {
      os << "  <polygon fill=\"" << fill << "\" stroke=\"none\" points=\"";
      for (const auto& v : p.polygon) os << px(v.re) << ',' << py(v.im) << ' ';
      os << "\"/>\n";
    }
  }
  for (const auto& line : arr.lines) {
    auto [lo, hi] = std::minmax_element(line.points.begin(), line.points.end(), [&](int u, int v) {
      return lex_less(arr.points[u], arr.points[v]);
    });
    int a = *lo, b = *hi;
    os << "  <line x1=\"" << px(arr.points[a].re) << "\" y1=\"" << py(arr.points[a].im) << "\" x2=\""
       << px(arr.points[b].re) << "\" y2=\"" << py(arr.points[b].im) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  for (int k = 0; k < arr.points.size(); ++k)
    os << "  <circle cx=\"" << px(arr.points[k].re) << "\" cy=\"" << py(arr.points[k].im)
       << "\" r=\"3\"/>\n  <text x=\"" << px(arr.points[k].re) + 5 << "\" y=\"" << py(arr.points[k].im) - 5
       << "\" font-size=\"12\">z" << k << "</text>\n";
  if (densities)
    for (std::size_t c = 0; c < arr.chambers.size(); ++c) {
      const auto& r = arr.chambers[c].representative;
      os << "  <text x=\"" << px(r.re) << "\" y=\"" << py(r.im)
         << "\" font-size=\"10\" text-anchor=\"middle\">" << (*densities)[c].to_string() << "</text>\n";
    }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polymeas::io
