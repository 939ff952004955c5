// polymeas: command-line front end for the polygonal measure library.
//
// Exit codes: 0 success, 1 a verification failed, 2 bad input.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polymeas/cone.hpp"
#include "polymeas/equipot.hpp"
#include "polymeas/io.hpp"
#include "polymeas/random.hpp"

using namespace polymeas;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Source {
  std::string path;
  int random_points = 0;
  std::uint64_t seed = 1;
  std::string output;

  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("config", path, "config document");
    auto* r = cmd->add_option("--random", random_points, "use N random non-degenerate rational points");
    cmd->add_option("--seed", seed, "seed for --random");
    cmd->add_option("-o,--output", output, "write the result here instead of stdout");
    p->excludes(r);
  }

  bool given() const { return random_points > 0 || !path.empty(); }

  PointSet load() const {
    if (random_points > 0) {
      if (random_points < 3) throw ParseError("--random needs at least 3 points");
      return ConfigSampler(seed).nondegenerate(random_points);
    }
    if (path.empty()) throw ParseError("no config given (path or --random N)");
    return io::config_from_json(io::read_json_file(path));
  }

  std::string echo_suffix() const {
    if (random_points > 0) return " --random " + std::to_string(random_points) + " --seed " + std::to_string(seed);
    return "";
  }
};

// Accepts a measure document or a result document holding payload.measures.
PolygonalMeasure load_measure(const std::string& path, std::size_t index) {
  Json doc = io::read_json_file(path);
  if (doc.is_object() && doc.value("format", "") == io::kResultFormat) {
    const Json& payload = doc.at("payload");
    if (payload.contains("measure")) return io::measure_from_json(payload["measure"]);
    if (!payload.contains("measures") || index >= payload["measures"].size())
      throw ParseError("result document has no measure at index " + std::to_string(index));
    return io::measure_from_json(payload["measures"][index]);
  }
  return io::measure_from_json(doc);
}

void emit(const Source& src, const std::string& command, const std::string& hashed, Json payload) {
  std::string text = io::result_json(command, io::fnv1a_hex(hashed), std::move(payload)).dump(2) + "\n";
  if (src.output.empty())
    std::cout << text;
  else
    io::write_file_atomic(src.output, text);
}

Json cnum_json(const CNum& z) { return Json{{"re", z.re.to_string()}, {"im", z.im.to_string()}}; }

Json moment_table(const PolygonalMeasure& mu, unsigned order) {
  auto m = measure_moments(mu, order);
  auto psi = psi_coefficients(mu, order);
  Json rows = Json::array();
  for (unsigned j = 0; j <= order; ++j)
    rows.push_back(Json{{"j", j}, {"moment", cnum_json(m[j])}, {"psi", cnum_json(psi[j])}});
  return rows;
}

PolygonalMeasure kernel_measure(const PointSet& s, std::size_t k) {
  auto null = null_measures(s, Kind::real);
  if (k >= null.measures.size())
    throw ParseError("real null space has dimension " + std::to_string(null.measures.size()) + ", no measure " +
                     std::to_string(k));
  return primitive_densities(null.measures[k]);
}

Json certificate_json(const Arrangement& arr, const UnitDensityCertificate& cert) {
  auto idx = [](const std::vector<std::size_t>& v) { return Json(v); };
  auto pp = extract_polygon_pair(arr, cert);
  return Json{{"measure", io::measure_json(cert.measure)},
              {"moment_check_order", cert.moment_check_order},
              {"plus_chambers", idx(cert.plus_chambers)},
              {"minus_chambers", idx(cert.minus_chambers)},
              {"zero_chambers", idx(cert.zero_chambers)},
              {"plus_area", cert.plus_area.to_string()},
              {"minus_area", cert.minus_area.to_string()},
              {"polygon_pair", Json{{"first", idx(pp.first)}, {"second", idx(pp.second)}}}};
}

Json report_json(const EquipotentialReport& rep, unsigned order) {
  Json dens = Json::array();
  for (const auto& d : rep.densities) dens.push_back(d.to_string());
  return Json{{"passed", rep.passed()},
              {"first_failure", rep.first_failure},
              {"order", order},
              {"nonzero", rep.nonzero},
              {"moments_vanish", rep.moments_vanish},
              {"unit_densities", rep.unit_densities},
              {"areas_balanced", rep.areas_balanced},
              {"plus_area", rep.plus_area.to_string()},
              {"minus_area", rep.minus_area.to_string()},
              {"chamber_densities", dens}};
}

Json chambers_json(const Arrangement& arr, const std::vector<Scalar>* dens) {
  Json out = Json::array();
  for (std::size_t c = 0; c < arr.chambers.size(); ++c)
    out.push_back(io::chamber_json(arr.chambers[c], c, dens ? &(*dens)[c] : nullptr));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_nullspace(const Source& src, bool complex) {
  PointSet s = src.load();
  const Kind kind = complex ? Kind::complex : Kind::real;
  auto null = null_measures(s, kind);
  const int n = s.last();
  const unsigned order = default_moment_order(s);

  Json basis = Json::array();
  for (const auto& v : null.basis.vectors) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(complex ? cnum_json(x) : Json(x.re.to_string()));
    basis.push_back(row);
  }
  Json columns = Json::array();
  for (auto [i, j] : PolygonalMeasure::basis(n)) columns.push_back(TriangleRef(0, i, j).to_string());
  Json measures = Json::array();
  bool vanish = true;
  for (const auto& mu : null.measures) {
    measures.push_back(io::measure_json(mu));
    vanish = vanish && all_zero(measure_moments(mu, order));
  }
  // C(n-1,2) complex, C(n-2,2) real, for S = {z_0..z_n} in general position
  const long expected = binomial(complex ? n - 1 : n - 2, 2).get_si();
  const bool dim_ok = null.degenerate || static_cast<long>(null.basis.dimension()) == expected;

  Json payload{{"kind", to_string(kind)},
               {"points", s.size()},
               {"nondegenerate", !null.degenerate},
               {"dimension", null.basis.dimension()},
               {"expected_dimension", null.degenerate ? Json(nullptr) : Json(expected)},
               {"columns", columns},
               {"basis", basis},
               {"dropped_mass", null.dropped_mass},
               {"moment_audit", Json{{"order", order}, {"vanish", vanish}}},
               {"measures", measures}};
  emit(src, std::string("nullspace ") + (complex ? "--complex" : "--real") + src.echo_suffix(),
       io::config_json(s).dump(), std::move(payload));
  return vanish && dim_ok ? kOk : kFailed;
}

int cmd_chambers(const Source& src, const std::string& measure_path, std::optional<std::size_t> kernel_index,
                 const std::string& svg_path) {
  std::optional<PolygonalMeasure> mu;
  std::optional<PointSet> s;
  if (src.given()) s = src.load();
  if (!measure_path.empty()) {
    mu = load_measure(measure_path, 0);
    if (s && !(mu->base() == *s)) throw ParseError("measure and config use different point sets");
    s = mu->base();
  }
  if (!s) throw ParseError("no config given");
  if (kernel_index) mu = kernel_measure(*s, *kernel_index);

  auto arr = build_arrangement(*s);
  Scalar area_sum;
  for (const auto& ch : arr.chambers) area_sum += ch.area;
  const Scalar hull_area = polygon_area(*s, arr.hull);
  bool ok = area_sum == hull_area;

  Json payload{{"points", s->size()},
               {"lines", arr.lines.size()},
               {"shear", arr.shear.to_string()},
               {"line_cells", arr.cells.size()},
               {"chamber_count", arr.chambers.size()},
               {"hull_area", hull_area.to_string()},
               {"area_partition", area_sum == hull_area}};
  std::optional<std::vector<Scalar>> dens;
  if (mu) {
    if (!mu->is_real()) throw ParseError("chamber densities need a real measure");
    dens = chamber_densities(arr, *mu);
    Scalar weighted;
    for (std::size_t c = 0; c < dens->size(); ++c) weighted += (*dens)[c] * arr.chambers[c].area;
    const bool mass_ok = weighted == measure_moments(*mu, 0)[0].re;
    ok = ok && mass_ok;
    payload["measure"] = io::measure_json(*mu);
    payload["mass_audit"] = mass_ok;
  }
  payload["chambers"] = chambers_json(arr, dens ? &*dens : nullptr);
  if (!svg_path.empty()) io::write_file_atomic(svg_path, io::chambers_svg(arr, dens ? &*dens : nullptr));

  std::string echo = "chambers";
  std::string hashed = io::config_json(*s).dump();
  if (mu) hashed = io::measure_json(*mu).dump();
  if (kernel_index) echo += " --kernel " + std::to_string(*kernel_index);
  if (!measure_path.empty()) echo += " --measure";
  emit(src, echo + src.echo_suffix(), hashed, std::move(payload));
  return ok ? kOk : kFailed;
}

int cmd_incidence(const Source& src) {
  PointSet s = src.load();
  auto arr = build_arrangement(s);
  auto inc = incidence(arr);
  auto alt = incidence(arr, true);
  Json rows = Json::array(), labels = Json::array(), cols = Json::array();
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    std::string bits;
    for (int x : inc.entries[r]) bits.push_back(x ? '1' : '0');
    rows.push_back(bits);
    labels.push_back(inc.rows[r].to_string());
  }
  for (const auto& ch : arr.chambers) cols.push_back(io::sign_string(ch.sign_vector));
  const bool consistent = inc.entries == alt.entries;
  Json payload{{"points", s.size()},
               {"chamber_count", arr.chambers.size()},
               {"row_triangles", labels},
               {"column_sign_vectors", cols},
               {"matrix", rows},
               {"alternate_points_agree", consistent}};
  emit(src, "incidence" + src.echo_suffix(), io::config_json(s).dump(), std::move(payload));
  return consistent ? kOk : kFailed;
}

std::optional<TriangleRef> parse_triangle(const std::string& text) {
  if (text.empty()) return std::nullopt;
  int i, j, k;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> i >> c1 >> j >> c2 >> k) || c1 != ',' || c2 != ',' || !in.eof())
    throw ParseError("triangle must be given as i,j,k");
  if (i == j || j == k || i == k) throw ParseError("triangle indices must be distinct");
  return TriangleRef::sorted(i, j, k);
}

int cmd_moments(const Source& src, const std::string& measure_path, std::optional<std::size_t> kernel_index,
                const std::string& triangle_text, std::optional<unsigned> order_opt) {
  std::optional<PointSet> s;
  std::optional<PolygonalMeasure> mu;
  if (src.given()) s = src.load();
  if (!measure_path.empty()) {
    mu = load_measure(measure_path, 0);
    if (s && !(mu->base() == *s)) throw ParseError("measure and config use different point sets");
    s = mu->base();
  }
  if (!s) throw ParseError("no config given");
  auto tri = parse_triangle(triangle_text);
  if (tri) {
    for (int v : {tri->i, tri->j, tri->k})
      if (v >= s->size()) throw ParseError("triangle index out of range");
    mu = triangle_measure(*s, *tri);
  }
  if (kernel_index) mu = kernel_measure(*s, *kernel_index);
  if (!mu) throw ParseError("moments needs --measure, --kernel or --triangle");
  const unsigned order = order_opt.value_or(default_moment_order(*s));

  Json payload{{"order", order}, {"measure", io::measure_json(*mu)}, {"table", moment_table(*mu, order)}};
  bool ok = true;
  if (tri) {
    // cross-check the closed form against direct integration
    auto closed = triangle_moments(*s, *tri, order);
    for (unsigned j = 0; j <= order; ++j) ok = ok && closed[j] == triangle_moment_oracle(*s, *tri, j);
    payload["oracle_agrees"] = ok;
  }
  payload["all_vanish"] = all_zero(measure_moments(*mu, order));
  std::string echo = "moments --order " + std::to_string(order);
  if (tri) echo += " --triangle " + std::to_string(tri->i) + "," + std::to_string(tri->j) + "," + std::to_string(tri->k);
  if (kernel_index) echo += " --kernel " + std::to_string(*kernel_index);
  emit(src, echo + src.echo_suffix(), io::measure_json(*mu).dump(), std::move(payload));
  return ok ? kOk : kFailed;
}

int cmd_search_unit(const Source& src, int bound) {
  PointSet s = src.load();
  if (bound < 1) throw ParseError("--bound must be positive");
  auto null = null_measures(s, Kind::real);
  auto arr = build_arrangement(s);
  auto found = unit_density_search(s, bound);
  Json certs = Json::array();
  for (const auto& c : found) certs.push_back(certificate_json(arr, c));
  Json payload{{"points", s.size()},
               {"nondegenerate", s.nondegenerate()},
               {"real_dimension", null.measures.size()},
               {"bound", bound},
               {"exhaustive", null.measures.size() <= 1},
               {"certificates", certs}};
  if (s.size() == 5 && s.nondegenerate()) payload["five_point_decision"] = unit_density_decide_1d(s).has_value();
  emit(src, "search-unit --bound " + std::to_string(bound) + src.echo_suffix(), io::config_json(s).dump(),
       std::move(payload));
  return kOk;
}

int cmd_verify(const Source& src, const std::string& measure_path, std::size_t index, unsigned order) {
  if (measure_path.empty()) throw ParseError("verify needs --measure");
  auto mu = load_measure(measure_path, index);
  if (src.given() && !(src.load() == mu.base())) throw ParseError("measure and config use different point sets");
  if (!mu.is_real()) throw ParseError("verify needs a real measure");
  auto arr = build_arrangement(mu.base());
  auto rep = verify_equipotential(arr, mu, order);
  Json payload{{"measure", io::measure_json(mu)}, {"report", report_json(rep, order)}};
  emit(src, "verify --index " + std::to_string(index) + " --order " + std::to_string(order),
       io::measure_json(mu).dump(), std::move(payload));
  return rep.passed() ? kOk : kFailed;
}

int cmd_hexagram(const Source& src, const std::string& out_config, const std::string& out_measure, unsigned order) {
  auto ex = hexagram_example();
  auto arr = build_arrangement(ex.points);
  auto rep = verify_equipotential(arr, ex.measure, order);
  auto cert = certify_unit_density(arr, ex.measure, order);
  const Scalar mass = measure_moments(ex.measure, 0)[0].re;

  Json payload{{"config", io::config_json(ex.points)},
               {"measure", io::measure_json(ex.measure)},
               {"total_mass", mass.to_string()},
               {"chamber_count", arr.chambers.size()},
               {"report", report_json(rep, order)}};
  bool pair_ok = false;
  if (cert) {
    payload["certificate"] = certificate_json(arr, *cert);
    auto diff = polygon_pair_difference(arr, extract_polygon_pair(arr, *cert));
    if (diff) {
      auto pair_rep = verify_equipotential(arr, *diff, order);
      pair_ok = pair_rep.passed();
      payload["polygon_pair_report"] = report_json(pair_rep, order);
    }
  }
  payload["alternative_readings"] = Json::array(
      {Json{{"reading", "unit inner hexagon"}, {"total_mass", ex.unit_inner_hexagon_mass.to_string()},
            {"mass_vanishes", ex.unit_inner_hexagon_mass.is_zero()}},
       Json{{"reading", "six rotated triangles minus two"}, {"total_mass", ex.six_minus_two_mass.to_string()},
            {"mass_vanishes", ex.six_minus_two_mass.is_zero()}}});
  payload["chambers"] = chambers_json(arr, &rep.densities);

  if (!out_config.empty()) io::write_file_atomic(out_config, io::config_json(ex.points).dump(2) + "\n");
  if (!out_measure.empty()) io::write_file_atomic(out_measure, io::measure_json(ex.measure).dump(2) + "\n");
  emit(src, "hexagram --order " + std::to_string(order), io::measure_json(ex.measure).dump(), std::move(payload));
  return rep.passed() && pair_ok ? kOk : kFailed;
}

int cmd_extreme_rays(const Source& src) {
  PointSet s = src.load();
  auto arr = build_arrangement(s);
  std::vector<TriangleRef> gens;
  for (const auto& t : all_triangles(s))
    if (!area(s, t).is_zero()) gens.push_back(t);

  bool agree = true;
  Json verdicts = Json::array();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<TriangleRef> others;
    for (std::size_t h = 0; h < gens.size(); ++h)
      if (h != g) others.push_back(gens[h]);
    const bool criterion = is_extreme_ray(s, gens[g]);
    const bool oracle = !cone_membership(arr, triangle_chamber_vector(arr, gens[g]), others).has_value();
    agree = agree && criterion == oracle;
    verdicts.push_back(Json{{"triangle", gens[g].to_string()}, {"extreme", criterion}, {"oracle_extreme", oracle}});
  }

  Json flip_list = Json::array();
  bool flips_ok = true;
  for (const auto& f : flips(s)) {
    std::vector<Scalar> lhs(arr.chambers.size()), rhs(arr.chambers.size());
    for (const auto& t : f.pair) {
      auto v = triangle_chamber_vector(arr, t);
      for (std::size_t c = 0; c < v.size(); ++c) lhs[c] += v[c];
    }
    for (const auto& t : f.flipped) {
      auto v = triangle_chamber_vector(arr, t);
      for (std::size_t c = 0; c < v.size(); ++c) rhs[c] += v[c];
    }
    flips_ok = flips_ok && lhs == rhs;
    flip_list.push_back(Json{{"pair", {f.pair[0].to_string(), f.pair[1].to_string()}},
                             {"flipped", {f.flipped[0].to_string(), f.flipped[1].to_string()}},
                             {"identity_holds", lhs == rhs}});
  }
  const bool convex = static_cast<int>(arr.hull.size()) == s.size();
  Json payload{{"points", s.size()},
               {"convex_position", convex},
               {"criterion_matches_oracle", agree},
               {"triangles", verdicts},
               {"flips", flip_list}};
  emit(src, "extreme-rays" + src.echo_suffix(), io::config_json(s).dump(), std::move(payload));
  return agree && flips_ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact polygonal measures with vanishing harmonic moments"};
  app.require_subcommand(1);

  Source src;
  bool real = false, complex = false;
  std::string measure_path, svg_path, triangle, out_config, out_measure;
  std::optional<std::size_t> kernel_index;
  std::size_t index = 0;
  std::optional<unsigned> order;
  unsigned verify_order = 20;
  int bound = 3;

  auto* ns = app.add_subcommand("nullspace", "kernel of the moment matrix");
  src.attach(ns);
  auto* f_real = ns->add_flag("--real", real, "real null measures (default)");
  ns->add_flag("--complex", complex, "complex null measures")->excludes(f_real);

  auto* ch = app.add_subcommand("chambers", "chamber decomposition and densities");
  src.attach(ch);
  auto* m1 = ch->add_option("--measure", measure_path, "measure or result document");
  ch->add_option("--kernel", kernel_index, "use the k-th real null measure")->excludes(m1);
  ch->add_option("--svg", svg_path, "also write an SVG figure");

  auto* inc = app.add_subcommand("incidence", "basis triangle / chamber incidence matrix");
  src.attach(inc);

  auto* mo = app.add_subcommand("moments", "harmonic moment table");
  src.attach(mo);
  auto* m2 = mo->add_option("--measure", measure_path, "measure or result document");
  auto* k2 = mo->add_option("--kernel", kernel_index, "use the k-th real null measure")->excludes(m2);
  mo->add_option("--triangle", triangle, "standard measure of triangle i,j,k")->excludes(m2)->excludes(k2);
  mo->add_option("--order", order, "highest moment index (default 2n+5)");

  auto* su = app.add_subcommand("search-unit", "search for unit-density null measures");
  src.attach(su);
  su->add_option("--bound", bound, "coefficient bound for the integer search")->capture_default_str();

  auto* ve = app.add_subcommand("verify", "check that a measure comes from two equipotential polygons");
  src.attach(ve);
  ve->add_option("--measure", measure_path, "measure or result document")->required();
  ve->add_option("--index", index, "which measure of a result document")->capture_default_str();
  ve->add_option("--order", verify_order, "moments checked up to this index")->capture_default_str();

  auto* hx = app.add_subcommand("hexagram", "six-point equipotential example over Q(r3)");
  hx->add_option("-o,--output", src.output, "write the result here instead of stdout");
  hx->add_option("--out-config", out_config, "write the configuration document");
  hx->add_option("--out-measure", out_measure, "write the measure document");
  hx->add_option("--order", verify_order, "moments checked up to this index")->capture_default_str();

  auto* er = app.add_subcommand("extreme-rays", "extreme rays of the positive triangle cone");
  src.attach(er);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*ns) return cmd_nullspace(src, complex);
    if (*ch) return cmd_chambers(src, measure_path, kernel_index, svg_path);
    if (*inc) return cmd_incidence(src);
    if (*mo) return cmd_moments(src, measure_path, kernel_index, triangle, order);
    if (*su) return cmd_search_unit(src, bound);
    if (*ve) return cmd_verify(src, measure_path, index, verify_order);
    if (*hx) return cmd_hexagram(src, out_config, out_measure, verify_order);
    if (*er) return cmd_extreme_rays(src);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
