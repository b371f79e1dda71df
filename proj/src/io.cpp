#include "proxitop/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "proxitop/errors.hpp"

namespace proxitop::io {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError(path + ": not valid JSON");
  return j;
}

// Resolves a path mentioned inside `from` against that file's directory.
std::string resolve(const std::string& from, const std::string& ref) {
  fs::path p(ref);
  if (p.is_absolute()) return ref;
  return (fs::path(from).parent_path() / p).lexically_normal().string();
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
}

// Strict schema gate: every present key must be known, every required key
// present. Typos in hand-written files fail loudly instead of silently.
void check_keys(const json& obj, const std::vector<std::string>& required,
                const std::vector<std::string>& optional, const std::string& where) {
  for (const auto& item : obj.items()) {
    const std::string& k = item.key();
    bool known = false;
    for (const auto& r : required) known = known || k == r;
    for (const auto& o : optional) known = known || k == o;
    if (!known) throw ParseError(where + ": unknown key \"" + k + "\"");
  }
  for (const auto& r : required)
    if (!obj.contains(r)) throw ParseError(where + ": missing key \"" + r + "\"");
}

double get_real(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

Vec2 get_xy(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(where + ": expected [x, y]");
  return Vec2{v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> get_real_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ParseError(where + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::shared_ptr<const Space> space_from_json(const json& j, const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"eps_spatial", "points"}, {"eps_desc"}, where);
  const double eps = get_real(j, "eps_spatial", where);
  const json& pts = j.at("points");
  if (!pts.is_array()) throw ParseError(where + ": \"points\" must be an array");

  std::vector<Point> points;
  std::vector<std::vector<double>> rows;
  int with_phi = 0;
  for (const json& pj : pts) {
    const std::string pw = where + ", point " + std::to_string(points.size());
    expect_object(pj, pw);
    check_keys(pj, {"id", "xy"}, {"phi"}, pw);
    points.push_back({get_int(pj, "id", pw), get_xy(pj.at("xy"), pw)});
    if (pj.contains("phi")) {
      rows.push_back(get_real_vector(pj.at("phi"), pw));
      ++with_phi;
    }
  }
  if (with_phi != 0 && with_phi != static_cast<int>(points.size()))
    throw MissingProbe(where + ": either every point carries phi or none does");

  if (with_phi == 0) return std::make_shared<Space>(std::move(points), eps);
  const double eps_desc = j.contains("eps_desc") ? get_real(j, "eps_desc", where) : 0.0;
  return std::make_shared<Space>(std::move(points), eps, std::move(rows), eps_desc);
}

// A space reference is a path string or an inline space object.
std::shared_ptr<const Space> space_ref(const json& v, const std::string& from,
                                       const std::string& where) {
  if (v.is_string()) return load_space(resolve(from, v.get<std::string>()));
  if (v.is_object()) return space_from_json(v, where);
  throw ParseError(where + ": expected a file path or a space object");
}

std::map<int, int> assignment_from_json(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of [src, dst] pairs");
  std::map<int, int> out;
  for (const json& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw ParseError(where + ": expected an array of [src, dst] pairs");
    const int src = e[0].get<int>();
    if (out.count(src)) throw ParseError(where + ": duplicate source id " + std::to_string(src));
    out[src] = e[1].get<int>();
  }
  return out;
}

PathCycle cycle_from_json(const json& j, const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"vertices", "edges"}, {}, where);
  PathCycle cycle;
  const json& vs = j.at("vertices");
  if (!vs.is_array()) throw ParseError(where + ": \"vertices\" must be an array");
  for (const json& vj : vs) {
    const std::string vw = where + ", vertex " + std::to_string(cycle.vertices.size());
    expect_object(vj, vw);
    check_keys(vj, {"id", "xy"}, {}, vw);
    cycle.vertices.push_back({get_int(vj, "id", vw), get_xy(vj.at("xy"), vw)});
  }
  const json& es = j.at("edges");
  if (!es.is_array()) throw ParseError(where + ": \"edges\" must be an array");
  for (const json& ej : es) {
    const std::string ew = where + ", edge " + std::to_string(cycle.edges.size());
    expect_object(ej, ew);
    check_keys(ej, {"from", "to", "polyline"}, {}, ew);
    PathEdge edge;
    edge.from_v = get_int(ej, "from", ew);
    edge.to_v = get_int(ej, "to", ew);
    const json& poly = ej.at("polyline");
    if (!poly.is_array()) throw ParseError(ew + ": \"polyline\" must be an array");
    for (const json& pt : poly) edge.polyline.push_back(get_xy(pt, ew));
    cycle.edges.push_back(std::move(edge));
  }
  return cycle;
}

CycleSystem system_from_json(const json& j, const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"cycles"}, {}, where);
  const json& cs = j.at("cycles");
  if (!cs.is_array()) throw ParseError(where + ": \"cycles\" must be an array");
  CycleSystem sys;
  for (const json& cj : cs)
    sys.cycles.push_back(
        cycle_from_json(cj, where + ", cycle " + std::to_string(sys.cycles.size())));
  return sys;
}

nlohmann::ordered_json space_to_json(const Space& sp) {
  nlohmann::ordered_json j;
  j["eps_spatial"] = sp.eps_spatial();
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const Point& p = sp.points()[i];
    nlohmann::ordered_json pj;
    pj["id"] = p.id;
    pj["xy"] = {p.xy.x, p.xy.y};
    if (sp.has_probes()) pj["phi"] = sp.probes().rows[i];
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  if (sp.has_probes()) j["eps_desc"] = sp.eps_desc();
  return j;
}

}  // namespace

std::shared_ptr<const Space> load_space(const std::string& path) {
  return space_from_json(parse_file(path), path);
}

SpaceMap load_map(const std::string& path) {
  const json j = parse_file(path);
  expect_object(j, path);
  check_keys(j, {"source", "target", "assignment"}, {}, path);
  auto source = space_ref(j.at("source"), path, path + ", source");
  auto target = space_ref(j.at("target"), path, path + ", target");
  return SpaceMap(std::move(source), std::move(target),
                  assignment_from_json(j.at("assignment"), path));
}

HomotopyFile load_homotopy(const std::string& path) {
  const json j = parse_file(path);
  expect_object(j, path);
  check_keys(j, {"source", "target", "time_grid", "frames"}, {"rel"}, path);
  auto source = space_ref(j.at("source"), path, path + ", source");
  auto target = space_ref(j.at("target"), path, path + ", target");
  const std::vector<double> grid = get_real_vector(j.at("time_grid"), path + ", time_grid");

  const json& fs = j.at("frames");
  if (!fs.is_array()) throw ParseError(path + ": \"frames\" must be an array");
  std::vector<SpaceMap> frames;
  for (const json& fj : fs)
    frames.emplace_back(source, target,
                        assignment_from_json(
                            fj, path + ", frame " + std::to_string(frames.size())));

  HomotopyFile out{DiscreteHomotopy(std::move(frames), grid), std::nullopt};
  if (j.contains("rel")) {
    const json& r = j.at("rel");
    if (!r.is_array()) throw ParseError(path + ": \"rel\" must be an array of ids");
    std::vector<int> ids;
    for (const json& e : r) {
      if (!e.is_number_integer()) throw ParseError(path + ": \"rel\" must be an array of ids");
      ids.push_back(e.get<int>());
    }
    out.rel = Subset(std::move(ids));
  }
  return out;
}

PathCycle load_cycle(const std::string& path) {
  return cycle_from_json(parse_file(path), path);
}

CycleSystem load_system(const std::string& path) {
  return system_from_json(parse_file(path), path);
}

Cover load_cover(const std::string& path) {
  const json j = parse_file(path);
  expect_object(j, path);
  check_keys(j, {"universe", "elements"}, {"phi", "eps_desc"}, path);
  if (!j.at("universe").is_string())
    throw ParseError(path + ": \"universe\" must be a file path");
  const std::string upath = resolve(path, j.at("universe").get<std::string>());
  const json uj = parse_file(upath);
  expect_object(uj, upath);

  const json& elems = j.at("elements");
  auto parse_elements = [&](const char* what) {
    if (!elems.is_array()) throw ParseError(path + ": \"elements\" must be " + std::string(what));
    std::vector<Subset> out;
    for (const json& ej : elems) {
      std::vector<int> ids;
      if (!ej.is_array()) throw ParseError(path + ": each element must be an array of ids");
      for (const json& e : ej) {
        if (!e.is_number_integer())
          throw ParseError(path + ": each element must be an array of ids");
        ids.push_back(e.get<int>());
      }
      out.emplace_back(std::move(ids));
    }
    return out;
  };

  if (uj.contains("points")) {
    // Space universe: plain id sets, no graph feature extension.
    if (j.contains("phi") || j.contains("eps_desc"))
      throw ParseError(path + ": phi/eps_desc apply to system universes only");
    return Cover(space_from_json(uj, upath), parse_elements("an array of id sets"));
  }
  if (!uj.contains("cycles"))
    throw ParseError(upath + ": universe must be a space or system file");

  const CycleSystem sys = system_from_json(uj, upath);
  const Graph g = to_graph(sys);
  std::vector<Subset> elements;
  if (elems.is_string() && elems.get<std::string>() == "cycles") {
    // Shorthand: one element per cycle, as welded vertex indices.
    std::map<std::pair<double, double>, int> weld;
    for (int i = 0; i < g.vertex_count(); ++i)
      weld[{g.positions[static_cast<std::size_t>(i)].x,
            g.positions[static_cast<std::size_t>(i)].y}] = i;
    for (const PathCycle& c : sys.cycles) {
      std::vector<int> ids;
      for (const CycleVertex& v : c.vertices) ids.push_back(weld.at({v.xy.x, v.xy.y}));
      elements.emplace_back(std::move(ids));
    }
  } else {
    elements = parse_elements("an array of id sets or \"cycles\"");
  }

  std::optional<VertexFeatures> features;
  if (j.contains("phi")) {
    const json& rowsj = j.at("phi");
    if (!rowsj.is_array()) throw ParseError(path + ": \"phi\" must be an array of rows");
    VertexFeatures f;
    for (const json& row : rowsj)
      f.rows.push_back(get_real_vector(row, path + ", phi row"));
    f.dim = f.rows.empty() ? 0 : static_cast<int>(f.rows.front().size());
    f.eps_desc = j.contains("eps_desc") ? get_real(j, "eps_desc", path) : 0.0;
    features = std::move(f);
  } else if (j.contains("eps_desc")) {
    throw ParseError(path + ": \"eps_desc\" needs \"phi\"");
  }
  return Cover(g, std::move(elements), std::move(features));
}

FrameSequence load_frames(const std::string& path) {
  const json j = parse_file(path);
  expect_object(j, path);
  check_keys(j, {"fps", "frames"}, {}, path);
  FrameSequence seq;
  seq.fps = get_real(j, "fps", path);
  if (!(seq.fps > 0.0)) throw ParseError(path + ": \"fps\" must be positive");

  const json& fs = j.at("frames");
  if (!fs.is_array()) throw ParseError(path + ": \"frames\" must be an array");
  for (const json& fj : fs) {
    const std::string fw = path + ", frame " + std::to_string(seq.frames.size());
    expect_object(fj, fw);
    check_keys(fj, {"index", "t", "shapes"}, {}, fw);
    FrameRecord rec;
    rec.frame_index = get_int(fj, "index", fw);
    rec.timestamp = get_real(fj, "t", fw);
    const json& shapes = fj.at("shapes");
    if (!shapes.is_array()) throw ParseError(fw + ": \"shapes\" must be an array");
    for (const json& sj : shapes) {
      if (sj.is_string()) {
        const std::string spath = resolve(path, sj.get<std::string>());
        const json ref = parse_file(spath);
        expect_object(ref, spath);
        if (ref.contains("cycles")) {
          rec.shapes.push_back(system_from_json(ref, spath));
        } else {
          rec.shapes.push_back(CycleSystem{{cycle_from_json(ref, spath)}});
        }
      } else {
        rec.shapes.push_back(system_from_json(sj, fw + ", shape"));
      }
    }
    seq.frames.push_back(std::move(rec));
  }
  return seq;
}

bool is_system_file(const std::string& path) {
  const json j = parse_file(path);
  return j.is_object() && j.contains("cycles");
}

std::string map_document(const SpaceMap& m) {
  nlohmann::ordered_json j;
  j["source"] = space_to_json(m.source());
  j["target"] = space_to_json(m.target());
  nlohmann::ordered_json asg = nlohmann::ordered_json::array();
  for (const auto& [src, dst] : m.assignment()) asg.push_back({src, dst});
  j["assignment"] = std::move(asg);
  return j.dump(2) + "\n";
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << content;
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace proxitop::io
