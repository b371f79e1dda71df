#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "proxitop/errors.hpp"
#include "proxitop/io.hpp"
#include "proxitop/report.hpp"
#include "proxitop/svg.hpp"

namespace {

using namespace proxitop;
using report::Doc;

// Usage problems found after CLI11 parsing; always names the flag.
struct UsageError {
  std::string message;
};

struct TrialsSpec {
  std::uint64_t trials = 1000;
  bool exhaustive = false;
};

TrialsSpec parse_trials(const std::string& s) {
  if (s == "exhaustive") return {0, true};
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos == s.size() && v > 0) return {static_cast<std::uint64_t>(v), false};
  } catch (...) {
  }
  throw UsageError{"--trials expects a positive count or \"exhaustive\""};
}

bool parse_on_off(const std::string& s, const char* flag) {
  if (s == "on") return true;
  if (s == "off") return false;
  throw UsageError{std::string(flag) + " expects \"on\" or \"off\""};
}

Subset parse_id_list(const std::string& s, const char* flag) {
  std::vector<int> ids;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t pos = 0;
      ids.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw UsageError{std::string(flag) + " expects a comma-separated id list"};
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Subset(std::move(ids));
}

RelationKind parse_relation(const std::string& mode) {
  return mode == "spatial" ? RelationKind::spatial : RelationKind::descriptive;
}

ContractMode parse_contract(const std::string& mode) {
  if (mode == "spatial") return ContractMode::spatial;
  if (mode == "descriptive") return ContractMode::descriptive;
  return ContractMode::degenerate;
}

std::shared_ptr<const Space> override_eps(const std::shared_ptr<const Space>& sp,
                                          std::optional<double> eps,
                                          std::optional<double> eps_desc) {
  if (!eps.has_value() && !eps_desc.has_value()) return sp;
  std::vector<Point> pts = sp->points();
  const double e = eps.value_or(sp->eps_spatial());
  if (!sp->has_probes()) return std::make_shared<Space>(std::move(pts), e);
  return std::make_shared<Space>(std::move(pts), e, sp->probes().rows,
                                 eps_desc.value_or(sp->eps_desc()));
}

SpaceMap override_eps(const SpaceMap& m, std::optional<double> eps,
                      std::optional<double> eps_desc) {
  if (!eps.has_value() && !eps_desc.has_value()) return m;
  return SpaceMap(override_eps(m.source_ptr(), eps, eps_desc),
                  override_eps(m.target_ptr(), eps, eps_desc), m.assignment());
}

void emit(const Doc& doc, const std::string& format) {
  std::cout << (format == "structured" ? report::render_structured(doc)
                                        : report::render_text(doc));
}

// Shared flag storage; each subcommand registers only the flags it uses.
struct Opts {
  std::string file, file2;
  std::string trials = "1000";
  std::uint64_t seed = 0;
  double eps = 0.0, eps_desc = 0.0, eps_time = 0.0;
  bool has_eps = false, has_eps_desc = false, has_eps_time = false;
  int resolution = 0;
  bool has_resolution = false;
  std::string svg_path, out_path;
  std::string format = "text";
  std::string mode = "spatial";
  std::string singletons = "on";
  std::string set_a, set_b;
};

int run_axioms(const Opts& o) {
  auto sp = override_eps(io::load_space(o.file),
                         o.has_eps ? std::optional<double>(o.eps) : std::nullopt,
                         o.has_eps_desc ? std::optional<double>(o.eps_desc) : std::nullopt);
  const TrialsSpec ts = parse_trials(o.trials);
  AxiomCheckConfig cfg;
  cfg.trials = ts.exhaustive ? cfg.trials : ts.trials;
  cfg.force_exhaustive = ts.exhaustive;
  cfg.seed = o.seed;

  const AxiomReport cech = check_cech_axioms(*sp, cfg);
  Doc doc;
  doc["command"] = "axioms";
  doc["input"] = o.file;
  doc["cech"] = report::axiom_doc(cech);
  bool ok = cech.all_ok();
  if (sp->has_probes()) {
    const AxiomReport desc = check_descriptive_axioms(*sp, cfg);
    doc["descriptive"] = report::axiom_doc(desc);
    ok = ok && desc.all_ok();
  } else {
    doc["descriptive"] = nullptr;
  }
  doc["verdict"] = ok;
  emit(doc, o.format);
  return ok ? 0 : 1;
}

int run_continuity(const Opts& o) {
  const SpaceMap m = override_eps(
      io::load_map(o.file), o.has_eps ? std::optional<double>(o.eps) : std::nullopt,
      o.has_eps_desc ? std::optional<double>(o.eps_desc) : std::nullopt);
  const TrialsSpec ts = parse_trials(o.trials);
  ContinuityCheckConfig cfg;
  cfg.trials = ts.exhaustive ? cfg.trials : ts.trials;
  cfg.force_exhaustive = ts.exhaustive;
  cfg.seed = o.seed;

  Doc doc;
  doc["command"] = "continuity";
  doc["input"] = o.file;
  doc["mode"] = o.mode;
  bool ok = true;
  if (o.mode == "degenerate") {
    const DegenerateConstantReport r = is_degenerate_descriptive_constant(m);
    Doc rd;
    rd["degenerate"] = r.degenerate;
    rd["ordinary_constant"] = r.ordinary_constant;
    doc["witness"] = std::move(rd);
    ok = r.degenerate;
  } else {
    const ContinuityWitness w = o.mode == "descriptive" ? is_dpc(m, cfg)
                                                        : is_proximally_continuous(m, cfg);
    doc["witness"] = report::continuity_doc(w);
    ok = w.verdict;
  }
  doc["verdict"] = ok;
  emit(doc, o.format);
  return ok ? 0 : 1;
}

int run_glue(const Opts& o) {
  if (o.mode == "degenerate") throw UsageError{"--mode for glue is spatial or descriptive"};
  const SpaceMap f = override_eps(
      io::load_map(o.file), o.has_eps ? std::optional<double>(o.eps) : std::nullopt,
      o.has_eps_desc ? std::optional<double>(o.eps_desc) : std::nullopt);
  const SpaceMap g = override_eps(
      io::load_map(o.file2), o.has_eps ? std::optional<double>(o.eps) : std::nullopt,
      o.has_eps_desc ? std::optional<double>(o.eps_desc) : std::nullopt);
  const Subset a = parse_id_list(o.set_a, "--set-a");
  const Subset b = parse_id_list(o.set_b, "--set-b");
  const SpaceMap glued = glue(f, g, a, b, parse_relation(o.mode));
  const std::string doc = io::map_document(glued);
  if (o.out_path.empty()) {
    std::cout << doc;
  } else {
    io::save_text(o.out_path, doc);
  }
  return 0;
}

int run_homotopy(const Opts& o) {
  io::HomotopyFile hf = io::load_homotopy(o.file);
  const TrialsSpec ts = parse_trials(o.trials);
  HomotopyCheckConfig cfg;
  cfg.trials = ts.exhaustive ? cfg.trials : ts.trials;
  cfg.force_exhaustive = ts.exhaustive;
  cfg.seed = o.seed;
  if (o.has_eps_time) cfg.eps_time = o.eps_time;

  const RelationKind rel = parse_relation(o.mode);
  const SpaceMap& f = hf.homotopy.frames().front();
  const SpaceMap& g = hf.homotopy.frames().back();
  const HomotopyCheckReport r = verify_homotopy(hf.homotopy, f, g, rel, cfg, hf.rel);

  Doc doc;
  doc["command"] = "homotopy";
  doc["input"] = o.file;
  doc["report"] = report::homotopy_doc(r);
  doc["verdict"] = r.verdict;
  emit(doc, o.format);
  return r.verdict ? 0 : 1;
}

Doc cycle_entry(const PathCycle& c, bool& ok) {
  CycleValidationReport vr = validate_cycle(c, CycleKind::simple);
  std::string kind = "simple";
  if (!vr.valid) {
    bool only_mult = true;
    for (const CycleViolation& v : vr.violations)
      only_mult = only_mult && v.kind == "multiplicity_forbidden";
    if (only_mult) {
      vr = validate_cycle(c, CycleKind::multi);
      kind = "multi";
    }
  }
  ok = ok && vr.valid;
  Doc d;
  d["kind"] = kind;
  d["validation"] = report::cycle_validation_doc(vr);
  const Graph g = to_graph(c);
  d["betti"] = report::betti_doc(betti_graph(g));
  if (vr.valid) d["presentation"] = report::presentation_doc(free_group_presentation(g));
  return d;
}

int run_cycle(const Opts& o) {
  Doc doc;
  doc["command"] = "cycle";
  doc["input"] = o.file;
  bool ok = true;
  if (io::is_system_file(o.file)) {
    const CycleSystem sys = io::load_system(o.file);
    Doc entries = Doc::array();
    for (const PathCycle& c : sys.cycles) entries.push_back(cycle_entry(c, ok));
    doc["cycles"] = std::move(entries);
    doc["betti"] = report::betti_doc(betti_graph(to_graph(sys)));
  } else {
    const PathCycle c = io::load_cycle(o.file);
    doc["cycle"] = cycle_entry(c, ok);
  }
  doc["verdict"] = ok;
  emit(doc, o.format);
  return ok ? 0 : 1;
}

int run_nerve(const Opts& o) {
  const Cover cover = io::load_cover(o.file);
  const RelationKind rel = parse_relation(o.mode == "degenerate" ? "descriptive" : o.mode);
  GoodCoverConfig gcfg;
  gcfg.mode = parse_contract(o.mode);
  gcfg.include_singletons = parse_on_off(o.singletons, "--include-singletons");

  const SimplicialComplex k = nerve(cover, rel);
  const NerveComparisonReport cmp = nerve_theorem_check(cover, rel, gcfg);

  Doc doc;
  doc["command"] = "nerve";
  doc["input"] = o.file;
  doc["mode"] = o.mode;
  doc["complex"] = report::complex_doc(k);
  doc["homology"] = report::homology_doc(betti_complex(k));
  doc["comparison"] = report::nerve_comparison_doc(cmp);
  const bool ok = cmp.goodness.good && cmp.equal;
  doc["verdict"] = ok;
  emit(doc, o.format);
  if (!o.svg_path.empty()) io::save_text(o.svg_path, svg::nerve_svg(cover, k));
  return ok ? 0 : 1;
}

int run_jordan(const Opts& o) {
  JordanConfig cfg;
  if (o.has_resolution) cfg.resolution = o.resolution;

  Doc doc;
  doc["command"] = "jordan";
  doc["input"] = o.file;
  JordanReport r;
  PlanarCurve drawn;
  PlanarCurve labeled;
  if (io::is_system_file(o.file)) {
    const CycleSystem sys = io::load_system(o.file);
    r = jordan_check(sys, cfg);
    drawn = realize_curve(sys);
    labeled = drawn;
  } else {
    const PathCycle c = io::load_cycle(o.file);
    CycleKind kind = CycleKind::simple;
    const CycleValidationReport vr = validate_cycle(c, CycleKind::simple);
    if (!vr.valid) {
      bool only_mult = true;
      for (const CycleViolation& v : vr.violations)
        only_mult = only_mult && v.kind == "multiplicity_forbidden";
      if (only_mult) kind = CycleKind::multi;
    }
    r = jordan_check(c, kind, cfg);
    drawn = realize_curve(c);
    labeled = kind == CycleKind::multi ? realize_curve(outer_chain(c)) : drawn;
  }
  doc["report"] = report::jordan_doc(r);
  doc["verdict"] = r.all_passed();
  emit(doc, o.format);
  if (!o.svg_path.empty()) {
    const RegionLabeling lab = region_count(
        labeled, o.has_resolution ? std::optional<int>(o.resolution) : std::nullopt);
    io::save_text(o.svg_path, svg::jordan_svg(drawn, lab));
  }
  return r.all_passed() ? 0 : 1;
}

int run_persist(const Opts& o) {
  const io::FrameSequence seq = io::load_frames(o.file);
  const double eps = o.has_eps ? o.eps : 0.0;
  const TrackReport r = track(seq.frames, eps);
  Doc doc;
  doc["command"] = "persist";
  doc["input"] = o.file;
  doc["eps"] = eps;
  doc["fps"] = seq.fps;
  doc["report"] = report::track_doc(r, seq.fps);
  doc["verdict"] = true;
  emit(doc, o.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite proximity space toolkit"};
  app.require_subcommand(1);

  Opts o;
  const auto mode_check = CLI::IsMember({"spatial", "descriptive", "degenerate"});
  const auto format_check = CLI::IsMember({"text", "structured"});

  CLI::App* ax = app.add_subcommand("axioms", "check the proximity axioms of a space");
  ax->add_option("space", o.file, "space file")->required();
  ax->add_option("--trials", o.trials, "sample count or \"exhaustive\"");
  ax->add_option("--seed", o.seed, "sampling seed");
  ax->add_option("--eps", o.eps, "override spatial tolerance");
  ax->add_option("--eps-desc", o.eps_desc, "override description tolerance");
  ax->add_option("--format", o.format, "output format")->check(format_check);

  CLI::App* ct = app.add_subcommand("continuity", "check nearness preservation of a map");
  ct->add_option("map", o.file, "map file")->required();
  ct->add_option("--mode", o.mode, "relation to check under")->check(mode_check);
  ct->add_option("--trials", o.trials, "sample count or \"exhaustive\"");
  ct->add_option("--seed", o.seed, "sampling seed");
  ct->add_option("--eps", o.eps, "override spatial tolerance");
  ct->add_option("--eps-desc", o.eps_desc, "override description tolerance");
  ct->add_option("--format", o.format, "output format")->check(format_check);

  CLI::App* gl = app.add_subcommand("glue", "combine two maps agreeing on an overlap");
  gl->add_option("first", o.file, "first map file")->required();
  gl->add_option("second", o.file2, "second map file")->required();
  gl->add_option("--set-a", o.set_a, "ids of the first domain")->required();
  gl->add_option("--set-b", o.set_b, "ids of the second domain")->required();
  gl->add_option("--mode", o.mode, "closure relation")->check(mode_check);
  gl->add_option("--eps", o.eps, "override spatial tolerance");
  gl->add_option("--eps-desc", o.eps_desc, "override description tolerance");
  gl->add_option("--out", o.out_path, "write the glued map here instead of stdout");

  CLI::App* ho = app.add_subcommand("homotopy", "verify a discrete homotopy");
  ho->add_option("homotopy", o.file, "homotopy file")->required();
  ho->add_option("--mode", o.mode, "relation to verify under")->check(mode_check);
  ho->add_option("--eps-time", o.eps_time, "time closeness tolerance");
  ho->add_option("--trials", o.trials, "sample count or \"exhaustive\"");
  ho->add_option("--seed", o.seed, "sampling seed");
  ho->add_option("--format", o.format, "output format")->check(format_check);

  CLI::App* cy = app.add_subcommand("cycle", "validate a cycle or system and report Betti numbers");
  cy->add_option("cycle", o.file, "cycle or system file")->required();
  cy->add_option("--format", o.format, "output format")->check(format_check);

  CLI::App* ne = app.add_subcommand("nerve", "nerve, goodness, and Betti comparison of a cover");
  ne->add_option("cover", o.file, "cover file")->required();
  ne->add_option("--mode", o.mode, "intersection and contraction mode")->check(mode_check);
  ne->add_option("--include-singletons", o.singletons, "whether single elements must contract");
  ne->add_option("--format", o.format, "output format")->check(format_check);
  ne->add_option("--svg", o.svg_path, "write the nerve drawing here");

  CLI::App* jo = app.add_subcommand("jordan", "region-splitting checks for a curve");
  jo->add_option("curve", o.file, "cycle or system file")->required();
  jo->add_option("--resolution", o.resolution, "cells per unit length");
  jo->add_option("--svg", o.svg_path, "write curve and regions here");
  jo->add_option("--format", o.format, "output format")->check(format_check);

  CLI::App* pe = app.add_subcommand("persist", "track shapes across a frame sequence");
  pe->add_option("frames", o.file, "frame-sequence file")->required();
  pe->add_option("--eps", o.eps, "descriptor matching tolerance");
  pe->add_option("--format", o.format, "output format")->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const std::string& name) {
    const CLI::Option* op = sub->get_option_no_throw(name);
    return op != nullptr && op->count() > 0;
  };
  o.has_eps = given("--eps");
  o.has_eps_desc = given("--eps-desc");
  o.has_eps_time = given("--eps-time");
  o.has_resolution = given("--resolution");

  try {
    if (ax->parsed()) return run_axioms(o);
    if (ct->parsed()) return run_continuity(o);
    if (gl->parsed()) return run_glue(o);
    if (ho->parsed()) return run_homotopy(o);
    if (cy->parsed()) return run_cycle(o);
    if (ne->parsed()) return run_nerve(o);
    if (jo->parsed()) return run_jordan(o);
    if (pe->parsed()) return run_persist(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const ToolkitError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
