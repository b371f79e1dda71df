#include "proxitop/report.hpp"

#include <sstream>

namespace proxitop::report {

namespace {

Doc ids_doc(const std::vector<int>& ids) { return Doc(ids); }

Doc subset_doc(const Subset& s) { return Doc(s.ids()); }

Doc vec2_doc(const Vec2& v) { return Doc::array({v.x, v.y}); }

}  // namespace

Doc axiom_doc(const AxiomReport& r) {
  Doc d;
  d["relation"] = r.relation;
  d["exhaustive"] = r.exhaustive;
  d["seed"] = r.seed;
  d["trials"] = r.trials;
  Doc checks = Doc::array();
  for (const AxiomCheck& c : r.checks) {
    Doc cd;
    cd["axiom"] = c.axiom;
    cd["checked"] = c.checked;
    cd["violations"] = c.violations;
    checks.push_back(std::move(cd));
  }
  d["checks"] = std::move(checks);
  Doc ces = Doc::array();
  for (const AxiomViolation& v : r.counterexamples) {
    Doc vd;
    vd["axiom"] = v.axiom;
    vd["a"] = ids_doc(v.a);
    vd["b"] = ids_doc(v.b);
    if (!v.c.empty()) vd["c"] = ids_doc(v.c);
    ces.push_back(std::move(vd));
  }
  d["counterexamples"] = std::move(ces);
  d["all_ok"] = r.all_ok();
  return d;
}

Doc continuity_doc(const ContinuityWitness& w) {
  Doc d;
  d["relation"] = w.relation;
  d["verdict"] = w.verdict;
  d["exhaustive"] = w.exhaustive;
  d["seed"] = w.seed;
  d["trials"] = w.trials;
  d["pairs_checked"] = w.pairs_checked;
  if (w.counterexample.has_value()) {
    Doc cd;
    cd["a"] = subset_doc(w.counterexample->first);
    cd["b"] = subset_doc(w.counterexample->second);
    d["counterexample"] = std::move(cd);
  } else {
    d["counterexample"] = nullptr;
  }
  return d;
}

Doc homotopy_doc(const HomotopyCheckReport& r) {
  Doc d;
  d["relation"] = r.relation;
  d["verdict"] = r.verdict;
  d["eps_time"] = r.eps_time;
  d["exhaustive"] = r.exhaustive;
  d["seed"] = r.seed;
  d["trials"] = r.trials;
  d["pairs_checked"] = r.pairs_checked;
  if (r.counterexample.has_value()) {
    Doc cd;
    cd["a"] = subset_doc(r.counterexample->a);
    cd["b"] = subset_doc(r.counterexample->b);
    cd["a_times"] = Doc(r.counterexample->a_times);
    cd["b_times"] = Doc(r.counterexample->b_times);
    d["counterexample"] = std::move(cd);
  } else {
    d["counterexample"] = nullptr;
  }
  return d;
}

Doc cycle_validation_doc(const CycleValidationReport& r) {
  Doc d;
  d["valid"] = r.valid;
  Doc vs = Doc::array();
  for (const CycleViolation& v : r.violations) {
    Doc vd;
    vd["kind"] = v.kind;
    vd["a"] = v.a;
    vd["b"] = v.b;
    vd["detail"] = v.detail;
    vs.push_back(std::move(vd));
  }
  d["violations"] = std::move(vs);
  return d;
}

Doc betti_doc(const BettiPair& b) {
  Doc d;
  d["beta0"] = b.beta0;
  d["beta1"] = b.beta1;
  return d;
}

Doc presentation_doc(const PresentationSummary& p) {
  Doc d;
  d["generator_count"] = p.generator_count;
  d["generators"] = Doc(p.generators);
  return d;
}

Doc complex_doc(const SimplicialComplex& k) {
  Doc d;
  d["vertex_count"] = k.vertex_count;
  d["simplex_count"] = static_cast<int>(k.simplices.size());
  d["max_dim"] = k.max_dim();
  d["simplices"] = Doc(k.simplices);
  return d;
}

Doc homology_doc(const HomologyReport& h) {
  Doc d;
  d["beta0"] = h.beta0;
  d["beta1"] = h.beta1;
  d["beta2"] = h.beta2;
  d["simplex_counts"] = Doc(h.simplex_counts);
  d["boundary_ranks"] = Doc(h.boundary_ranks);
  return d;
}

Doc good_cover_doc(const GoodCoverReport& g) {
  Doc d;
  d["good"] = g.good;
  d["mode"] = g.mode;
  d["include_singletons"] = g.include_singletons;
  d["max_subfamily"] = g.max_subfamily;
  d["subfamilies_checked"] = g.subfamilies_checked;
  d["failure_count"] = g.failure_count;
  d["failures"] = Doc(g.failures);
  return d;
}

Doc nerve_comparison_doc(const NerveComparisonReport& n) {
  Doc d;
  Doc nb;
  nb["beta0"] = n.nerve_beta0;
  nb["beta1"] = n.nerve_beta1;
  d["nerve"] = std::move(nb);
  Doc ub;
  ub["beta0"] = n.union_beta0;
  ub["beta1"] = n.union_beta1;
  d["union"] = std::move(ub);
  d["equal"] = n.equal;
  d["goodness"] = good_cover_doc(n.goodness);
  d["note"] = n.note;
  return d;
}

Doc jordan_doc(const JordanReport& j) {
  Doc d;
  d["kind"] = j.kind;
  Doc cs = Doc::array();
  for (const JordanClause& c : j.clauses) {
    Doc cd;
    cd["name"] = c.name;
    cd["applicable"] = c.applicable;
    cd["passed"] = c.passed;
    cd["detail"] = c.detail;
    cs.push_back(std::move(cd));
  }
  d["clauses"] = std::move(cs);
  if (!j.constituents.empty()) {
    Doc ks = Doc::array();
    for (const ConstituentResult& c : j.constituents) {
      Doc kd;
      kd["simple_closed"] = c.simple_closed;
      kd["region_count"] = c.region_count;
      kd["common_boundary"] = c.common_boundary;
      kd["resolution"] = c.resolution;
      kd["violation"] = c.violation;
      ks.push_back(std::move(kd));
    }
    d["constituents"] = std::move(ks);
  }
  if (j.kind == "system" || j.kind == "cover") d["union_region_count"] = j.union_region_count;
  d["all_passed"] = j.all_passed();
  return d;
}

Doc agreement_doc(const AgreementReport& a) {
  Doc d;
  d["samples"] = a.samples;
  d["used"] = a.used;
  d["disagreements"] = a.disagreements;
  d["first_disagreement"] =
      a.first_disagreement.has_value() ? vec2_doc(*a.first_disagreement) : Doc(nullptr);
  return d;
}

Doc descriptor_doc(const ShapeDescriptor& de) {
  Doc d;
  d["betti"] = de.betti;
  d["aux"] = de.aux.has_value() ? Doc(*de.aux) : Doc(nullptr);
  return d;
}

Doc match_doc(const MatchReport& m) {
  Doc d;
  Doc ps = Doc::array();
  for (const MatchedPair& p : m.pairs) {
    Doc pd;
    pd["a"] = p.index_a;
    pd["b"] = p.index_b;
    pd["distance"] = p.distance;
    ps.push_back(std::move(pd));
  }
  d["pairs"] = std::move(ps);
  d["ambiguous"] = m.ambiguous;
  return d;
}

Doc track_doc(const TrackReport& t, double fps) {
  Doc d;
  Doc ts = Doc::array();
  for (const PersistenceTrack& tr : t.tracks) {
    Doc td;
    td["track_id"] = tr.track_id;
    td["descriptor"] = descriptor_doc(tr.representative);
    Doc ivs = Doc::array();
    Doc durs = Doc::array();
    for (const auto& [first, last] : tr.intervals) {
      ivs.push_back(Doc::array({first, last}));
      durs.push_back(static_cast<double>(last - first) / fps);
    }
    td["intervals"] = std::move(ivs);
    td["durations_seconds"] = std::move(durs);
    ts.push_back(std::move(td));
  }
  d["tracks"] = std::move(ts);
  d["ambiguous_matches"] = t.ambiguous_matches;
  return d;
}

std::string render_structured(const Doc& doc) { return doc.dump(2) + "\n"; }

namespace {

bool scalar_array(const Doc& a) {
  for (const Doc& v : a)
    if (v.is_structured()) return false;
  return true;
}

std::string scalar_text(const Doc& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string inline_array(const Doc& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += a[i].is_array() ? inline_array(a[i]) : scalar_text(a[i]);
  }
  return out + "]";
}

// Arrays of arrays of scalars still read fine on one line; anything holding
// objects gets one dashed item per entry.
bool inlineable(const Doc& a) {
  for (const Doc& v : a) {
    if (v.is_object()) return false;
    if (v.is_array() && !scalar_array(v)) return false;
  }
  return true;
}

void render_node(const Doc& v, const std::string& indent, std::ostringstream& os);

void render_object(const Doc& obj, const std::string& indent, std::ostringstream& os) {
  for (const auto& item : obj.items()) {
    const Doc& v = item.value();
    if (v.is_object() && !v.empty()) {
      os << indent << item.key() << ":\n";
      render_object(v, indent + "  ", os);
    } else if (v.is_array() && !v.empty() && !inlineable(v)) {
      os << indent << item.key() << ":\n";
      for (const Doc& e : v) {
        os << indent << "  -\n";
        render_node(e, indent + "    ", os);
      }
    } else if (v.is_array()) {
      os << indent << item.key() << ": " << inline_array(v) << "\n";
    } else if (v.is_object()) {
      os << indent << item.key() << ": {}\n";
    } else {
      os << indent << item.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

void render_node(const Doc& v, const std::string& indent, std::ostringstream& os) {
  if (v.is_object()) {
    render_object(v, indent, os);
  } else if (v.is_array() && inlineable(v)) {
    os << indent << inline_array(v) << "\n";
  } else if (v.is_array()) {
    for (const Doc& e : v) {
      os << indent << "-\n";
      render_node(e, indent + "  ", os);
    }
  } else {
    os << indent << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string render_text(const Doc& doc) {
  std::ostringstream os;
  render_node(doc, "", os);
  return os.str();
}

}  // namespace proxitop::report
