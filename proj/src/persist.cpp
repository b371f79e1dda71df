#include "proxitop/persist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/errors.hpp"
#include "proxitop/geometry.hpp"

namespace proxitop {

ShapeDescriptor frame_descriptor(const CycleSystem& shape, std::optional<int> aux_vertex) {
  if (shape.cycles.empty()) throw InvalidShape("shape has no cycles");
  const Graph g = to_graph(shape);
  ShapeDescriptor d;
  d.betti = betti_graph(g).beta1;
  if (aux_vertex.has_value()) {
    const int v = *aux_vertex;
    if (v < 0 || v >= g.vertex_count())
      throw UnknownVertex("aux vertex " + std::to_string(v) + " is not in the welded graph");
    const Vec2 p = g.positions[static_cast<std::size_t>(v)];
    d.aux = std::vector<double>{norm(p), std::atan2(p.y, p.x)};
  }
  return d;
}

double descriptor_distance(const ShapeDescriptor& a, const ShapeDescriptor& b) {
  double sq = static_cast<double>(a.betti - b.betti) * static_cast<double>(a.betti - b.betti);
  if (a.aux.has_value() && b.aux.has_value() && a.aux->size() == b.aux->size()) {
    for (std::size_t k = 0; k < a.aux->size(); ++k) {
      const double dk = (*a.aux)[k] - (*b.aux)[k];
      sq += dk * dk;
    }
  }
  return std::sqrt(sq);
}

bool descriptors_match(const ShapeDescriptor& a, const ShapeDescriptor& b, double eps) {
  if (std::abs(a.betti - b.betti) > eps + kTol) return false;
  if (a.aux.has_value() && b.aux.has_value()) {
    if (a.aux->size() != b.aux->size()) return false;
    double sq = 0.0;
    for (std::size_t k = 0; k < a.aux->size(); ++k) {
      const double dk = (*a.aux)[k] - (*b.aux)[k];
      sq += dk * dk;
    }
    if (std::sqrt(sq) > eps + kTol) return false;
  }
  return true;
}

namespace {

// Greedy one-to-one assignment between two descriptor lists: eligible pairs
// sorted by (distance, left index, right index), first-come wins.
MatchReport match_descriptors(const std::vector<ShapeDescriptor>& da,
                              const std::vector<ShapeDescriptor>& db, double eps) {
  struct Cand {
    double d;
    int i, j;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < static_cast<int>(da.size()); ++i)
    for (int j = 0; j < static_cast<int>(db.size()); ++j)
      if (descriptors_match(da[static_cast<std::size_t>(i)], db[static_cast<std::size_t>(j)], eps))
        cands.push_back({descriptor_distance(da[static_cast<std::size_t>(i)],
                                             db[static_cast<std::size_t>(j)]),
                         i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });

  MatchReport report;
  std::vector<bool> ua(da.size(), false), ub(db.size(), false);
  for (const Cand& c : cands) {
    if (ua[static_cast<std::size_t>(c.i)] || ub[static_cast<std::size_t>(c.j)]) continue;
    ua[static_cast<std::size_t>(c.i)] = true;
    ub[static_cast<std::size_t>(c.j)] = true;
    // Ambiguous when another eligible pair sharing a shape sits at the same
    // distance: the descriptor alone cannot justify this particular choice.
    bool amb = false;
    for (const Cand& o : cands) {
      if (&o == &c || (o.i != c.i && o.j != c.j)) continue;
      if (std::abs(o.d - c.d) <= kTol) {
        amb = true;
        break;
      }
    }
    report.pairs.push_back({c.i, c.j, c.d});
    if (amb) ++report.ambiguous;
  }
  return report;
}

std::vector<ShapeDescriptor> descriptors_of(const std::vector<CycleSystem>& shapes,
                                            std::optional<int> aux_vertex) {
  std::vector<ShapeDescriptor> out(shapes.size());
  for (std::size_t k = 0; k < shapes.size(); ++k)
    out[k] = frame_descriptor(shapes[k], aux_vertex);
  return out;
}

}  // namespace

MatchReport match_shapes(const FrameRecord& f1, const FrameRecord& f2, double eps,
                         std::optional<int> aux_vertex) {
  return match_descriptors(descriptors_of(f1.shapes, aux_vertex),
                           descriptors_of(f2.shapes, aux_vertex), eps);
}

TrackReport track(const std::vector<FrameRecord>& frames, double eps,
                  std::optional<int> aux_vertex, bool parallel) {
  for (std::size_t k = 1; k < frames.size(); ++k) {
    if (frames[k].frame_index <= frames[k - 1].frame_index)
      throw InvalidShape("frame indices must be strictly increasing");
    if (frames[k].timestamp < frames[k - 1].timestamp - kTol)
      throw InvalidShape("frame timestamps must be nondecreasing");
  }

  // Descriptors for every shape up front; frames are independent.
  const int fcount = static_cast<int>(frames.size());
  std::vector<std::vector<ShapeDescriptor>> desc(frames.size());
#ifdef _OPENMP
  int nthreads = omp_get_max_threads();
#else
  int nthreads = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) \
    if (parallel && nthreads > 1)
  for (int k = 0; k < fcount; ++k)
    desc[static_cast<std::size_t>(k)] = descriptors_of(frames[static_cast<std::size_t>(k)].shapes,
                                                       aux_vertex);

  struct State {
    PersistenceTrack tr;
    bool open = false;
    std::pair<int, int> cur{0, 0};
  };
  std::vector<State> tracks;
  // Track id per shape of the previous frame, or -1.
  std::vector<int> prev_track;

  TrackReport report;
  for (int k = 0; k < fcount; ++k) {
    const FrameRecord& fr = frames[static_cast<std::size_t>(k)];
    const auto& dk = desc[static_cast<std::size_t>(k)];
    std::vector<int> cur_track(dk.size(), -1);

    if (k > 0) {
      // Phase 1: chain against the previous frame's actual shapes.
      const MatchReport m = match_descriptors(desc[static_cast<std::size_t>(k - 1)], dk, eps);
      report.ambiguous_matches += m.ambiguous;
      for (const MatchedPair& p : m.pairs) {
        const int tid = prev_track[static_cast<std::size_t>(p.index_a)];
        cur_track[static_cast<std::size_t>(p.index_b)] = tid;
        tracks[static_cast<std::size_t>(tid)].cur.second = fr.frame_index;
      }
    }

    // Anything open but not extended closes now and becomes dormant.
    for (State& st : tracks) {
      const bool extended =
          std::find(cur_track.begin(), cur_track.end(), st.tr.track_id) != cur_track.end();
      if (st.open && !extended) {
        st.tr.intervals.push_back(st.cur);
        st.open = false;
      }
    }

    // Phase 2: unmatched shapes may reopen a dormant track of the same
    // descriptor class; smallest distance wins, then lower shape index,
    // then lower track id.
    struct Adopt {
      double d;
      int shape, tid;
    };
    std::vector<Adopt> adopts;
    for (int s = 0; s < static_cast<int>(dk.size()); ++s) {
      if (cur_track[static_cast<std::size_t>(s)] >= 0) continue;
      for (const State& st : tracks) {
        if (st.open) continue;
        if (descriptors_match(st.tr.representative, dk[static_cast<std::size_t>(s)], eps))
          adopts.push_back({descriptor_distance(st.tr.representative,
                                                dk[static_cast<std::size_t>(s)]),
                            s, st.tr.track_id});
      }
    }
    std::sort(adopts.begin(), adopts.end(), [](const Adopt& x, const Adopt& y) {
      if (x.d != y.d) return x.d < y.d;
      if (x.shape != y.shape) return x.shape < y.shape;
      return x.tid < y.tid;
    });
    for (const Adopt& a : adopts) {
      State& st = tracks[static_cast<std::size_t>(a.tid)];
      if (st.open || cur_track[static_cast<std::size_t>(a.shape)] >= 0) continue;
      st.open = true;
      st.cur = {fr.frame_index, fr.frame_index};
      cur_track[static_cast<std::size_t>(a.shape)] = a.tid;
    }

    // Phase 3: whatever is left starts a fresh track.
    for (int s = 0; s < static_cast<int>(dk.size()); ++s) {
      if (cur_track[static_cast<std::size_t>(s)] >= 0) continue;
      tracks.emplace_back();
      State& st = tracks.back();
      st.tr.track_id = static_cast<int>(tracks.size()) - 1;
      st.tr.representative = dk[static_cast<std::size_t>(s)];
      st.open = true;
      st.cur = {fr.frame_index, fr.frame_index};
      cur_track[static_cast<std::size_t>(s)] = st.tr.track_id;
    }

    prev_track = std::move(cur_track);
  }

  for (State& st : tracks) {
    if (st.open) st.tr.intervals.push_back(st.cur);
    report.tracks.push_back(std::move(st.tr));
  }
  return report;
}

}  // namespace proxitop
