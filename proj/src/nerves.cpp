#include "proxitop/nerves.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/descriptive.hpp"
#include "proxitop/errors.hpp"
#include "proxitop/gf2.hpp"

namespace proxitop {

namespace {

using Words = std::vector<std::uint64_t>;

int word_count(int bits) { return (bits + 63) / 64; }

void set_bit(Words& w, int i) { w[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64); }

}  // namespace

Cover::Cover(std::shared_ptr<const Space> universe, std::vector<Subset> elements)
    : space_(std::move(universe)), elements_(std::move(elements)) {
  if (!space_) throw InvalidSubset("cover needs a universe");
  if (elements_.empty()) throw InvalidSubset("cover needs at least one element");
  for (const Subset& e : elements_) {
    if (e.empty()) throw InvalidSubset("cover elements must be nonempty");
    space_->validate(e);
  }
}

Cover::Cover(Graph universe, std::vector<Subset> elements,
             std::optional<VertexFeatures> features)
    : graph_(std::move(universe)), features_(std::move(features)),
      elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidSubset("cover needs at least one element");
  for (const Subset& e : elements_) {
    if (e.empty()) throw InvalidSubset("cover elements must be nonempty");
    for (int id : e)
      if (id < 0 || id >= graph_->vertex_count())
        throw InvalidSubset("cover element references vertex " + std::to_string(id) +
                            " outside the universe");
  }
  if (features_) {
    if (static_cast<int>(features_->rows.size()) != graph_->vertex_count())
      throw InvalidSpace("feature row count does not match the vertex count");
    for (const auto& row : features_->rows)
      if (static_cast<int>(row.size()) != features_->dim)
        throw InvalidSpace("feature rows disagree on dimension");
  }
}

const Space& Cover::space() const {
  if (!space_) throw InvalidSubset("cover universe is a graph, not a space");
  return *space_;
}

std::shared_ptr<const Space> Cover::space_ptr() const {
  if (!space_) throw InvalidSubset("cover universe is a graph, not a space");
  return space_;
}

const Graph& Cover::graph() const {
  if (!graph_) throw InvalidSubset("cover universe is a space, not a graph");
  return *graph_;
}

int Cover::universe_size() const {
  return space_ ? space_->size() : graph_->vertex_count();
}

std::vector<int> Cover::universe_ids() const {
  std::vector<int> ids;
  if (space_) {
    for (const Point& p : space_->points()) ids.push_back(p.id);
  } else {
    for (int v = 0; v < graph_->vertex_count(); ++v) ids.push_back(v);
  }
  return ids;
}

bool Cover::descriptive_ready() const {
  return space_ ? space_->has_probes() : features_.has_value();
}

double Cover::eps_desc() const {
  if (space_) return space_->eps_desc();
  return features_ ? features_->eps_desc : 0.0;
}

const std::vector<double>& Cover::feature_of(int id) const {
  if (space_)
    return space_->probes().rows[static_cast<std::size_t>(space_->index_of(id))];
  if (!features_) throw MissingProbe("graph universe carries no vertex features");
  return features_->rows[static_cast<std::size_t>(id)];
}

namespace {

// Bit position of a universe member id.
int bit_of(const Cover& c, int id) {
  return c.over_graph() ? id : c.space().index_of(id);
}

std::vector<Words> element_masks(const Cover& c) {
  const int n = c.universe_size();
  std::vector<Words> masks;
  for (const Subset& e : c.elements()) {
    Words w(static_cast<std::size_t>(word_count(n)), 0);
    for (int id : e) set_bit(w, bit_of(c, id));
    masks.push_back(std::move(w));
  }
  return masks;
}

// For each element, the universe members whose description matches some
// member of that element within eps_desc.
std::vector<Words> match_masks(const Cover& c) {
  if (!c.descriptive_ready())
    throw MissingProbe("descriptive cover operations need features on the universe");
  const std::vector<int> ids = c.universe_ids();
  const int n = c.universe_size();
  const double eps = c.eps_desc();
  std::vector<Words> masks;
  for (const Subset& e : c.elements()) {
    Words w(static_cast<std::size_t>(word_count(n)), 0);
    for (int i = 0; i < n; ++i) {
      const auto& row = c.feature_of(ids[static_cast<std::size_t>(i)]);
      for (int id : e) {
        if (feature_distance(row, c.feature_of(id)) <= eps + kTol) {
          set_bit(w, i);
          break;
        }
      }
    }
    masks.push_back(std::move(w));
  }
  return masks;
}

Words combo_intersection(const std::vector<Words>& elem, const std::vector<Words>& match,
                         const std::vector<int>& combo, bool descriptive) {
  Words acc = elem[static_cast<std::size_t>(combo.front())];
  if (!descriptive) {
    for (std::size_t i = 1; i < combo.size(); ++i)
      for (std::size_t w = 0; w < acc.size(); ++w)
        acc[w] &= elem[static_cast<std::size_t>(combo[i])][w];
    return acc;
  }
  Words uni = acc;
  Words all = match[static_cast<std::size_t>(combo.front())];
  for (std::size_t i = 1; i < combo.size(); ++i) {
    const auto e = static_cast<std::size_t>(combo[i]);
    for (std::size_t w = 0; w < acc.size(); ++w) {
      uni[w] |= elem[e][w];
      all[w] &= match[e][w];
    }
  }
  for (std::size_t w = 0; w < uni.size(); ++w) uni[w] &= all[w];
  return uni;
}

bool combo_nonvoid(const std::vector<Words>& elem, const std::vector<Words>& match,
                   const std::vector<int>& combo, bool descriptive) {
  const Words acc = combo_intersection(elem, match, combo, descriptive);
  for (std::uint64_t w : acc)
    if (w) return true;
  return false;
}

struct SizeLex {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Visits all size-k index combinations with a fixed first index.
template <class Fn>
void for_each_combo_from(int first, int n, int k, Fn&& fn) {
  std::vector<int> combo(static_cast<std::size_t>(k));
  combo[0] = first;
  if (k == 1) {
    fn(combo);
    return;
  }
  for (int i = 1; i < k; ++i) combo[static_cast<std::size_t>(i)] = first + i;
  if (combo.back() >= n) return;
  while (true) {
    fn(combo);
    int j = k - 1;
    while (j >= 1 && combo[static_cast<std::size_t>(j)] == n - k + j) --j;
    if (j < 1) break;
    ++combo[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < k; ++i)
      combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
  }
}

}  // namespace

bool is_cover(const Cover& c) {
  const int n = c.universe_size();
  Words all(static_cast<std::size_t>(word_count(n)), 0);
  for (const Words& w : element_masks(c))
    for (std::size_t i = 0; i < all.size(); ++i) all[i] |= w[i];
  for (int i = 0; i < n; ++i)
    if (!((all[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1)) return false;
  return true;
}

SimplicialComplex nerve(const Cover& c, RelationKind mode, int max_dim) {
  if (max_dim < 0) throw InvalidSubset("max_dim must be nonnegative");
  if (!is_cover(c)) throw NotACover("the elements do not cover the universe");

  const bool descriptive = mode == RelationKind::descriptive;
  const std::vector<Words> elem = element_masks(c);
  const std::vector<Words> match = descriptive ? match_masks(c) : std::vector<Words>{};

  const int n_elem = static_cast<int>(c.elements().size());
  std::set<std::vector<int>, SizeLex> simplices;
  const int cap = std::min(max_dim + 1, n_elem);
  for (int k = 1; k <= cap; ++k) {
    for (int first = 0; first + k <= n_elem; ++first) {
      for_each_combo_from(first, n_elem, k, [&](const std::vector<int>& combo) {
        if (!combo_nonvoid(elem, match, combo, descriptive)) return;
        simplices.insert(combo);
        if (descriptive && combo.size() > 1) {
          // Witnesses are not hereditary descriptively; close downward.
          const int sz = static_cast<int>(combo.size());
          for (int sub = 1; sub < (1 << sz) - 1; ++sub) {
            std::vector<int> face;
            for (int b = 0; b < sz; ++b)
              if (sub & (1 << b)) face.push_back(combo[static_cast<std::size_t>(b)]);
            simplices.insert(std::move(face));
          }
        }
      });
    }
  }

  SimplicialComplex out;
  out.vertex_count = n_elem;
  out.simplices.assign(simplices.begin(), simplices.end());
  return out;
}

HomologyReport betti_complex(const SimplicialComplex& k) {
  HomologyReport report;
  if (k.simplices.empty()) return report;

  const int top = k.max_dim();
  std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(top) + 1);
  for (const std::vector<int>& s : k.simplices) {
    auto& level = index[s.size() - 1];
    const int next = static_cast<int>(level.size());
    level.emplace(s, next);
  }

  report.simplex_counts.resize(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d)
    report.simplex_counts[static_cast<std::size_t>(d)] =
        static_cast<int>(index[static_cast<std::size_t>(d)].size());

  std::vector<int> ranks(static_cast<std::size_t>(top) + 2, 0);  // ranks[d] = rank of boundary d
  for (int d = 1; d <= top; ++d) {
    const auto& rows = index[static_cast<std::size_t>(d - 1)];
    const auto& cols = index[static_cast<std::size_t>(d)];
    Gf2Matrix boundary(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (const auto& [simplex, col] : cols) {
      for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
        std::vector<int> face;
        for (std::size_t i = 0; i < simplex.size(); ++i)
          if (i != drop) face.push_back(simplex[i]);
        const auto it = rows.find(face);
        if (it == rows.end())
          throw InvalidSubset("complex is not downward closed");
        boundary.set(it->second, col);
      }
    }
    ranks[static_cast<std::size_t>(d)] = boundary.rank();
    report.boundary_ranks.push_back(ranks[static_cast<std::size_t>(d)]);
  }

  auto betti = [&](int d) {
    if (d > top) return 0;
    return report.simplex_counts[static_cast<std::size_t>(d)] -
           ranks[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d + 1)];
  };
  report.beta0 = betti(0);
  report.beta1 = betti(1);
  report.beta2 = betti(2);
  return report;
}

namespace {

// Contractibility of one intersection, as a subset of the cover's universe.
bool intersection_contractible(const Cover& c, const Words& mask, ContractMode mode) {
  std::vector<int> members;
  const std::vector<int> ids = c.universe_ids();
  for (int i = 0; i < c.universe_size(); ++i)
    if ((mask[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1)
      members.push_back(ids[static_cast<std::size_t>(i)]);

  if (!c.over_graph()) return is_contractible(c.space(), Subset(members), mode);

  const Graph& g = c.graph();
  std::vector<int> remap(static_cast<std::size_t>(g.vertex_count()), -1);
  Graph induced;
  for (int v : members) {
    remap[static_cast<std::size_t>(v)] = induced.vertex_count();
    induced.positions.push_back(g.positions[static_cast<std::size_t>(v)]);
  }
  for (const auto& [a, b] : g.edges)
    if (remap[static_cast<std::size_t>(a)] >= 0 && remap[static_cast<std::size_t>(b)] >= 0)
      induced.edges.emplace_back(remap[static_cast<std::size_t>(a)],
                                 remap[static_cast<std::size_t>(b)]);

  std::optional<VertexFeatures> features;
  if (c.graph_features()) {
    VertexFeatures f;
    f.dim = c.graph_features()->dim;
    f.eps_desc = c.graph_features()->eps_desc;
    for (int v : members)
      f.rows.push_back(c.graph_features()->rows[static_cast<std::size_t>(v)]);
    features = std::move(f);
  }
  return is_contractible(induced, mode, features);
}

}  // namespace

GoodCoverReport is_good_cover(const Cover& c, const GoodCoverConfig& cfg) {
  if (!is_cover(c)) throw NotACover("the elements do not cover the universe");
  if (cfg.max_subfamily < 1) throw InvalidSubset("max_subfamily must be positive");

  GoodCoverReport report;
  report.mode = cfg.mode == ContractMode::spatial
                    ? "spatial"
                    : (cfg.mode == ContractMode::descriptive ? "descriptive" : "degenerate");
  report.include_singletons = cfg.include_singletons;
  report.max_subfamily = cfg.max_subfamily;

  const bool descriptive = cfg.mode != ContractMode::spatial;
  const std::vector<Words> elem = element_masks(c);
  const std::vector<Words> match = descriptive ? match_masks(c) : std::vector<Words>{};

  const int n_elem = static_cast<int>(c.elements().size());
  const int cap = std::min(cfg.max_subfamily, n_elem);

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
  std::vector<std::vector<std::vector<int>>> partial(static_cast<std::size_t>(nthreads));
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;

  for (int k = cfg.include_singletons ? 1 : 2; k <= cap; ++k) {
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) \
    reduction(+ : checked, failure_count) if (cfg.parallel && nthreads > 1)
    for (int first = 0; first <= n_elem - k; ++first) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      auto& mine = partial[static_cast<std::size_t>(tid)];
      for_each_combo_from(first, n_elem, k, [&](const std::vector<int>& combo) {
        ++checked;
        const Words mask = combo_intersection(elem, match, combo, descriptive);
        bool empty = true;
        for (std::uint64_t w : mask)
          if (w) empty = false;
        if (empty) return;
        if (!intersection_contractible(c, mask, cfg.mode)) {
          ++failure_count;
          if (static_cast<int>(mine.size()) < cfg.max_failures) mine.push_back(combo);
        }
      });
    }
  }

  report.subfamilies_checked = checked;
  std::vector<std::vector<int>> merged;
  for (auto& part : partial)
    merged.insert(merged.end(), part.begin(), part.end());
  std::sort(merged.begin(), merged.end(), SizeLex{});
  if (static_cast<int>(merged.size()) > cfg.max_failures)
    merged.resize(static_cast<std::size_t>(cfg.max_failures));
  report.failures = std::move(merged);
  report.failure_count = failure_count;
  report.good = failure_count == 0;
  return report;
}

NerveComparisonReport nerve_theorem_check(const Cover& c, RelationKind mode,
                                          const GoodCoverConfig& gcfg) {
  NerveComparisonReport report;

  const HomologyReport nh = betti_complex(nerve(c, mode, 2));
  report.nerve_beta0 = nh.beta0;
  report.nerve_beta1 = nh.beta1;

  BettiPair union_betti;
  if (c.over_graph()) {
    union_betti = betti_graph(c.graph());
  } else {
    const Space& sp = c.space();
    const int n = static_cast<int>(sp.size());
    Graph g;
    g.positions.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.positions[static_cast<std::size_t>(i)] = sp.point_at(i).xy;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (distance(sp.point_at(i).xy, sp.point_at(j).xy) <= sp.eps_spatial() + kTol)
          g.edges.emplace_back(i, j);
    union_betti = betti_graph(g);
  }
  report.union_beta0 = union_betti.beta0;
  report.union_beta1 = union_betti.beta1;

  GoodCoverConfig gc = gcfg;
  if (mode == RelationKind::descriptive && gc.mode == ContractMode::spatial)
    gc.mode = ContractMode::descriptive;
  report.goodness = is_good_cover(c, gc);

  report.equal = report.nerve_beta0 == report.union_beta0 &&
                 report.nerve_beta1 == report.union_beta1;
  report.note = "betti agreement is a necessary condition for matching homotopy type, "
                "not a proof";
  return report;
}

}  // namespace proxitop
