#include "proxitop/homotopy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/axioms.hpp"
#include "proxitop/errors.hpp"

namespace proxitop {

DiscreteHomotopy::DiscreteHomotopy(std::vector<SpaceMap> frames,
                                   std::vector<double> time_grid)
    : frames_(std::move(frames)), grid_(std::move(time_grid)) {
  if (frames_.size() < 2) throw FrameMismatch("a homotopy needs at least two frames");
  if (frames_.size() > 64) throw FrameMismatch("at most 64 frames are supported");
  if (grid_.size() != frames_.size())
    throw FrameMismatch("time grid and frame list differ in length");
  if (std::abs(grid_.front()) > kTol || std::abs(grid_.back() - 1.0) > kTol)
    throw FrameMismatch("time grid must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
    if (!(grid_[i] < grid_[i + 1]))
      throw FrameMismatch("time grid must be strictly increasing");
  for (const SpaceMap& fr : frames_)
    if (!space_equal(fr.source(), frames_.front().source()) ||
        !space_equal(fr.target(), frames_.front().target()))
      throw FrameMismatch("all frames must share source and target");
}

double DiscreteHomotopy::default_time_scale() const {
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
    gap = std::max(gap, grid_[i + 1] - grid_[i]);
  return gap;
}

namespace {

// Lexicographically least violating tuple (subset a, subset b, times).
struct HomotopyHit {
  bool found = false;
  std::uint64_t a = 0, b = 0;
  std::uint64_t s_mask = 0, t_mask = 0;  // grid index masks
  std::uint64_t order = ~std::uint64_t{0};

  void offer(std::uint64_t order_key, std::uint64_t na, std::uint64_t nb,
             std::uint64_t ns, std::uint64_t nt) {
    if (found && order_key >= order) return;
    found = true;
    order = order_key;
    a = na;
    b = nb;
    s_mask = ns;
    t_mask = nt;
  }
  void merge(const HomotopyHit& other) {
    if (other.found) offer(other.order, other.a, other.b, other.s_mask, other.t_mask);
  }
};

std::vector<double> mask_times(std::uint64_t mask, const std::vector<double>& grid) {
  std::vector<double> out;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
    out.push_back(grid[static_cast<std::size_t>(std::countr_zero(rest))]);
  return out;
}

Subset mask_subset(std::uint64_t mask, const std::vector<int>& ids) {
  std::vector<int> out;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
    out.push_back(ids[static_cast<std::size_t>(std::countr_zero(rest))]);
  return Subset(out);
}

}  // namespace

HomotopyCheckReport verify_homotopy(const DiscreteHomotopy& h, const SpaceMap& f,
                                    const SpaceMap& g, RelationKind mode,
                                    const HomotopyCheckConfig& cfg,
                                    const std::optional<Subset>& rel) {
  if (!maps_equal_pointwise(h.frames().front(), f))
    throw EndpointMismatch("initial frame differs from the starting map");
  if (!maps_equal_pointwise(h.frames().back(), g))
    throw EndpointMismatch("final frame differs from the ending map");

  const Space& src = h.source();
  const Space& tgt = h.target();
  if (rel) {
    src.validate(*rel);
    for (std::size_t k = 0; k < h.frames().size(); ++k)
      for (int id : *rel)
        if (h.frames()[k].apply(id) != f.apply(id))
          throw RelViolation("frame " + std::to_string(k) + " moves pinned point " +
                             std::to_string(id));
  }

  const int n = src.size();
  if (n > 64 || tgt.size() > 64)
    throw InvalidSpace("homotopy verification is limited to 64-point spaces");

  HomotopyCheckReport report;
  report.relation = mode == RelationKind::spatial ? "spatial" : "descriptive";
  report.eps_time = cfg.eps_time.value_or(h.default_time_scale());
  report.seed = cfg.seed;

  const bool spatial = mode == RelationKind::spatial;
  const std::vector<std::uint64_t> src_nbr = adjacency_masks(src, spatial);
  const std::vector<std::uint64_t> tgt_nbr = adjacency_masks(tgt, spatial);

  std::vector<int> ids;
  for (const Point& p : src.points()) ids.push_back(p.id);

  const int m = static_cast<int>(h.frames().size());
  std::vector<std::vector<std::uint64_t>> pimg(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    pimg[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      pimg[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          std::uint64_t{1}
          << tgt.index_of(h.frames()[static_cast<std::size_t>(k)].apply(
                 ids[static_cast<std::size_t>(i)]));
  }

  auto src_near = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t reach = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
      reach |= src_nbr[static_cast<std::size_t>(std::countr_zero(rest))];
    return (reach & b) != 0;
  };
  auto tgt_near = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t reach = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
      reach |= tgt_nbr[static_cast<std::size_t>(std::countr_zero(rest))];
    return (reach & b) != 0;
  };
  auto image_of = [&](std::uint64_t a, int k) {
    std::uint64_t img = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
      img |= pimg[static_cast<std::size_t>(k)][static_cast<std::size_t>(
          std::countr_zero(rest))];
    return img;
  };

  // Grid index pairs close enough in time that nearness must be preserved.
  std::vector<std::pair<int, int>> time_pairs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(h.time_grid()[static_cast<std::size_t>(i)] -
                   h.time_grid()[static_cast<std::size_t>(j)]) <= report.eps_time + kTol)
        time_pairs.emplace_back(i, j);

  const bool exhaustive = n <= cfg.exhaustive_max_points || cfg.force_exhaustive;
  if (cfg.force_exhaustive && n > 16)
    throw InvalidSpace("exhaustive homotopy scan is limited to 16 points");
  report.exhaustive = exhaustive;

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
  std::vector<HomotopyHit> best(static_cast<std::size_t>(nthreads));
  std::uint64_t pairs_checked = 0;

  if (exhaustive) {
    const std::int64_t total = std::int64_t{1} << n;
    const std::uint64_t tp = time_pairs.size();

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+ : pairs_checked) if (cfg.parallel && nthreads > 1)
    for (std::int64_t a = 1; a < total; ++a) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      const std::uint64_t ua = static_cast<std::uint64_t>(a);
      std::vector<std::uint64_t> img_a(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) img_a[static_cast<std::size_t>(k)] = image_of(ua, k);
      for (std::int64_t b = 1; b < total; ++b) {
        const std::uint64_t ub = static_cast<std::uint64_t>(b);
        if (!src_near(ua, ub)) continue;
        pairs_checked += tp;
        for (std::size_t t = 0; t < time_pairs.size(); ++t) {
          const auto [i, j] = time_pairs[t];
          if (!tgt_near(img_a[static_cast<std::size_t>(i)], image_of(ub, j))) {
            const std::uint64_t order =
                ((ua * static_cast<std::uint64_t>(total) + ub) * tp + t);
            best[static_cast<std::size_t>(tid)].offer(
                order, ua, ub, std::uint64_t{1} << i, std::uint64_t{1} << j);
            break;
          }
        }
      }
    }
  } else {
    const std::int64_t trials = static_cast<std::int64_t>(cfg.trials);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+ : pairs_checked) if (cfg.parallel && nthreads > 1)
    for (std::int64_t i = 0; i < trials; ++i) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      std::uint64_t s = splitmix64(cfg.seed +
                                   0x6a09e667f3bcc909ULL * static_cast<std::uint64_t>(i + 1));
      std::uint64_t a = splitmix64(s) & all;
      std::uint64_t b = splitmix64(s ^ 0x9e3779b97f4a7c15ULL) & all;
      if (a == 0 || b == 0) continue;
      if (!src_near(a, b)) continue;
      pairs_checked += time_pairs.size();
      for (std::size_t t = 0; t < time_pairs.size(); ++t) {
        const auto [ti, tj] = time_pairs[t];
        if (!tgt_near(image_of(a, ti), image_of(b, tj))) {
          best[static_cast<std::size_t>(tid)].offer(
              static_cast<std::uint64_t>(i) * time_pairs.size() + t, a, b,
              std::uint64_t{1} << ti, std::uint64_t{1} << tj);
          break;
        }
      }
    }
    report.trials = cfg.trials;
  }

  HomotopyHit hit;
  for (const HomotopyHit& part : best) hit.merge(part);

  // Whole time sets: images over S and T must stay near once the blocks
  // (A x S) and (B x T) are near in both coordinates.
  if (!hit.found) {
    const std::int64_t trials = static_cast<std::int64_t>(cfg.trials);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t tall = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+ : pairs_checked) if (cfg.parallel && nthreads > 1)
    for (std::int64_t i = 0; i < trials; ++i) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      std::uint64_t s = splitmix64(cfg.seed +
                                   0xbb67ae8584caa73bULL * static_cast<std::uint64_t>(i + 1));
      std::uint64_t a = splitmix64(s) & all;
      std::uint64_t b = splitmix64(s ^ 0x9e3779b97f4a7c15ULL) & all;
      std::uint64_t sm = splitmix64(s ^ 0x3c79ac492ba7b653ULL) & tall;
      std::uint64_t tm = splitmix64(s ^ 0x452821e638d01377ULL) & tall;
      if (a == 0 || b == 0 || sm == 0 || tm == 0) continue;
      if (!src_near(a, b)) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (std::uint64_t rs = sm; rs != 0; rs &= rs - 1)
        for (std::uint64_t rt = tm; rt != 0; rt &= rt - 1)
          gap = std::min(gap, std::abs(h.time_grid()[static_cast<std::size_t>(
                                           std::countr_zero(rs))] -
                                       h.time_grid()[static_cast<std::size_t>(
                                           std::countr_zero(rt))]));
      if (gap > report.eps_time + kTol) continue;
      ++pairs_checked;
      std::uint64_t img_s = 0, img_t = 0;
      for (std::uint64_t rs = sm; rs != 0; rs &= rs - 1)
        img_s |= image_of(a, std::countr_zero(rs));
      for (std::uint64_t rt = tm; rt != 0; rt &= rt - 1)
        img_t |= image_of(b, std::countr_zero(rt));
      if (!tgt_near(img_s, img_t))
        best[static_cast<std::size_t>(tid)].offer(static_cast<std::uint64_t>(i), a, b,
                                                  sm, tm);
    }
    report.trials += cfg.trials;
    for (const HomotopyHit& part : best) hit.merge(part);
  }

  report.pairs_checked = pairs_checked;
  if (hit.found) {
    report.verdict = false;
    report.counterexample = HomotopyCounterexample{
        mask_subset(hit.a, ids), mask_subset(hit.b, ids),
        mask_times(hit.s_mask, h.time_grid()), mask_times(hit.t_mask, h.time_grid())};
  }
  return report;
}

DiscreteHomotopy concat(const DiscreteHomotopy& h, const DiscreteHomotopy& k) {
  if (!maps_equal_pointwise(h.frames().back(), k.frames().front()))
    throw FrameMismatch("the first homotopy must end where the second begins");
  std::vector<SpaceMap> frames = h.frames();
  frames.insert(frames.end(), k.frames().begin() + 1, k.frames().end());
  std::vector<double> grid;
  for (double t : h.time_grid()) grid.push_back(t / 2.0);
  for (std::size_t i = 1; i < k.time_grid().size(); ++i)
    grid.push_back((k.time_grid()[i] + 1.0) / 2.0);
  return DiscreteHomotopy(std::move(frames), std::move(grid));
}

DiscreteHomotopy reverse(const DiscreteHomotopy& h) {
  std::vector<SpaceMap> frames(h.frames().rbegin(), h.frames().rend());
  std::vector<double> grid;
  for (auto it = h.time_grid().rbegin(); it != h.time_grid().rend(); ++it)
    grid.push_back(1.0 - *it);
  return DiscreteHomotopy(std::move(frames), std::move(grid));
}

DiscreteHomotopy compose_homotopy(const DiscreteHomotopy& h, const SpaceMap& post) {
  std::vector<SpaceMap> frames;
  for (const SpaceMap& fr : h.frames()) frames.push_back(compose(fr, post));
  return DiscreteHomotopy(std::move(frames), h.time_grid());
}

DiscreteHomotopy pre_compose_homotopy(const SpaceMap& pre, const DiscreteHomotopy& h) {
  std::vector<SpaceMap> frames;
  for (const SpaceMap& fr : h.frames()) frames.push_back(compose(pre, fr));
  return DiscreteHomotopy(std::move(frames), h.time_grid());
}

ProximalPath::ProximalPath(std::shared_ptr<const Space> space, std::vector<int> samples,
                           std::vector<double> time_grid)
    : space_(std::move(space)), samples_(std::move(samples)), grid_(std::move(time_grid)) {
  if (!space_) throw InvalidMap("path needs a space");
  if (samples_.size() < 2) throw InvalidMap("path needs at least two samples");
  for (int id : samples_)
    if (space_->index_of(id) < 0)
      throw InvalidMap("path sample " + std::to_string(id) + " is not in the space");
  if (grid_.empty()) {
    const double steps = static_cast<double>(samples_.size()) - 1.0;
    for (std::size_t i = 0; i < samples_.size(); ++i)
      grid_.push_back(static_cast<double>(i) / steps);
  } else {
    if (grid_.size() != samples_.size())
      throw InvalidMap("path grid and sample list differ in length");
    if (std::abs(grid_.front()) > kTol || std::abs(grid_.back() - 1.0) > kTol)
      throw InvalidMap("path grid must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
      if (!(grid_[i] < grid_[i + 1]))
        throw InvalidMap("path grid must be strictly increasing");
  }
}

bool verify_path(const ProximalPath& p, RelationKind mode) {
  const Space& sp = p.space();
  for (std::size_t i = 0; i + 1 < p.samples().size(); ++i) {
    const int a = p.samples()[i], b = p.samples()[i + 1];
    const double d =
        mode == RelationKind::spatial
            ? distance(sp.point_at(sp.index_of(a)).xy, sp.point_at(sp.index_of(b)).xy)
            : feature_distance(sp, a, b);
    const double eps = mode == RelationKind::spatial ? sp.eps_spatial() : sp.eps_desc();
    if (d > eps + kTol) return false;
  }
  return true;
}

DescriptionSet path_description(const ProximalPath& p) {
  return description_set(p.space(), Subset(p.samples()));
}

bool paths_share_description(const ProximalPath& p, const ProximalPath& q) {
  const Space& sp = p.space();
  const Space& sq = q.space();
  const double eps = std::max(sp.eps_desc(), sq.eps_desc());
  auto covered = [&](const ProximalPath& from, const ProximalPath& to) {
    for (int a : from.samples()) {
      bool matched = false;
      for (int b : to.samples()) {
        const auto& ra = from.space().probes().rows[static_cast<std::size_t>(
            from.space().index_of(a))];
        const auto& rb =
            to.space().probes().rows[static_cast<std::size_t>(to.space().index_of(b))];
        if (feature_distance(ra, rb) <= eps + kTol) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  };
  return covered(p, q) && covered(q, p);
}

PathClass::PathClass(std::vector<ProximalPath> representatives)
    : reps_(std::move(representatives)) {
  if (reps_.empty()) throw InvalidMap("path class needs at least one representative");
  for (const ProximalPath& p : reps_) {
    if (!space_equal(p.space(), reps_.front().space()))
      throw InvalidMap("path class representatives live in different spaces");
    if (p.start() != reps_.front().start() || p.end() != reps_.front().end())
      throw EndpointMismatch("path class representatives must share endpoints");
  }
}

std::vector<std::vector<int>> group_paths_by_description(
    const std::vector<ProximalPath>& paths) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
    bool placed = false;
    for (std::vector<int>& group : groups) {
      if (paths_share_description(paths[static_cast<std::size_t>(group.front())],
                                  paths[static_cast<std::size_t>(i)])) {
        group.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

namespace {

bool is_tree(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.positions.resize(static_cast<std::size_t>(vertex_count));
  g.edges = edges;
  const BettiPair betti = betti_graph(g);
  return betti.beta0 == 1 && betti.beta1 == 0;
}

bool features_monochrome(const std::vector<std::vector<double>>& rows, double eps) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (feature_distance(rows[i], rows[j]) > eps + kTol) return false;
  return true;
}

}  // namespace

bool is_contractible(const Graph& g, ContractMode mode,
                     const std::optional<VertexFeatures>& features) {
  if (g.vertex_count() == 0) throw NoRealization("empty carrier has no realization");
  const BettiPair betti = betti_graph(g);
  const bool tree = betti.beta0 == 1 && betti.beta1 == 0;
  if (tree) return true;
  if (mode == ContractMode::spatial) return false;
  if (!features)
    throw MissingProbe("vertex features are required to contract a figure with cycles");
  if (static_cast<int>(features->rows.size()) != g.vertex_count())
    throw InvalidSpace("feature row count does not match the vertex count");
  for (const auto& row : features->rows)
    if (static_cast<int>(row.size()) != features->dim)
      throw InvalidSpace("feature rows disagree on dimension");
  return features_monochrome(features->rows, features->eps_desc);
}

bool is_contractible(const Space& sp, const Subset& carrier, ContractMode mode) {
  sp.validate(carrier);
  if (carrier.empty()) throw NoRealization("empty carrier has no realization");

  if (mode != ContractMode::spatial && is_monochrome(sp, carrier)) return true;

  const std::vector<int>& ids = carrier.ids();
  const int n = static_cast<int>(ids.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d =
          mode == ContractMode::spatial
              ? distance(sp.point_at(sp.index_of(ids[static_cast<std::size_t>(i)])).xy,
                         sp.point_at(sp.index_of(ids[static_cast<std::size_t>(j)])).xy)
              : feature_distance(sp, ids[static_cast<std::size_t>(i)],
                                 ids[static_cast<std::size_t>(j)]);
      const double eps =
          mode == ContractMode::spatial ? sp.eps_spatial() : sp.eps_desc();
      if (d <= eps + kTol) edges.emplace_back(i, j);
    }
  }
  return is_tree(n, edges);
}

EquivalenceReport verify_homotopy_equivalence(const SpaceMap& f, const SpaceMap& g,
                                              const DiscreteHomotopy& h_source,
                                              const DiscreteHomotopy& h_target,
                                              RelationKind mode,
                                              const HomotopyCheckConfig& cfg) {
  EquivalenceReport report;
  report.forward = verify_homotopy(h_source, compose(f, g),
                                   identity_map(f.source_ptr()), mode, cfg);
  report.backward = verify_homotopy(h_target, compose(g, f),
                                    identity_map(g.source_ptr()), mode, cfg);
  return report;
}

}  // namespace proxitop
