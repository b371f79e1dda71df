#include "proxitop/maps.hpp"

#include <bit>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/axioms.hpp"
#include "proxitop/descriptive.hpp"
#include "proxitop/errors.hpp"

namespace proxitop {

SpaceMap::SpaceMap(std::shared_ptr<const Space> source,
                   std::shared_ptr<const Space> target,
                   std::map<int, int> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  for (const Point& p : source_->points()) {
    auto it = assignment_.find(p.id);
    if (it == assignment_.end())
      throw InvalidMap("map is not total: no image for point " +
                       std::to_string(p.id));
    if (target_->index_of(it->second) < 0)
      throw InvalidMap("image id " + std::to_string(it->second) +
                       " does not exist in the target");
  }
  if (assignment_.size() != source_->size())
    throw InvalidMap("assignment mentions ids outside the source");
}

int SpaceMap::apply(int id) const {
  auto it = assignment_.find(id);
  if (it == assignment_.end())
    throw InvalidSubset("point id " + std::to_string(id) +
                        " does not belong to the map's source");
  return it->second;
}

Subset SpaceMap::apply(const Subset& s) const {
  std::vector<int> out;
  out.reserve(s.size());
  for (int id : s) out.push_back(apply(id));
  return Subset(std::move(out));
}

Subset SpaceMap::image() const { return apply(source_->carrier()); }

SpaceMap identity_map(std::shared_ptr<const Space> sp) {
  std::map<int, int> assignment;
  for (const Point& p : sp->points()) assignment[p.id] = p.id;
  auto copy = sp;
  return SpaceMap(std::move(copy), std::move(sp), std::move(assignment));
}

SpaceMap constant_map(std::shared_ptr<const Space> source,
                      std::shared_ptr<const Space> target, int target_id) {
  std::map<int, int> assignment;
  for (const Point& p : source->points()) assignment[p.id] = target_id;
  return SpaceMap(std::move(source), std::move(target), std::move(assignment));
}

bool maps_equal_pointwise(const SpaceMap& f, const SpaceMap& g) {
  return space_equal(f.source(), g.source()) &&
         f.assignment() == g.assignment();
}

namespace {

struct MaskPair {
  std::uint64_t a = ~std::uint64_t{0}, b = ~std::uint64_t{0};
  bool found = false;
  void offer(std::uint64_t na, std::uint64_t nb) {
    if (!found || na < a || (na == a && nb < b)) {
      a = na;
      b = nb;
      found = true;
    }
  }
};

// Nearness-preservation scan over bitmask subsets of the chosen domain.
ContinuityWitness scan_preservation(const SpaceMap& f, bool spatial,
                                    const ContinuityCheckConfig& cfg,
                                    const std::optional<Subset>& domain) {
  const Space& src = f.source();
  const Space& tgt = f.target();
  if (!spatial) {
    src.probes();
    tgt.probes();
  }

  std::vector<int> ids;
  if (domain) {
    src.validate(*domain);
    ids = domain->ids();
  } else {
    for (const Point& p : src.points()) ids.push_back(p.id);
  }
  const int n = static_cast<int>(ids.size());
  if (n == 0) throw EmptySet("continuity scan needs a nonempty domain");
  if (n > 64 || static_cast<int>(tgt.size()) > 64)
    throw InvalidSpace("continuity scan is limited to 64 points per space");

  ContinuityWitness w;
  w.relation = spatial ? "cech" : "descriptive";
  w.seed = cfg.seed;

  // Adjacency of the chosen source ids and of the whole target.
  double eps_s = spatial ? src.eps_spatial() : src.eps_desc();
  std::vector<std::uint64_t> src_nbr(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int pi = src.index_of(ids[static_cast<std::size_t>(i)]);
      int pj = src.index_of(ids[static_cast<std::size_t>(j)]);
      double d = spatial
                     ? distance(src.point_at(pi).xy, src.point_at(pj).xy)
                     : feature_distance(src.probes().rows[static_cast<std::size_t>(pi)],
                                        src.probes().rows[static_cast<std::size_t>(pj)]);
      if (d <= eps_s + kTol) src_nbr[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
  std::vector<std::uint64_t> tgt_nbr = adjacency_masks(tgt, spatial);

  std::vector<std::uint64_t> pimg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    pimg[static_cast<std::size_t>(i)] =
        std::uint64_t{1} << tgt.index_of(f.apply(ids[static_cast<std::size_t>(i)]));

  auto image_mask = [&](std::uint64_t a) {
    std::uint64_t img = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
      img |= pimg[static_cast<std::size_t>(std::countr_zero(rest))];
    return img;
  };
  auto tgt_near = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t reach = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
      reach |= tgt_nbr[static_cast<std::size_t>(std::countr_zero(rest))];
    return (reach & b) != 0;
  };

  bool exhaustive = n <= cfg.exhaustive_max_points || cfg.force_exhaustive;
  if (cfg.force_exhaustive && n > 16)
    throw InvalidSpace("exhaustive continuity scan is limited to 16 points");

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
  std::vector<MaskPair> best(static_cast<std::size_t>(nthreads));

  if (exhaustive) {
    w.exhaustive = true;
    const std::int64_t m = std::int64_t{1} << n;
    auto tab = [&] {
      std::vector<std::uint64_t> t(std::size_t{1} << n, 0);
      for (std::uint64_t a = 1; a < t.size(); ++a) {
        std::uint64_t low = a & (~a + 1);
        t[a] = t[a ^ low] | src_nbr[static_cast<std::size_t>(std::countr_zero(low))];
      }
      return t;
    }();

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
    for (std::int64_t a = 1; a < m; ++a) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      std::uint64_t ua = static_cast<std::uint64_t>(a);
      std::uint64_t reach = tab[ua];
      std::uint64_t img_a = image_mask(ua);
      for (std::int64_t b = 1; b < m; ++b) {
        std::uint64_t ub = static_cast<std::uint64_t>(b);
        if ((reach & ub) != 0 && !tgt_near(img_a, image_mask(ub)))
          best[static_cast<std::size_t>(tid)].offer(ua, ub);
      }
    }
    w.pairs_checked = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
  } else {
    w.trials = cfg.trials;
    const std::uint64_t all =
        n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    auto src_near = [&](std::uint64_t a, std::uint64_t b) {
      std::uint64_t reach = 0;
      for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
        reach |= src_nbr[static_cast<std::size_t>(std::countr_zero(rest))];
      return (reach & b) != 0;
    };
    const std::int64_t trials = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
    for (std::int64_t i = 0; i < trials; ++i) {
      int tid = 0;
#ifdef _OPENMP
      tid = omp_get_thread_num();
#endif
      std::uint64_t s =
          splitmix64(cfg.seed + 0x2545f4914f6cdd1dULL * static_cast<std::uint64_t>(i + 1));
      std::uint64_t a = splitmix64(s) & all;
      std::uint64_t b = splitmix64(s ^ 0x9e3779b97f4a7c15ULL) & all;
      if (a == 0 || b == 0) continue;
      if (src_near(a, b) && !tgt_near(image_mask(a), image_mask(b)))
        best[static_cast<std::size_t>(tid)].offer(a, b);
    }
    w.pairs_checked = cfg.trials;
  }

  MaskPair overall;
  for (const auto& part : best)
    if (part.found) overall.offer(part.a, part.b);
  if (overall.found) {
    w.verdict = false;
    w.counterexample = std::make_pair(
        Subset(detail::mask_to_ids(overall.a, ids)),
        Subset(detail::mask_to_ids(overall.b, ids)));
  }
  return w;
}

}  // namespace

ContinuityWitness is_proximally_continuous(const SpaceMap& f,
                                           const ContinuityCheckConfig& cfg,
                                           const std::optional<Subset>& domain) {
  return scan_preservation(f, true, cfg, domain);
}

ContinuityWitness is_dpc(const SpaceMap& f, const ContinuityCheckConfig& cfg,
                         const std::optional<Subset>& domain) {
  return scan_preservation(f, false, cfg, domain);
}

SpaceMap compose(const SpaceMap& f, const SpaceMap& g) {
  if (!space_equal(f.target(), g.source()))
    throw CompositionMismatch("f's target does not match g's source");
  std::map<int, int> assignment;
  for (const auto& [id, mid] : f.assignment()) assignment[id] = g.apply(mid);
  return SpaceMap(f.source_ptr(), g.target_ptr(), std::move(assignment));
}

SpaceMap glue(const SpaceMap& f, const SpaceMap& g, const Subset& a,
              const Subset& b, RelationKind mode) {
  if (!space_equal(f.source(), g.source()) ||
      !space_equal(f.target(), g.target()))
    throw InvalidMap("glue requires maps sharing source and target");
  const Space& sp = f.source();
  sp.validate(a);
  sp.validate(b);

  if (!(set_union(a, b) == sp.carrier()))
    throw NotACover("the two pieces do not cover the source");

  auto closed = [&](const Subset& s) {
    if (s.empty()) return true;
    Subset cl = mode == RelationKind::spatial ? closure(sp, s)
                                              : descriptive_closure(sp, s);
    return cl == s;
  };
  if (!closed(a)) throw NotClosed("piece A is not closed");
  if (!closed(b)) throw NotClosed("piece B is not closed");

  for (int id : set_intersection(a, b))
    if (f.apply(id) != g.apply(id))
      throw Disagreement("maps disagree at shared point " + std::to_string(id));

  std::map<int, int> assignment;
  for (const Point& p : sp.points())
    assignment[p.id] = a.contains(p.id) ? f.apply(p.id) : g.apply(p.id);
  return SpaceMap(f.source_ptr(), f.target_ptr(), std::move(assignment));
}

DegenerateConstantReport is_degenerate_descriptive_constant(const SpaceMap& d) {
  DegenerateConstantReport report;
  Subset img = d.image();
  report.ordinary_constant = img.size() == 1;
  report.degenerate = is_monochrome(d.target(), img);
  return report;
}

}  // namespace proxitop
