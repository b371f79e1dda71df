#include "proxitop/axioms.hpp"

#include <bit>

#include "proxitop/descriptive.hpp"
#include "proxitop/errors.hpp"

namespace proxitop {

namespace detail {

std::vector<int> mask_to_ids(std::uint64_t mask, const std::vector<int>& ids) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1) out.push_back(ids[static_cast<std::size_t>(i)]);
  return out;
}

AxiomReport finalize_mask_report(std::string relation, bool exhaustive,
                                 const AxiomCheckConfig& cfg,
                                 std::vector<MaskScanPart> parts,
                                 std::array<std::uint64_t, 4> checked,
                                 const std::vector<int>& ids) {
  static const char* kNames[4] = {"emptiness", "symmetry", "intersection",
                                  "union_split"};
  AxiomReport report;
  report.relation = std::move(relation);
  report.exhaustive = exhaustive;
  report.seed = cfg.seed;
  report.trials = exhaustive ? 0 : cfg.trials;

  std::vector<MaskViolation> all;
  for (auto& part : parts) {
    for (int ax = 0; ax < 4; ++ax)
      report.checks[static_cast<std::size_t>(ax)].violations +=
          part.violations[static_cast<std::size_t>(ax)];
    all.insert(all.end(), part.examples.begin(), part.examples.end());
  }
  std::sort(all.begin(), all.end());

  for (int ax = 0; ax < 4; ++ax) {
    auto& check = report.checks[static_cast<std::size_t>(ax)];
    check.axiom = kNames[ax];
    check.checked = checked[static_cast<std::size_t>(ax)];
    int kept = 0;
    for (const auto& v : all) {
      if (v.axiom != ax) continue;
      if (kept++ >= cfg.max_counterexamples) break;
      AxiomViolation out;
      out.axiom = kNames[ax];
      out.a = mask_to_ids(v.a, ids);
      out.b = mask_to_ids(v.b, ids);
      out.c = mask_to_ids(v.c, ids);
      report.counterexamples.push_back(std::move(out));
    }
  }
  return report;
}

}  // namespace detail

std::vector<std::uint64_t> adjacency_masks(const Space& sp, bool spatial) {
  const int n = static_cast<int>(sp.size());
  if (n > 64) throw InvalidSpace("adjacency masks limited to 64 points");
  double eps = spatial ? sp.eps_spatial() : sp.eps_desc();
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double d = spatial ? distance(sp.point_at(i).xy, sp.point_at(j).xy)
                         : feature_distance(sp.probes().rows[static_cast<std::size_t>(i)],
                                            sp.probes().rows[static_cast<std::size_t>(j)]);
      if (d <= eps + kTol) nbr[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
  }
  return nbr;
}

namespace {

// Per-mask neighborhoods so the exhaustive relation is one AND per call.
std::vector<std::uint64_t> neighborhood_table(
    const std::vector<std::uint64_t>& nbr) {
  const int n = static_cast<int>(nbr.size());
  std::vector<std::uint64_t> tab(std::size_t{1} << n, 0);
  for (std::uint64_t a = 1; a < tab.size(); ++a) {
    std::uint64_t low = a & (~a + 1);
    tab[a] = tab[a ^ low] | nbr[static_cast<std::size_t>(std::countr_zero(low))];
  }
  return tab;
}

AxiomReport check_metric_or_descriptive(const Space& sp, bool spatial,
                                        const AxiomCheckConfig& cfg,
                                        const char* label) {
  const int n = static_cast<int>(sp.size());
  if (!spatial) sp.probes();  // MissingProbe when absent

  std::vector<int> ids;
  ids.reserve(sp.size());
  for (const Point& p : sp.points()) ids.push_back(p.id);

  bool exhaustive = n <= cfg.exhaustive_max_points || cfg.force_exhaustive;
  if (cfg.force_exhaustive && n > 12)
    throw InvalidSpace("exhaustive axiom scan is limited to 12 points");
  if (n > cfg.exhaustive_max_points && !cfg.force_exhaustive)
    exhaustive = false;

  if (exhaustive) {
    auto nbr = adjacency_masks(sp, spatial);
    auto tab = neighborhood_table(nbr);
    const std::uint64_t* t = tab.data();
    auto rel = [t](std::uint64_t a, std::uint64_t b) {
      return a != 0 && b != 0 && (t[a] & b) != 0;
    };
    return check_axioms_masked_exhaustive(ids, rel, cfg, label);
  }

  if (n <= 64) {
    auto nbr = adjacency_masks(sp, spatial);
    const std::uint64_t* nb = nbr.data();
    auto rel = [nb](std::uint64_t a, std::uint64_t b) {
      if (a == 0 || b == 0) return false;
      std::uint64_t reach = 0;
      for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
        reach |= nb[std::countr_zero(rest)];
      return (reach & b) != 0;
    };
    return check_axioms_masked_sampled(ids, rel, cfg, label);
  }

  // Large spaces: sampled scan over id subsets through the public relation.
  AxiomReport report;
  report.relation = label;
  report.exhaustive = false;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  static const char* kNames[4] = {"emptiness", "symmetry", "intersection",
                                  "union_split"};
  for (int ax = 0; ax < 4; ++ax) {
    report.checks[static_cast<std::size_t>(ax)].axiom = kNames[ax];
    report.checks[static_cast<std::size_t>(ax)].checked = cfg.trials;
  }

  auto rel = [&](const Subset& a, const Subset& b) {
    return spatial ? near(sp, a, b) : descriptively_near(sp, a, b);
  };
  auto sample = [&](std::uint64_t stream) {
    std::vector<int> out;
    std::uint64_t word = 0;
    int have = 0;
    for (int i = 0; i < n; ++i) {
      if (have == 0) {
        word = splitmix64(stream + static_cast<std::uint64_t>(i));
        have = 64;
      }
      if (word & 1) out.push_back(ids[static_cast<std::size_t>(i)]);
      word >>= 1;
      --have;
    }
    return Subset(std::move(out));
  };

  auto record = [&](int ax, const Subset& a, const Subset& b, const Subset& c) {
    auto& check = report.checks[static_cast<std::size_t>(ax)];
    ++check.violations;
    if (check.violations <= static_cast<std::uint64_t>(cfg.max_counterexamples))
      report.counterexamples.push_back(
          {kNames[ax], a.ids(), b.ids(), c.ids()});
  };

  Subset empty;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    std::uint64_t s = splitmix64(cfg.seed + 0x632be59bd9b4e019ULL * (i + 1));
    Subset a = sample(splitmix64(s));
    Subset b = sample(splitmix64(s ^ 0x9e3779b97f4a7c15ULL));
    Subset c = sample(splitmix64(s ^ 0x3c79ac492ba7b653ULL));
    if (rel(a, empty) || rel(empty, a))
      record(detail::kEmptiness, a, empty, empty);
    bool nab = rel(a, b);
    if (nab != rel(b, a)) record(detail::kSymmetry, a, b, empty);
    if (!set_intersection(a, b).empty() && !nab)
      record(detail::kIntersection, a, b, empty);
    if (rel(a, set_union(b, c)) && !nab && !rel(a, c))
      record(detail::kUnionSplit, a, b, c);
  }
  std::stable_sort(report.counterexamples.begin(), report.counterexamples.end(),
                   [](const AxiomViolation& x, const AxiomViolation& y) {
                     return x.axiom < y.axiom;
                   });
  return report;
}

}  // namespace

AxiomReport check_cech_axioms(const Space& sp, const AxiomCheckConfig& cfg) {
  return check_metric_or_descriptive(sp, true, cfg, "cech");
}

AxiomReport check_descriptive_axioms(const Space& sp,
                                     const AxiomCheckConfig& cfg) {
  return check_metric_or_descriptive(sp, false, cfg, "descriptive");
}

}  // namespace proxitop
