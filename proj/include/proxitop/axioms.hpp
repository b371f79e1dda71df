#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/space.hpp"

namespace proxitop {

// One counterexample; ids are point ids, c is used by the union axiom only.
struct AxiomViolation {
  std::string axiom;
  std::vector<int> a, b, c;
};

struct AxiomCheck {
  std::string axiom;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};

/**
 * Result of checking the four proximity axioms for one relation:
 *   emptiness    - no set is near the empty set
 *   symmetry     - near(a,b) == near(b,a)
 *   intersection - sets sharing a point are near
 *   union_split  - near a union implies near one of the parts
 * Counterexamples are reported in canonical (smallest subset) order and
 * capped, so reports are deterministic for a fixed seed.
 */
struct AxiomReport {
  std::string relation;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::array<AxiomCheck, 4> checks;
  std::vector<AxiomViolation> counterexamples;

  bool all_ok() const {
    for (const auto& c : checks)
      if (c.violations > 0) return false;
    return true;
  }
};

struct AxiomCheckConfig {
  std::uint64_t trials = 1000;     // sampled triples when not exhaustive
  std::uint64_t seed = 0;
  bool force_exhaustive = false;   // error when the space is too large
  int exhaustive_max_points = 10;  // auto-exhaustive at or below this size
  bool parallel = true;
  int max_counterexamples = 5;     // cap per axiom
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4a08685f2fb2dULL;
  return x ^ (x >> 31);
}

namespace detail {

enum AxiomIx { kEmptiness = 0, kSymmetry = 1, kIntersection = 2, kUnionSplit = 3 };

struct MaskViolation {
  int axiom;
  std::uint64_t a, b, c;
  friend bool operator<(const MaskViolation& x, const MaskViolation& y) {
    if (x.axiom != y.axiom) return x.axiom < y.axiom;
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
  friend bool operator==(const MaskViolation& x, const MaskViolation& y) {
    return x.axiom == y.axiom && x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

struct MaskScanPart {
  std::array<std::uint64_t, 4> violations{0, 0, 0, 0};
  std::vector<MaskViolation> examples;  // at most cap per axiom, in scan order
  std::array<int, 4> kept{0, 0, 0, 0};

  void record(int axiom, std::uint64_t a, std::uint64_t b, std::uint64_t c,
              int cap) {
    ++violations[axiom];
    if (kept[axiom] < cap) {
      examples.push_back({axiom, a, b, c});
      ++kept[axiom];
    }
  }
};

std::vector<int> mask_to_ids(std::uint64_t mask, const std::vector<int>& ids);

AxiomReport finalize_mask_report(std::string relation, bool exhaustive,
                                 const AxiomCheckConfig& cfg,
                                 std::vector<MaskScanPart> parts,
                                 std::array<std::uint64_t, 4> checked,
                                 const std::vector<int>& ids);

}  // namespace detail

/**
 * Exhaustively checks the four axioms for a relation over bitmask subsets
 * of ids (ids.size() <= 20). rel must be a pure function of its two mask
 * arguments. The triple scan is the hot loop and runs under OpenMP when
 * enabled; reports are identical for every thread count.
 */
template <class Rel>
AxiomReport check_axioms_masked_exhaustive(const std::vector<int>& ids,
                                           Rel&& rel,
                                           const AxiomCheckConfig& cfg,
                                           std::string relation) {
  const int n = static_cast<int>(ids.size());
  const std::int64_t m = std::int64_t{1} << n;
  const int cap = cfg.max_counterexamples;

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
  std::vector<detail::MaskScanPart> parts(nthreads);

  // Emptiness: nothing is near the empty set, in either slot.
  for (std::int64_t a = 0; a < m; ++a) {
    std::uint64_t ua = static_cast<std::uint64_t>(a);
    if (rel(ua, 0) || rel(0, ua))
      parts[0].record(detail::kEmptiness, ua, 0, 0, cap);
  }

  // Symmetry and intersection over all pairs.
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
  for (std::int64_t a = 0; a < m; ++a) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    detail::MaskScanPart& part = parts[tid];
    std::uint64_t ua = static_cast<std::uint64_t>(a);
    for (std::int64_t b = 0; b < m; ++b) {
      std::uint64_t ub = static_cast<std::uint64_t>(b);
      bool nab = rel(ua, ub);
      if (a <= b && nab != rel(ub, ua))
        part.record(detail::kSymmetry, ua, ub, 0, cap);
      if ((ua & ub) != 0 && !nab)
        part.record(detail::kIntersection, ua, ub, 0, cap);
    }
  }

  // Union splitting over all triples.
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
  for (std::int64_t a = 0; a < m; ++a) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    detail::MaskScanPart& part = parts[tid];
    std::uint64_t ua = static_cast<std::uint64_t>(a);
    for (std::int64_t b = 0; b < m; ++b) {
      std::uint64_t ub = static_cast<std::uint64_t>(b);
      bool nab = rel(ua, ub);
      for (std::int64_t c = 0; c < m; ++c) {
        std::uint64_t uc = static_cast<std::uint64_t>(c);
        if (rel(ua, ub | uc) && !nab && !rel(ua, uc))
          part.record(detail::kUnionSplit, ua, ub, uc, cap);
      }
    }
  }

  std::uint64_t um = static_cast<std::uint64_t>(m);
  std::array<std::uint64_t, 4> checked{um, um * um, um * um, um * um * um};
  AxiomReport report = detail::finalize_mask_report(
      std::move(relation), true, cfg, std::move(parts), checked, ids);
  return report;
}

/**
 * Seeded random scan of the axioms for a relation over bitmask subsets
 * (ids.size() <= 64). Each trial draws a subset triple from its own
 * splitmix stream, so results do not depend on thread count.
 */
template <class Rel>
AxiomReport check_axioms_masked_sampled(const std::vector<int>& ids, Rel&& rel,
                                        const AxiomCheckConfig& cfg,
                                        std::string relation) {
  const int n = static_cast<int>(ids.size());
  const std::uint64_t all =
      n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const int cap = cfg.max_counterexamples;

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
  std::vector<detail::MaskScanPart> parts(nthreads);

  const std::int64_t trials = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
  for (std::int64_t i = 0; i < trials; ++i) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    detail::MaskScanPart& part = parts[tid];
    std::uint64_t s = splitmix64(cfg.seed + 0x632be59bd9b4e019ULL *
                                                static_cast<std::uint64_t>(i + 1));
    std::uint64_t a = splitmix64(s) & all;
    std::uint64_t b = splitmix64(s ^ 0x9e3779b97f4a7c15ULL) & all;
    std::uint64_t c = splitmix64(s ^ 0x3c79ac492ba7b653ULL) & all;

    if (rel(a, 0) || rel(0, a)) part.record(detail::kEmptiness, a, 0, 0, cap);
    bool nab = rel(a, b);
    if (nab != rel(b, a)) part.record(detail::kSymmetry, a, b, 0, cap);
    if ((a & b) != 0 && !nab) part.record(detail::kIntersection, a, b, 0, cap);
    if (rel(a, b | c) && !nab && !rel(a, c))
      part.record(detail::kUnionSplit, a, b, c, cap);
  }

  std::uint64_t t = cfg.trials;
  std::array<std::uint64_t, 4> checked{t, t, t, t};
  return detail::finalize_mask_report(std::move(relation), false, cfg,
                                      std::move(parts), checked, ids);
}

// Nearness relation of a space as bitmask adjacency, one mask per point.
// spatial=true thresholds point distance, otherwise feature distance.
std::vector<std::uint64_t> adjacency_masks(const Space& sp, bool spatial);

// Checks the metric nearness relation of the space. Exhaustive for small
// spaces (or when forced), seeded-random sampling otherwise.
AxiomReport check_cech_axioms(const Space& sp, const AxiomCheckConfig& cfg = {});

// Same scan for the description-matching relation (requires probes).
AxiomReport check_descriptive_axioms(const Space& sp,
                                     const AxiomCheckConfig& cfg = {});

}  // namespace proxitop
