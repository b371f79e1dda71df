#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <vector>

#include "proxitop/axioms.hpp"
#include "proxitop/homotopy.hpp"
#include "proxitop/jordan.hpp"
#include "proxitop/nerves.hpp"
#include "proxitop/report.hpp"

// Times each parallel kernel against its serial run and checks that both
// produce the same report, so the parallel path is visibly a pure speedup.

namespace {

using namespace proxitop;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t& state) {
  state = splitmix64(state);
  return static_cast<double>(state) / 18446744073709551616.0;
}

std::shared_ptr<const Space> random_space(int n, double eps, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::vector<Point> pts;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    pts.push_back({i, {unit(state) * 10.0, unit(state) * 10.0}});
    rows.push_back({unit(state), unit(state)});
  }
  return std::make_shared<Space>(std::move(pts), eps, std::move(rows), 0.25);
}

double run_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-22s %10.1f ms %10.1f ms   x%.2f   reports %s\n", name, serial_ms,
              parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("%-22s %13s %13s %7s\n", "kernel", "serial", "parallel", "");

  {
    auto sp = random_space(40, 1.5, 7);
    AxiomCheckConfig cfg;
    cfg.trials = 200000;
    AxiomReport a, b;
    cfg.parallel = false;
    const double ts = run_ms([&] { a = check_cech_axioms(*sp, cfg); });
    cfg.parallel = true;
    const double tp = run_ms([&] { b = check_cech_axioms(*sp, cfg); });
    row("axioms sampled", ts, tp, report::axiom_doc(a) == report::axiom_doc(b));
  }

  {
    auto sp = random_space(8, 2.0, 11);
    std::vector<SpaceMap> frames(6, identity_map(sp));
    DiscreteHomotopy h(frames, {0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
    HomotopyCheckConfig cfg;
    HomotopyCheckReport a, b;
    cfg.parallel = false;
    const double ts = run_ms([&] {
      a = verify_homotopy(h, frames.front(), frames.back(), RelationKind::spatial, cfg);
    });
    cfg.parallel = true;
    const double tp = run_ms([&] {
      b = verify_homotopy(h, frames.front(), frames.back(), RelationKind::spatial, cfg);
    });
    row("homotopy exhaustive", ts, tp, report::homotopy_doc(a) == report::homotopy_doc(b));
  }

  {
    auto sp = random_space(36, 2.5, 13);
    std::vector<Subset> elements;
    for (int i = 0; i < 12; ++i) {
      std::vector<int> ids;
      for (int k = 0; k < 36; ++k)
        if ((k % 12) == i || ((k + 1) % 12) == i || ((k + 2) % 12) == i) ids.push_back(k);
      elements.emplace_back(std::move(ids));
    }
    const Cover cover(sp, elements);
    GoodCoverConfig cfg;
    cfg.max_subfamily = 3;
    GoodCoverReport a, b;
    cfg.parallel = false;
    const double ts = run_ms([&] { a = is_good_cover(cover, cfg); });
    cfg.parallel = true;
    const double tp = run_ms([&] { b = is_good_cover(cover, cfg); });
    row("good cover scan", ts, tp, report::good_cover_doc(a) == report::good_cover_doc(b));
  }

  {
    PathCycle poly;
    const int n = 24;
    for (int i = 0; i < n; ++i) {
      const double ang = 2.0 * 3.14159265358979323846 * i / n;
      const double r = (i % 2) ? 2.0 : 3.7;
      poly.vertices.push_back({i, {r * std::cos(ang), r * std::sin(ang)}});
    }
    for (int i = 0; i < n; ++i)
      poly.edges.push_back({i, (i + 1) % n, {poly.vertices[i].xy, poly.vertices[(i + 1) % n].xy}});
    const PlanarCurve curve = realize_curve(poly);
    const RegionLabeling lab = region_count(curve, std::nullopt);
    AgreementReport a, b;
    const double ts = run_ms([&] { a = pip_flood_agreement(curve, lab, 200000, 0, false); });
    const double tp = run_ms([&] { b = pip_flood_agreement(curve, lab, 200000, 0, true); });
    row("pip vs flood", ts, tp, report::agreement_doc(a) == report::agreement_doc(b));
  }

  return 0;
}
