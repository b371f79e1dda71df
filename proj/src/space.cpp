#include "proxitop/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "proxitop/errors.hpp"

namespace proxitop {

Subset::Subset(std::initializer_list<int> ids) : Subset(std::vector<int>(ids)) {}

Subset::Subset(std::vector<int> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool Subset::contains(int id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Subset set_union(const Subset& a, const Subset& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return Subset(std::move(out));
}

Subset set_intersection(const Subset& a, const Subset& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return Subset(std::move(out));
}

Subset set_difference(const Subset& a, const Subset& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return Subset(std::move(out));
}

Space::Space(std::vector<Point> points, double eps_spatial)
    : points_(std::move(points)), eps_spatial_(eps_spatial) {
  if (points_.empty()) throw InvalidSpace("space must contain at least one point");
  if (!(eps_spatial_ >= 0.0))
    throw InvalidSpace("eps_spatial must be >= 0");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.xy.x) || !std::isfinite(p.xy.y))
      throw InvalidSpace("point " + std::to_string(p.id) +
                         " has non-finite coordinates");
    if (!index_.emplace(p.id, static_cast<int>(i)).second)
      throw InvalidSpace("duplicate point id " + std::to_string(p.id));
  }
}

Space::Space(std::vector<Point> points, double eps_spatial,
             std::vector<std::vector<double>> probe_rows, double eps_desc)
    : Space(std::move(points), eps_spatial) {
  if (!(eps_desc >= 0.0)) throw InvalidSpace("eps_desc must be >= 0");
  eps_desc_ = eps_desc;
  if (probe_rows.size() != points_.size())
    throw MissingProbe("probe table must cover every point exactly once");
  if (probe_rows.front().empty())
    throw InvalidSpace("probe vectors must have dimension >= 1");
  ProbeTable table;
  table.dim = static_cast<int>(probe_rows.front().size());
  for (std::size_t i = 0; i < probe_rows.size(); ++i) {
    if (static_cast<int>(probe_rows[i].size()) != table.dim)
      throw InvalidSpace("probe vectors must share one dimension");
    for (double v : probe_rows[i])
      if (!std::isfinite(v))
        throw InvalidSpace("probe vector for point " +
                           std::to_string(points_[i].id) +
                           " has non-finite entries");
  }
  table.rows = std::move(probe_rows);
  probes_ = std::move(table);
}

const ProbeTable& Space::probes() const {
  if (!probes_)
    throw MissingProbe("space carries no probe table");
  return *probes_;
}

int Space::index_of(int id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

Subset Space::carrier() const {
  std::vector<int> ids;
  ids.reserve(points_.size());
  for (const Point& p : points_) ids.push_back(p.id);
  return Subset(std::move(ids));
}

void Space::validate(const Subset& s) const {
  for (int id : s)
    if (index_of(id) < 0)
      throw InvalidSubset("point id " + std::to_string(id) +
                          " does not belong to the space");
}

bool space_equal(const Space& a, const Space& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  if (a.eps_spatial() != b.eps_spatial() || a.eps_desc() != b.eps_desc())
    return false;
  if (a.has_probes() != b.has_probes()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point& p = a.points()[i];
    const Point& q = b.points()[i];
    if (p.id != q.id || p.xy != q.xy) return false;
    if (a.has_probes() && a.probes().rows[i] != b.probes().rows[i])
      return false;
  }
  return true;
}

double lower_distance(const Space& sp, const Subset& a, const Subset& b) {
  sp.validate(a);
  sp.validate(b);
  if (a.empty() || b.empty())
    return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int ia : a) {
    const Vec2& p = sp.point_at(sp.index_of(ia)).xy;
    for (int ib : b) {
      const Vec2& q = sp.point_at(sp.index_of(ib)).xy;
      best = std::min(best, distance(p, q));
    }
  }
  return best;
}

bool near(const Space& sp, const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) return false;
  return lower_distance(sp, a, b) <= sp.eps_spatial() + kTol;
}

Subset closure(const Space& sp, const Subset& a) {
  sp.validate(a);
  if (a.empty()) throw EmptySet("closure of the empty set is undefined");
  std::vector<int> out;
  for (const Point& p : sp.points()) {
    Subset single({p.id});
    if (lower_distance(sp, single, a) <= sp.eps_spatial() + kTol)
      out.push_back(p.id);
  }
  return Subset(std::move(out));
}

BoundaryDecomposition boundary_interior(const Space& sp, const Subset& a) {
  Subset cl = closure(sp, a);
  Subset ext = set_difference(sp.carrier(), cl);
  std::vector<int> bdy;
  for (int id : cl) {
    Subset single({id});
    if (!ext.empty() &&
        lower_distance(sp, single, ext) <= sp.eps_spatial() + kTol)
      bdy.push_back(id);
  }
  BoundaryDecomposition out;
  out.boundary = Subset(std::move(bdy));
  out.interior = set_difference(cl, out.boundary);
  out.exterior = std::move(ext);
  return out;
}

}  // namespace proxitop
