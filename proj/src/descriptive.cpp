#include "proxitop/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proxitop/errors.hpp"

namespace proxitop {

double feature_distance(const std::vector<double>& u,
                        const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double d = u[i] - v[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double feature_distance(const Space& sp, int id_a, int id_b) {
  const ProbeTable& t = sp.probes();
  return feature_distance(t.rows[sp.index_of(id_a)], t.rows[sp.index_of(id_b)]);
}

DescriptionSet description_set(const Space& sp, const Subset& a) {
  sp.validate(a);
  if (a.empty()) throw EmptySet("description set of the empty set is undefined");
  const ProbeTable& t = sp.probes();
  DescriptionSet out;
  out.dim = t.dim;
  for (int id : a) {
    const std::vector<double>& v = t.rows[sp.index_of(id)];
    bool fresh = true;
    for (const auto& kept : out.vectors) {
      if (feature_distance(kept, v) <= sp.eps_desc() + kTol) {
        fresh = false;
        break;
      }
    }
    if (fresh) out.vectors.push_back(v);
  }
  return out;
}

namespace {

// Point-level matching: does x's description match any description in a?
bool matches_set(const Space& sp, int x_id, const Subset& a) {
  for (int id : a)
    if (feature_distance(sp, x_id, id) <= sp.eps_desc() + kTol) return true;
  return false;
}

}  // namespace

bool descriptively_near(const Space& sp, const Subset& a, const Subset& b) {
  sp.validate(a);
  sp.validate(b);
  if (a.empty() || b.empty()) return false;
  sp.probes();  // MissingProbe when absent
  for (int ia : a)
    if (matches_set(sp, ia, b)) return true;
  return false;
}

Subset descriptive_intersection(const Space& sp, const Subset& a,
                                const Subset& b) {
  sp.validate(a);
  sp.validate(b);
  sp.probes();
  std::vector<int> out;
  for (int id : set_union(a, b))
    if (matches_set(sp, id, a) && matches_set(sp, id, b)) out.push_back(id);
  return Subset(std::move(out));
}

Subset descriptive_closure(const Space& sp, const Subset& a) {
  sp.validate(a);
  if (a.empty()) throw EmptySet("descriptive closure of the empty set is undefined");
  sp.probes();
  std::vector<int> out;
  for (const Point& p : sp.points())
    if (matches_set(sp, p.id, a)) out.push_back(p.id);
  return Subset(std::move(out));
}

Subset descriptive_ball(const Space& sp, int center_id, double eps) {
  if (sp.index_of(center_id) < 0)
    throw InvalidSubset("ball center id " + std::to_string(center_id) +
                        " does not belong to the space");
  if (!(eps > 0.0)) throw InvalidSubset("ball radius must be positive");
  sp.probes();
  std::vector<int> out;
  for (const Point& p : sp.points())
    if (feature_distance(sp, center_id, p.id) < eps) out.push_back(p.id);
  return Subset(std::move(out));
}

std::vector<Subset> open_descriptive_cover(const Space& sp, double eps) {
  std::vector<Subset> cover;
  for (const Point& p : sp.points()) {
    Subset ball = descriptive_ball(sp, p.id, eps);
    if (std::find(cover.begin(), cover.end(), ball) == cover.end())
      cover.push_back(std::move(ball));
  }
  return cover;
}

double description_diameter(const Space& sp, const Subset& a) {
  sp.validate(a);
  if (a.empty()) throw EmptySet("description diameter of the empty set is undefined");
  sp.probes();
  double best = 0.0;
  const auto& ids = a.ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      best = std::max(best, feature_distance(sp, ids[i], ids[j]));
  return best;
}

bool is_monochrome(const Space& sp, const Subset& a) {
  return description_diameter(sp, a) <= sp.eps_desc() + kTol;
}

ProductSpace::ProductSpace(std::vector<std::shared_ptr<const Space>> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2)
    throw InvalidSpace("product requires at least two factors");
  int dim = 0;
  for (const auto& f : factors_) {
    f->probes();  // all factors must be descriptive
    dim += f->probes().dim;
  }

  // Tuples in lexicographic order of factor point indices.
  std::vector<std::size_t> counter(factors_.size(), 0);
  std::vector<Point> points;
  std::vector<std::vector<double>> rows;
  double eps_desc = 0.0;
  for (const auto& f : factors_) eps_desc = std::max(eps_desc, f->eps_desc());
  int next_id = 0;
  for (;;) {
    std::vector<int> tuple;
    std::vector<double> row;
    row.reserve(dim);
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      const Point& p = factors_[k]->points()[counter[k]];
      tuple.push_back(p.id);
      const auto& probe = factors_[k]->probes().rows[counter[k]];
      row.insert(row.end(), probe.begin(), probe.end());
    }
    tuples_.push_back(std::move(tuple));
    // The product carrier has no planar geometry of its own; points are
    // laid out on a line so the spatial fields stay well formed.
    points.push_back({next_id, {static_cast<double>(next_id), 0.0}});
    rows.push_back(std::move(row));
    ++next_id;

    std::size_t k = factors_.size();
    while (k > 0) {
      --k;
      if (++counter[k] < factors_[k]->size()) break;
      counter[k] = 0;
      if (k == 0) {
        space_ = std::make_shared<Space>(std::move(points), 0.0,
                                         std::move(rows), eps_desc);
        return;
      }
    }
  }
}

const std::vector<int>& ProductSpace::tuple_of(int product_id) const {
  int ix = space_->index_of(product_id);
  if (ix < 0)
    throw InvalidSubset("product point id " + std::to_string(product_id) +
                        " does not exist");
  return tuples_[ix];
}

Subset ProductSpace::project(const Subset& a, int factor) const {
  std::vector<int> out;
  for (int id : a) out.push_back(tuple_of(id)[factor]);
  return Subset(std::move(out));
}

bool ProductSpace::product_near(const Subset& a, const Subset& b) const {
  space_->validate(a);
  space_->validate(b);
  if (a.empty() || b.empty()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (!descriptively_near(*factors_[k], project(a, static_cast<int>(k)),
                            project(b, static_cast<int>(k))))
      return false;
  }
  return true;
}

}  // namespace proxitop
