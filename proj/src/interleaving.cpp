#include "perstopy/interleaving.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perstopy {

IntervalPersistentGroup IntervalPersistentGroup::normalized() const {
  IntervalPersistentGroup out = *this;
  if (group.tag == GroupTag::Free) out.group = GroupClass::free_group(group.rank);
  if (group.tag == GroupTag::FreeAbelian) out.group = GroupClass::free_abelian_group(group.rank);
  if (out.group.tag == GroupTag::Trivial || right <= left) {
    out.group = GroupClass::trivial();
    out.right = out.left;
  }
  return out;
}

bool retracts_through(const GroupClass& g0, const GroupClass& h0) {
  if (g0.tag == GroupTag::Unclassified || h0.tag == GroupTag::Unclassified)
    throw std::invalid_argument("group outside the interleaving catalog");
  auto norm = [](const GroupClass& c) {
    if (c.tag == GroupTag::Free) return GroupClass::free_group(c.rank);
    if (c.tag == GroupTag::FreeAbelian) return GroupClass::free_abelian_group(c.rank);
    return c;
  };
  auto g = norm(g0), h = norm(h0);
  if (g.tag == GroupTag::Trivial) return true;
  if (h.tag == GroupTag::Trivial) return false;
  if (g.tag == h.tag) return g.rank <= h.rank;
  if (g.tag == GroupTag::Free && h.tag == GroupTag::FreeAbelian) return g.rank <= 1 && h.rank >= g.rank;
  return false;
}

double interleaving_interval_groups(const IntervalPersistentGroup& p0, const IntervalPersistentGroup& q0) {
  auto p = p0.normalized(), q = q0.normalized();
  const double a = p.left, b = p.right, c = q.left, d = q.right;
  const double hp = (b - a) / 2, hq = (d - c) / 2;
  const bool pq = retracts_through(p.group, q.group);
  const bool qp = retracts_through(q.group, p.group);
  if (pq && qp) return std::min(std::max(std::abs(a - c), std::abs(b - d)), std::max(hp, hq));
  if (pq) return std::max(hq, std::min(hp, std::max({c - a, b - d, 0.0})));
  if (qp) return std::max(hp, std::min(hq, std::max({a - c, d - b, 0.0})));
  return std::max(hp, hq);
}

std::optional<IntervalPersistentGroup> as_interval_group(const PersistentPi1& pp) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < pp.levels.size(); ++i)
    if (pp.levels[i].cls.tag != GroupTag::Trivial) live.push_back(i);
  IntervalPersistentGroup out;
  if (live.empty()) return out;
  const std::size_t first = live.front(), last = live.back();
  if (last - first + 1 != live.size() || last + 1 >= pp.levels.size()) return std::nullopt;
  const auto& cls = pp.levels[first].cls;
  if (cls.tag == GroupTag::Unclassified) return std::nullopt;
  auto crit = detect_critical_values(pp);
  for (std::size_t i = first + 1; i <= last; ++i)
    if (!(pp.levels[i].cls == cls) || crit[i].verdict != CriticalVerdict::NonCritical) return std::nullopt;
  out.group = cls;
  out.left = pp.scales[first];
  out.right = pp.scales[last + 1];
  return out;
}

DistanceMatrix Dendrogram::induced() const {
  DistanceMatrix u(size);
  // Walk scales downwards so the first (smallest) shared scale wins.
  for (std::size_t s = scales.size(); s-- > 0;)
    for (const auto& block : blocks[s])
      for (auto i : block)
        for (auto j : block)
          if (i != j) u(i, j) = scales[s];
  return u;
}

Dendrogram dendrogram_from_ultrametric(const DistanceMatrix& u) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(u(i, i)) > kApiTol) throw std::invalid_argument("not an ultrametric: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (u(i, j) < -kApiTol || std::abs(u(i, j) - u(j, i)) > kApiTol)
        throw std::invalid_argument("not an ultrametric: entries must be symmetric and nonnegative");
      for (std::size_t k = 0; k < n; ++k)
        if (u(i, j) > std::max(u(i, k), u(k, j)) + kApiTol)
          throw std::invalid_argument("not an ultrametric: strong triangle inequality fails");
    }
  }
  Dendrogram d;
  d.size = n;
  std::vector<double> vals{0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) vals.push_back(u(i, j));
  std::sort(vals.begin(), vals.end());
  for (double v : vals)
    if (d.scales.empty() || v > d.scales.back() + kApiTol) d.scales.push_back(v);
  for (double t : d.scales) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> block;
      for (std::size_t j = i; j < n; ++j)
        if (!used[j] && (j == i || u(i, j) <= t + kApiTol)) {
          used[j] = true;
          block.push_back(j);
        }
      blocks.push_back(std::move(block));
    }
    d.blocks.push_back(std::move(blocks));
  }
  return d;
}

PersistenceDiagram dendrogram_barcode(const Dendrogram& d) {
  PersistenceDiagram out;
  if (d.size == 0) return out;
  std::size_t count = d.size;
  for (std::size_t s = 0; s < d.scales.size(); ++s) {
    std::size_t now = d.blocks[s].size();
    for (std::size_t k = now; k < count; ++k)
      if (d.scales[s] > 0) out.points.push_back({0.0, d.scales[s]});
    count = now;
  }
  for (std::size_t k = 0; k < count; ++k) out.points.push_back({0.0, kInfinity});
  return out;
}

double dendrogram_module_interleaving(const Dendrogram& a, const Dendrogram& b) {
  return bottleneck(dendrogram_barcode(a), dendrogram_barcode(b));
}

}  // namespace perstopy
