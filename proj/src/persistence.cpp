#include "perstopy/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace perstopy {

PersistenceDiagram PersistenceDiagram::sorted() const {
  PersistenceDiagram out = *this;
  std::sort(out.points.begin(), out.points.end(), [](const PersistencePoint& p, const PersistencePoint& q) {
    return p.birth != q.birth ? p.birth < q.birth : p.death < q.death;
  });
  return out;
}

namespace {

double pair_cost(const PersistencePoint& p, const PersistencePoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double diag_cost(const PersistencePoint& p) { return (p.death - p.birth) / 2; }

// Perfect matching on the augmented bipartite graph: left = A + diag(B), right = B + diag(A).
bool feasible(const std::vector<PersistencePoint>& a, const std::vector<PersistencePoint>& b, double delta) {
  const std::size_t n = a.size(), m = b.size(), total = n + m;
  std::vector<std::vector<std::size_t>> adj(total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (pair_cost(a[i], b[j]) <= delta) adj[i].push_back(j);
    if (diag_cost(a[i]) <= delta) adj[i].push_back(m + i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (diag_cost(b[j]) <= delta) adj[n + j].push_back(j);
    for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
  }
  std::vector<long> match_right(total, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < total; ++u) {
    seen.assign(total, 0);
    if (!augment(u)) return false;
  }
  return true;
}

}  // namespace

double bottleneck(const PersistenceDiagram& da, const PersistenceDiagram& db) {
  std::vector<PersistencePoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : da.points) (p.essential() ? ea.push_back(p.birth) : fa.push_back(p));
  for (const auto& p : db.points) (p.essential() ? eb.push_back(p.birth) : fb.push_back(p));
  if (ea.size() != eb.size()) return kInfinity;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<double> cand{0.0};
  for (const auto& p : fa) {
    cand.push_back(diag_cost(p));
    for (const auto& q : fb) cand.push_back(pair_cost(p, q));
  }
  for (const auto& q : fb) cand.push_back(diag_cost(q));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(fa, fb, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(essential, cand[lo]);
}

}  // namespace perstopy
