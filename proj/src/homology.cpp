#include "perstopy/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "perstopy/persistent_pi1.hpp"

namespace perstopy {

using Rational = boost::multiprecision::cpp_rational;

namespace {

std::size_t ambient_size(const VRSkeleton2& k) {
  std::size_t n = 0;
  for (auto v : k.vertices) n = std::max(n, v + 1);
  return n;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
};

struct WeightedEdge {
  double w;
  std::size_t u, v;
};

std::vector<WeightedEdge> sorted_edges(const FiniteMetricSpace& x) {
  std::vector<WeightedEdge> edges;
  for (std::size_t u = 0; u < x.size(); ++u)
    for (std::size_t v = u + 1; v < x.size(); ++v) edges.push_back({x.d(u, v), u, v});
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.w < b.w; });
  return edges;
}

}  // namespace

ChainComplex2 chain_complex(const VRSkeleton2& k) {
  ChainComplex2 c;
  c.boundary1 = IntMatrix(k.edges.size(), ambient_size(k));
  for (std::size_t i = 0; i < k.edges.size(); ++i) {
    c.boundary1(i, k.edges[i][0]) = -1;
    c.boundary1(i, k.edges[i][1]) = 1;
  }
  c.boundary2 = IntMatrix(k.triangles.size(), k.edges.size());
  for (std::size_t i = 0; i < k.triangles.size(); ++i) {
    const auto& t = k.triangles[i];
    c.boundary2(i, *k.edge_index(t[1], t[2])) = 1;
    c.boundary2(i, *k.edge_index(t[0], t[2])) = -1;
    c.boundary2(i, *k.edge_index(t[0], t[1])) = 1;
  }
  return c;
}

AbelianInvariants h1_integer(const VRSkeleton2& k) {
  auto c = chain_complex(k);
  const auto r1 = integer_rank(c.boundary1);
  auto d2 = smith_diagonal(c.boundary2);
  AbelianInvariants out;
  out.rank = static_cast<int>(k.edges.size() - r1 - d2.size());
  for (const auto& v : d2)
    if (v > 1) out.torsion.push_back(v);
  return out;
}

DistanceMatrix mu0_ultrametric(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  DistanceMatrix u(n);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  UnionFind uf(n);
  for (const auto& e : sorted_edges(x)) {
    auto a = uf.find(e.u), b = uf.find(e.v);
    if (a == b) continue;
    for (auto i : members[a])
      for (auto j : members[b]) u.set_symmetric(i, j, e.w);
    uf.parent[b] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
  }
  return u;
}

PersistenceDiagram ph0_diagram(const FiniteMetricSpace& x) {
  PersistenceDiagram d;
  if (x.size() == 0) return d;
  UnionFind uf(x.size());
  for (const auto& e : sorted_edges(x)) {
    auto a = uf.find(e.u), b = uf.find(e.v);
    if (a == b) continue;
    uf.parent[b] = a;
    d.points.push_back({0.0, e.w});
  }
  d.points.push_back({0.0, kInfinity});
  return d;
}

PersistenceDiagram ph1_diagram(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  // Edges and triangles in filtration order: value, then lexicographic.
  auto k = vr_skeleton(x, diam(x));
  auto edge_value = [&](const Edge& e) { return x.d(e[0], e[1]); };
  auto tri_value = [&](const Triangle& t) {
    return std::max({x.d(t[0], t[1]), x.d(t[0], t[2]), x.d(t[1], t[2])});
  };
  std::vector<std::size_t> eorder(k.edges.size()), torder(k.triangles.size());
  std::iota(eorder.begin(), eorder.end(), 0);
  std::iota(torder.begin(), torder.end(), 0);
  std::stable_sort(eorder.begin(), eorder.end(),
                   [&](auto a, auto b) { return edge_value(k.edges[a]) < edge_value(k.edges[b]); });
  std::stable_sort(torder.begin(), torder.end(),
                   [&](auto a, auto b) { return tri_value(k.triangles[a]) < tri_value(k.triangles[b]); });
  std::vector<std::size_t> erank(k.edges.size());
  for (std::size_t r = 0; r < eorder.size(); ++r) erank[eorder[r]] = r;

  // Positive edges create 1-cycles; over a field this is exactly the union-find test.
  std::vector<bool> positive(k.edges.size(), false);
  UnionFind uf(n);
  for (auto e : eorder) {
    auto a = uf.find(k.edges[e][0]), b = uf.find(k.edges[e][1]);
    if (a == b)
      positive[e] = true;
    else
      uf.parent[b] = a;
  }

  using Column = std::map<std::size_t, Rational>;  // edge filtration rank -> coefficient
  std::map<std::size_t, Column> pivot_column;      // low -> reduced column
  std::vector<bool> paired(k.edges.size(), false);
  PersistenceDiagram d;
  for (auto t : torder) {
    const auto& tri = k.triangles[t];
    Column col;
    col[erank[*k.edge_index(tri[1], tri[2])]] += 1;
    col[erank[*k.edge_index(tri[0], tri[2])]] -= 1;
    col[erank[*k.edge_index(tri[0], tri[1])]] += 1;
    while (!col.empty()) {
      auto low = col.rbegin()->first;
      auto it = pivot_column.find(low);
      if (it == pivot_column.end()) break;
      Rational f = col.rbegin()->second / it->second.at(low);
      for (const auto& [row, v] : it->second) {
        auto& slot = col[row];
        slot -= f * v;
        if (slot == 0) col.erase(row);
      }
    }
    if (col.empty()) continue;
    auto low = col.rbegin()->first;
    std::size_t e = eorder[low];
    paired[e] = true;
    double birth = edge_value(k.edges[e]);
    double death = tri_value(tri);
    if (death > birth + kApiTol) d.points.push_back({birth, death});
    pivot_column.emplace(low, std::move(col));
  }
  for (std::size_t e = 0; e < k.edges.size(); ++e)
    if (positive[e] && !paired[e]) d.points.push_back({edge_value(k.edges[e]), kInfinity});
  return d.sorted();
}

bool hurewicz_check(const PointedMetricSpace& x, double eps) {
  auto k = vr_skeleton(x.space, eps);
  auto p = edge_path_presentation(k, x.basepoint);
  auto comp = restrict_skeleton(k, p.component);
  return abelianization(p.presentation) == h1_integer(comp);
}

}  // namespace perstopy
