#include "perstopy/vr_complex.hpp"

#include <algorithm>

namespace perstopy {

std::optional<std::size_t> VRSkeleton2::edge_index(std::size_t u, std::size_t v) const {
  Edge e = u < v ? Edge{u, v} : Edge{v, u};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges.begin());
}

VRSkeleton2 vr_skeleton(const FiniteMetricSpace& x, double eps) {
  VRSkeleton2 k;
  k.eps = eps;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) k.vertices.push_back(i);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!within_scale(x.d(a, b), eps)) continue;
      k.edges.push_back({a, b});
      for (std::size_t c = b + 1; c < n; ++c)
        if (within_scale(x.d(a, c), eps) && within_scale(x.d(b, c), eps)) k.triangles.push_back({a, b, c});
    }
  return k;
}

VRSkeleton2 restrict_skeleton(const VRSkeleton2& k, const std::vector<std::size_t>& vertices) {
  auto in = [&](std::size_t v) { return std::binary_search(vertices.begin(), vertices.end(), v); };
  VRSkeleton2 out;
  out.eps = k.eps;
  out.vertices = vertices;
  for (const auto& e : k.edges)
    if (in(e[0]) && in(e[1])) out.edges.push_back(e);
  for (const auto& t : k.triangles)
    if (in(t[0]) && in(t[1]) && in(t[2])) out.triangles.push_back(t);
  return out;
}

}  // namespace perstopy
