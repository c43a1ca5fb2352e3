#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "perstopy/metric.hpp"

namespace perstopy {

using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Closed Vietoris-Rips 2-skeleton: simplices of diameter <= eps (within kApiTol).
struct VRSkeleton2 {
  double eps = 0.0;
  std::vector<std::size_t> vertices;
  /// u < v, lexicographic.
  std::vector<Edge> edges;
  /// a < b < c, lexicographic.
  std::vector<Triangle> triangles;

  /// Position of edge {u,v} in `edges`.
  std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const;
};

inline bool within_scale(double d, double eps) { return d <= eps + kApiTol; }

VRSkeleton2 vr_skeleton(const FiniteMetricSpace& x, double eps);

/// Full subcomplex on the given (ascending) vertex subset.
VRSkeleton2 restrict_skeleton(const VRSkeleton2& k, const std::vector<std::size_t>& vertices);

}  // namespace perstopy
