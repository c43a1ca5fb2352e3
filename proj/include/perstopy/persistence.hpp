#pragma once

#include <limits>
#include <vector>

namespace perstopy {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePoint {
  double birth;
  double death;  // kInfinity for essential classes

  bool essential() const { return death == kInfinity; }
  bool operator==(const PersistencePoint&) const = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;

  /// Points ordered by (birth, death).
  PersistenceDiagram sorted() const;
  bool operator==(const PersistenceDiagram&) const = default;
};

/// Exact bottleneck distance (L-infinity ground metric, diagonal allowed). Essential points
/// must match essential points; unequal essential counts give kInfinity.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

}  // namespace perstopy
