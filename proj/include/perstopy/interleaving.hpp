#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perstopy/group.hpp"
#include "perstopy/metric.hpp"
#include "perstopy/persistence.hpp"
#include "perstopy/persistent_pi1.hpp"

namespace perstopy {

/// A group G supported on an interval of scales, zero elsewhere, with identity structure maps.
struct IntervalPersistentGroup {
  GroupClass group;
  double left = 0.0;
  double right = 0.0;
  bool open_left = false;
  bool open_right = true;

  /// Trivial groups carry the empty interval.
  IntervalPersistentGroup normalized() const;
  double length() const { return right - left; }
};

/// Whether G is a retract of H (G -> H -> G composing to the identity), within the catalog
/// {Trivial, Free(k), FreeAbelian(k)}. Throws std::invalid_argument for Unclassified.
bool retracts_through(const GroupClass& g, const GroupClass& h);

/// Interleaving distance between two interval persistent groups from the catalog.
double interleaving_interval_groups(const IntervalPersistentGroup& p, const IntervalPersistentGroup& q);

/// The persistent group as a single interval [first, end) if it is one: nontrivial levels are
/// consecutive, share a catalog class, and every map between them is certified bijective.
std::optional<IntervalPersistentGroup> as_interval_group(const PersistentPi1& pp);

/// Blocks at each scale of the ultrametric's distinct values (0 first).
struct Dendrogram {
  std::size_t size = 0;
  std::vector<double> scales;
  /// blocks[s] partitions {0..size-1}; each block ascending, blocks ordered by first element.
  std::vector<std::vector<std::vector<std::size_t>>> blocks;

  /// The ultrametric: smallest scale at which i and j share a block.
  DistanceMatrix induced() const;
};

/// Throws std::invalid_argument unless `u` is a (pseudo-)ultrametric: symmetric, nonnegative,
/// zero diagonal, strong triangle inequality within kApiTol.
Dendrogram dendrogram_from_ultrametric(const DistanceMatrix& u);

/// H_0-style barcode: (0, s) per merge at scale s, (0, inf) per final block.
PersistenceDiagram dendrogram_barcode(const Dendrogram& d);

double dendrogram_module_interleaving(const Dendrogram& a, const Dendrogram& b);

}  // namespace perstopy
