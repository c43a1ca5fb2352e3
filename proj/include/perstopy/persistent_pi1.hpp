#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "perstopy/execution.hpp"
#include "perstopy/group.hpp"
#include "perstopy/metric.hpp"
#include "perstopy/vr_complex.hpp"

namespace perstopy {

/// Edge-path group of a VR 2-skeleton at a basepoint, presented through a BFS spanning tree.
struct EdgePathPresentation {
  GroupPresentation presentation;
  std::size_t basepoint = 0;
  /// Vertices of the basepoint's component, ascending.
  std::vector<std::size_t> component;
  /// BFS parent per point of the ambient space; -1 for the root and points outside the component.
  std::vector<long> parent;
  /// Generator g is the non-tree edge generator_edges[g], oriented low -> high.
  std::vector<Edge> generator_edges;

  bool contains(std::size_t v) const;
  /// Letter of the oriented edge u -> v: empty for tree edges and for u == v.
  /// Throws std::invalid_argument if {u,v} is not an edge of the component.
  Word edge_word(std::size_t u, std::size_t v) const;
  /// Word of an edge loop (or edge path) given as a point sequence.
  Word path_word(const std::vector<std::size_t>& points) const;
  /// Tree path from the basepoint to v, both ends included.
  std::vector<std::size_t> tree_path(std::size_t v) const;

 private:
  friend EdgePathPresentation edge_path_presentation(const VRSkeleton2&, std::size_t);
  // Dense lookup: generator index + 1 of edge (u,v), 0 for tree edges, -1 for non-edges.
  std::vector<int> edge_gen_;
  std::size_t n_ = 0;
};

EdgePathPresentation edge_path_presentation(const VRSkeleton2& k, std::size_t x0);

/// Everything computed at one scale.
struct Pi1Level {
  double scale = 0.0;
  VRSkeleton2 skeleton;
  EdgePathPresentation raw;
  Simplification simplified;
  GroupClass cls;
  /// Raw generator g -> raw word at the next level; empty at the last level.
  std::vector<Word> generator_images;
};

Pi1Level pi1_at_scale(const PointedMetricSpace& x, double eps, int effort = kDefaultTietzeEffort);

struct PersistentPi1 {
  std::size_t basepoint = 0;
  std::vector<double> scales;
  std::vector<Pi1Level> levels;

  /// Throws std::out_of_range if eps is not a candidate scale.
  std::size_t level_of(double eps) const;
};

/// One level per candidate scale (0 and every distinct pairwise distance).
PersistentPi1 persistent_pi1(const PointedMetricSpace& x, int effort = kDefaultTietzeEffort,
                             Execution exec = Execution::Parallel);

/// Image under the inclusion-induced map, for raw words (edge-path generators).
Word structure_map_image_raw(const PersistentPi1& pp, double eps, double eps2, const Word& raw);
/// Image under the inclusion-induced map, for words in the simplified generators.
Word structure_map_image(const PersistentPi1& pp, double eps, double eps2, const Word& w);

enum class CriticalVerdict { Critical, NonCritical, Undetermined };
const char* critical_name(CriticalVerdict v);

struct CriticalValue {
  double scale;
  CriticalVerdict verdict;
};

/// Verdict per candidate scale, comparing each level with the previous one. Scale 0 has
/// nothing before it and is reported NonCritical.
std::vector<CriticalValue> detect_critical_values(const PersistentPi1& pp);

/// True iff the subgroup of the free group F_rank generated by `images` is all of F_rank
/// (Stallings folding).
bool generates_free_group(const std::vector<Word>& images, int rank);

}  // namespace perstopy
