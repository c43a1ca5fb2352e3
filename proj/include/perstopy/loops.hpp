#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "perstopy/metric.hpp"
#include "perstopy/persistence.hpp"
#include "perstopy/persistent_pi1.hpp"

namespace perstopy {

/// A based discrete loop. Stored canonically: consecutive repeats are collapsed, so the loop
/// x0 x0 and the constant loop {x0} coincide. Repeats are removable by basic moves at any
/// scale, hence canonicalization never changes the homotopy class or the birth.
class DiscreteLoop {
 public:
  /// Throws std::invalid_argument unless nonempty with equal endpoints.
  explicit DiscreteLoop(std::vector<std::size_t> points);
  static DiscreteLoop constant(std::size_t x0) { return DiscreteLoop({x0}); }

  const std::vector<std::size_t>& points() const { return points_; }
  std::size_t basepoint() const { return points_.front(); }
  std::size_t size() const { return points_.size() - 1; }

  DiscreteLoop reversed() const;
  /// Loop concatenation (same basepoint required).
  DiscreteLoop operator*(const DiscreteLoop& other) const;

  auto operator<=>(const DiscreteLoop&) const = default;
  bool operator==(const DiscreteLoop&) const = default;

 private:
  std::vector<std::size_t> points_;
};

/// Shortlex order: shorter first, then lexicographic.
bool shortlex_less(const DiscreteLoop& a, const DiscreteLoop& b);

/// Max adjacent distance; 0 for the constant loop.
double birth(const DiscreteLoop& g, const FiniteMetricSpace& x);
bool is_eps_loop(const DiscreteLoop& g, const FiniteMetricSpace& x, double eps);

/// All distinct loops one basic move away, excluding g. A move deletes or inserts one interior
/// point of some representative of g, stuttered ones included, so u w u <-> u is a move.
/// Throws std::invalid_argument if g is not an eps-loop.
std::vector<DiscreteLoop> basic_moves(const DiscreteLoop& g, double eps, const FiniteMetricSpace& x);

enum class Homotopy { Yes, No, Unknown };
const char* homotopy_name(Homotopy h);

struct BruteforceOutcome {
  Homotopy verdict = Homotopy::Unknown;
  /// A No verdict means no eps-homotopy through loops of size <= cap exists.
  std::size_t cap = 0;
  std::size_t states = 0;
};

inline constexpr std::size_t kDefaultMaxStates = 1'000'000;

/// Bidirectional search over eps-loops of size <= max_size under basic moves.
/// max_size = 0 selects max(size a, size b) + |X|.
BruteforceOutcome homotopic_bruteforce(const DiscreteLoop& a, const DiscreteLoop& b, double eps,
                                       const FiniteMetricSpace& x, std::size_t max_size = 0,
                                       std::size_t max_states = kDefaultMaxStates);

/// Connected components of the basic-move graph on all eps-loops at x0 of size <= cap.
struct LoopComponents {
  std::vector<DiscreteLoop> loops;  // shortlex order
  std::vector<std::size_t> component;
  std::size_t cap = 0;

  std::optional<std::size_t> index_of(const DiscreteLoop& g) const;
};

LoopComponents loop_components(const FiniteMetricSpace& x, std::size_t x0, double eps, std::size_t cap);

/// Stutter-free loops at x0 of size <= max_size whose steps are all <= eps, in shortlex order.
std::vector<DiscreteLoop> all_loops(const FiniteMetricSpace& x, std::size_t x0, std::size_t max_size,
                                    double eps = kInfinity);

/// Edge-path group of VR_eps at the basepoint, applied to loops.
class LoopGroupAtScale {
 public:
  LoopGroupAtScale(const PointedMetricSpace& x, double eps, int effort = kDefaultTietzeEffort);
  explicit LoopGroupAtScale(Pi1Level level) : level_(std::make_shared<const Pi1Level>(std::move(level))) {}

  const Pi1Level& level() const { return *level_; }
  double scale() const { return level_->scale; }

  /// Word in the raw edge-path generators. Throws std::invalid_argument for non-eps-loops.
  Word raw_word(const DiscreteLoop& g) const;
  /// Word in the simplified generators.
  Word word(const DiscreteLoop& g) const;
  WordVerdict is_trivial(const Word& simplified) const;
  Homotopy homotopic(const DiscreteLoop& a, const DiscreteLoop& b) const;

 private:
  std::shared_ptr<const Pi1Level> level_;
};

Homotopy homotopic_via_pi1(const DiscreteLoop& a, const DiscreteLoop& b, double eps, const PointedMetricSpace& x);

/// Shared per-scale groups for repeated loop queries on one space.
class LoopSpace {
 public:
  explicit LoopSpace(const PointedMetricSpace& x, int effort = kDefaultTietzeEffort);

  const PointedMetricSpace& space() const { return x_; }
  const std::vector<double>& scales() const { return pp_.scales; }
  const PersistentPi1& pi1() const { return pp_; }
  const LoopGroupAtScale& at(std::size_t scale_index) const { return groups_.at(scale_index); }
  /// Index of the smallest candidate scale >= s.
  std::size_t first_scale_at_least(double s) const;

  /// Smallest candidate scale >= both births at which a and b are homotopic; nullopt when a
  /// needed verdict is Unknown.
  std::optional<double> mu1(const DiscreteLoop& a, const DiscreteLoop& b) const;
  Homotopy homotopic(const DiscreteLoop& a, const DiscreteLoop& b, std::size_t scale_index) const;

 private:
  PointedMetricSpace x_;
  PersistentPi1 pp_;
  std::vector<LoopGroupAtScale> groups_;
};

std::optional<double> mu1(const DiscreteLoop& a, const DiscreteLoop& b, const PointedMetricSpace& x);
std::optional<double> death(const DiscreteLoop& g, const PointedMetricSpace& x);

struct LoopClass {
  DiscreteLoop representative;
  double birth;
  /// Some homotopy verdict at the birth scale was Unknown; the class may duplicate another.
  bool flagged = false;
};

/// Classes of (same birth, homotopic at that birth) among loops of size <= max_size, with
/// shortlex-least representatives, ordered by representative. max_size 0 means 2 |X|.
std::vector<LoopClass> enumerate_L(const LoopSpace& ls, std::size_t max_size = 0);
std::vector<LoopClass> enumerate_L(const PointedMetricSpace& x, std::size_t max_size = 0);

struct GSubdendrogram {
  std::vector<double> scales;
  std::vector<LoopClass> representatives;
  /// blocks[s]: partition of the representatives born by scales[s], as index lists.
  std::vector<std::vector<std::vector<std::size_t>>> blocks;
  bool flagged = false;

  /// Pseudo-ultrametric: smallest scale at which a and b share a block; u(a,a) = birth(a).
  DistanceMatrix induced() const;
};

GSubdendrogram generalized_subdendrogram(const LoopSpace& ls, std::size_t max_size);
GSubdendrogram generalized_subdendrogram(const PointedMetricSpace& x, std::size_t max_size);

/// mu1 on representatives; Unknown entries are reported as nullopt.
std::vector<std::vector<std::optional<double>>> mu1_matrix(const LoopSpace& ls,
                                                           const std::vector<LoopClass>& reps);

}  // namespace perstopy
