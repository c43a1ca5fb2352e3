#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perstopy {

/// Tolerance used when comparing user-facing distances and results.
inline constexpr double kApiTol = 1e-9;
/// Tolerance used by metric-axiom validation and structural checks.
inline constexpr double kInternalTol = 1e-12;

/// Dense symmetric matrix of nonnegative reals.
///
/// This is the common currency between modules. It does not enforce the metric
/// axioms: loop spaces carry pseudo-ultrametrics with nonzero self-distances,
/// and Gromov-Hausdorff search accepts those as well.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), d_(n * n, fill) {}
  explicit DistanceMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

  void set_symmetric(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

  std::vector<std::vector<double>> rows() const;
  const std::vector<double>& data() const { return d_; }

  /// Largest entry (0 for the empty matrix).
  double max_entry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

enum class MetricErrorKind { NotSquare, AsymmetricMatrix, NegativeEntry, NonzeroDiagonal, TriangleViolation };

class MetricError : public std::runtime_error {
 public:
  MetricError(MetricErrorKind kind, std::string what, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::move(what)), kind_(kind), witness_(std::move(witness)) {}

  MetricErrorKind kind() const { return kind_; }
  /// Offending indices. For TriangleViolation this is (i, k, j) with d(i,j) > d(i,k) + d(k,j).
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  MetricErrorKind kind_;
  std::vector<std::size_t> witness_;
};

/// A finite metric space. Instances are immutable and always satisfy the metric axioms
/// (within kInternalTol); construct them through validate() or one of the generators.
class FiniteMetricSpace {
 public:
  std::size_t size() const { return dist_.size(); }
  double d(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const DistanceMatrix& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend FiniteMetricSpace validate(const DistanceMatrix&, std::vector<std::string>);

 private:
  FiniteMetricSpace(DistanceMatrix d, std::vector<std::string> labels)
      : dist_(std::move(d)), labels_(std::move(labels)) {}

  DistanceMatrix dist_;
  std::vector<std::string> labels_;
};

struct PointedMetricSpace {
  PointedMetricSpace(FiniteMetricSpace s, std::size_t x0);

  FiniteMetricSpace space;
  std::size_t basepoint;
};

/// Checks the metric axioms and returns the space; throws MetricError otherwise.
/// Empty labels default to "0", "1", ...
FiniteMetricSpace validate(const DistanceMatrix& m, std::vector<std::string> labels = {});
FiniteMetricSpace validate(const std::vector<std::vector<double>>& rows, std::vector<std::string> labels = {});

FiniteMetricSpace cycle_graph(int m);
/// Star graph with its center at index 0, which is also the basepoint.
PointedMetricSpace star_graph(int n);
/// n equally spaced points on the unit circle with the geodesic (arc-length) metric.
FiniteMetricSpace circle_sample(int n);
/// n points, all pairwise distances 1.
FiniteMetricSpace uniform_space(int n);

enum class TreeWeights { Unit, RandomRational };

/// Shortest-path metric of a uniformly random labeled tree (Pruefer sequence).
/// RandomRational draws edge weights from {1/4, 2/4, ..., 8/4}.
FiniteMetricSpace random_tree_metric(int n, std::uint64_t seed, TreeWeights weights = TreeWeights::Unit);

/// Random metric: integer edge weights in [1, max_weight] on the complete graph, closed under
/// shortest paths. Many ties, which is what makes Vietoris-Rips filtrations interesting.
FiniteMetricSpace random_metric(int n, std::uint64_t seed, int max_weight = 4);

/// Shortest-path closure of a weighted graph given by an adjacency matrix (negative = no edge).
FiniteMetricSpace graph_metric(const std::vector<std::vector<double>>& weights);

bool check_four_point(const FiniteMetricSpace& x);

FiniteMetricSpace linf_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y);
PointedMetricSpace wedge_sum(const PointedMetricSpace& x, const PointedMetricSpace& y);

double diam(const FiniteMetricSpace& x);
double rad(const FiniteMetricSpace& x);
double ecc(const FiniteMetricSpace& x, std::size_t i);
double diam(const DistanceMatrix& m);

bool is_eps_connected(const FiniteMetricSpace& x, double eps);
/// Indices reachable from `from` through steps of length <= eps, ascending.
std::vector<std::size_t> eps_component(const FiniteMetricSpace& x, std::size_t from, double eps);

/// 0 followed by the distinct off-diagonal distances, ascending, merged within kApiTol.
/// These are the only scales at which a Vietoris-Rips filtration can change.
std::vector<double> candidate_scales(const FiniteMetricSpace& x);

/// Index of `scale` in `scales` (within kApiTol), if present.
std::optional<std::size_t> find_scale(const std::vector<double>& scales, double scale);

/// Absolute closeness test, kApiTol by default.
inline bool approx_eq(double a, double b, double tol = kApiTol) {
  double d = a - b;
  return d <= tol && -d <= tol;
}

}  // namespace perstopy
