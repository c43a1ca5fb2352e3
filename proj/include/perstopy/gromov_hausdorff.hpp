#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perstopy/execution.hpp"
#include "perstopy/metric.hpp"

namespace perstopy {

/// Upper limit on |Y|^|X| * |X|^|Y| map pairs; every pair of spaces up to 7 points fits.
inline constexpr double kDefaultGHBudget = 1e13;

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(long double required)
      : std::runtime_error("search budget exceeded: " + format(required) + " map pairs required"),
        required_(required) {}
  long double required() const { return required_; }

 private:
  static std::string format(long double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6Lg", v);
    return buf;
  }
  long double required_;
};

struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Every point of both sides occurs in some pair, indices in range.
bool is_correspondence(const Correspondence& r, std::size_t nx, std::size_t ny);

/// Max over pairs of pairs of |dX(i,i') - dY(j,j')|. Throws std::invalid_argument for an
/// invalid correspondence. Works for pseudo-metrics with nonzero self-distances.
double distortion(const Correspondence& r, const DistanceMatrix& x, const DistanceMatrix& y);
double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct GHResult {
  double value = 0.0;
  /// Optimal map pair: phi: X -> Y, psi: Y -> X.
  std::vector<std::size_t> phi;
  std::vector<std::size_t> psi;

  /// graph(phi) together with graph(psi) reversed.
  Correspondence correspondence() const;
};

/// Number of map pairs the unrestricted search ranges over.
long double gh_search_size(std::size_t nx, std::size_t ny);

/// Exact half-minimum over map pairs of max(dis phi, dis psi, codis). `basepoints` pins
/// phi(x0) = y0 and psi(y0) = x0. Throws BudgetExceeded.
GHResult gh_search(const DistanceMatrix& x, const DistanceMatrix& y, double budget = kDefaultGHBudget,
                   std::optional<std::pair<std::size_t, std::size_t>> basepoints = std::nullopt,
                   Execution exec = Execution::Parallel);

double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double budget = kDefaultGHBudget);
double gh_exact(const DistanceMatrix& x, const DistanceMatrix& y, double budget = kDefaultGHBudget);
double gh_pointed_exact(const PointedMetricSpace& x, const PointedMetricSpace& y, double budget = kDefaultGHBudget);

struct GHBoundsReport {
  double diam_bound = 0.0;
  double radius_bound = 0.0;
  double mu0_bound = 0.0;
  double bottleneck0_bound = 0.0;
  double bottleneck1_bound = 0.0;
  /// Bounds the pointed distance, not the unpointed one.
  double pi1_interleaving_bound = 0.0;
  std::optional<double> exact;
  std::optional<double> exact_pointed;
  /// Fields that could not be computed, e.g. "mu0_bound: budget exceeded".
  std::vector<std::string> flags;
};

/// All invariant-based lower bounds; the exact values too when `with_exact` and within budget.
GHBoundsReport gh_lower_bounds(const PointedMetricSpace& x, const PointedMetricSpace& y,
                               double budget = kDefaultGHBudget, bool with_exact = true);

}  // namespace perstopy
