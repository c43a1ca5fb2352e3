#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "perstopy/homology.hpp"
#include "perstopy/interleaving.hpp"

using namespace perstopy;

namespace {

// Exhaustive bottleneck: try every partial injection from A to B; the rest go to the diagonal.
double brute_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  auto cost = [](const PersistencePoint& p, const PersistencePoint& q) {
    if (p.essential() != q.essential()) return kInfinity;
    if (p.essential()) return std::abs(p.birth - q.birth);
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
  };
  auto diag = [](const PersistencePoint& p) { return p.essential() ? kInfinity : (p.death - p.birth) / 2; };
  const auto& A = a.points;
  const auto& B = b.points;
  std::vector<bool> used(B.size(), false);
  double best = kInfinity;
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double cur) {
    if (cur >= best) return;
    if (i == A.size()) {
      double c = cur;
      for (std::size_t j = 0; j < B.size(); ++j)
        if (!used[j]) c = std::max(c, diag(B[j]));
      best = std::min(best, c);
      return;
    }
    go(i + 1, std::max(cur, diag(A[i])));
    for (std::size_t j = 0; j < B.size(); ++j)
      if (!used[j]) {
        used[j] = true;
        go(i + 1, std::max(cur, cost(A[i], B[j])));
        used[j] = false;
      }
  };
  go(0, 0.0);
  return best;
}

PersistenceDiagram random_diagram(std::mt19937& rng, std::size_t max_points, bool essential) {
  std::uniform_int_distribution<int> count(0, static_cast<int>(max_points));
  std::uniform_int_distribution<int> coord(0, 8);
  PersistenceDiagram d;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    double b = coord(rng) / 2.0, l = coord(rng) / 2.0;
    d.points.push_back({b, essential && i == 0 ? kInfinity : b + l});
  }
  return d;
}

}  // namespace

TEST_CASE("bottleneck examples") {
  const double pi = std::numbers::pi;
  PersistenceDiagram d3{}, d4{{{pi / 2, pi}}};
  CHECK(bottleneck(d3, d4) == doctest::Approx(pi / 4));
  CHECK(bottleneck(d4, d4) == 0);
  for (double e : {0.5, 2.0}) {
    PersistenceDiagram a{{{0, 1 + e}, {0, kInfinity}}}, b{{{0, 1}, {0, kInfinity}}};
    CHECK(bottleneck(a, b) == doctest::Approx(std::min(e, (1 + e) / 2)));
  }
  PersistenceDiagram one{{{0, kInfinity}}}, two{{{0, kInfinity}, {1, kInfinity}}};
  CHECK(bottleneck(one, two) == kInfinity);
}

TEST_CASE("bottleneck agrees with exhaustive matching") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    bool ess = trial % 3 == 0;
    auto a = random_diagram(rng, 4, ess);
    auto b = random_diagram(rng, 4, ess && !a.points.empty());
    double got = bottleneck(a, b), want = brute_bottleneck(a, b);
    if (std::isinf(want))
      CHECK(std::isinf(got));
    else
      CHECK(got == doctest::Approx(want));
    CHECK(bottleneck(a, b) == bottleneck(b, a));
  }
}

TEST_CASE("bottleneck triangle inequality") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_diagram(rng, 5, false), b = random_diagram(rng, 5, false), c = random_diagram(rng, 5, false);
    CHECK(bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-12);
  }
}

TEST_CASE("retract table") {
  auto F = GroupClass::free_group;
  auto A = GroupClass::free_abelian_group;
  CHECK(retracts_through(GroupClass::trivial(), F(3)));
  CHECK(retracts_through(F(1), F(2)));
  CHECK_FALSE(retracts_through(F(2), F(1)));
  CHECK(retracts_through(A(2), A(3)));
  CHECK(retracts_through(F(1), A(2)));
  CHECK_FALSE(retracts_through(F(2), A(2)));
  CHECK_FALSE(retracts_through(A(2), F(2)));
  CHECK_FALSE(retracts_through(F(1), GroupClass::trivial()));
  GroupClass u{GroupTag::Unclassified, 1, {}};
  CHECK_THROWS_AS(retracts_through(u, F(1)), std::invalid_argument);
}

TEST_CASE("interval group interleaving") {
  const double pi = std::numbers::pi;
  auto torus = IntervalPersistentGroup{GroupClass::free_abelian_group(2), 0, 2 * pi / 3};
  auto wedge = IntervalPersistentGroup{GroupClass::free_group(2), 0, 2 * pi / 3};
  CHECK(interleaving_interval_groups(torus, wedge) == doctest::Approx(pi / 3));
  CHECK(interleaving_interval_groups(torus, torus) == 0);
  auto z = IntervalPersistentGroup{GroupClass::free_group(1), 1, 3};
  auto empty = IntervalPersistentGroup{GroupClass::trivial(), 0, 0};
  CHECK(interleaving_interval_groups(z, empty) == doctest::Approx(1));
  CHECK(interleaving_interval_groups(empty, z) == doctest::Approx(1));
  // Isomorphic groups reduce to the interval-module formula.
  auto z2 = IntervalPersistentGroup{GroupClass::free_group(1), 1.5, 4};
  CHECK(interleaving_interval_groups(z, z2) == doctest::Approx(std::min(1.0, std::max(1.0, 1.25))));
}

TEST_CASE("dendrograms") {
  auto e3 = dendrogram_from_ultrametric(uniform_space(3).matrix());
  CHECK(e3.scales == std::vector<double>{0, 1});
  CHECK(e3.blocks[0].size() == 3);
  CHECK(e3.blocks[1] == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  auto c5 = dendrogram_from_ultrametric(mu0_ultrametric(cycle_graph(5)));
  CHECK(c5.blocks.back().size() == 1);
  CHECK(c5.scales.back() == 1);
  auto one = dendrogram_from_ultrametric(uniform_space(1).matrix());
  CHECK(one.blocks == std::vector<std::vector<std::vector<std::size_t>>>{{{0}}});
  CHECK_THROWS(dendrogram_from_ultrametric(cycle_graph(5).matrix()));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto u = mu0_ultrametric(random_metric(6, seed));
    CHECK(dendrogram_from_ultrametric(u).induced().data() == u.data());
  }
  auto e2 = dendrogram_from_ultrametric(uniform_space(2).matrix());
  CHECK(dendrogram_module_interleaving(e2, e3) == doctest::Approx(0.5));
  CHECK(dendrogram_module_interleaving(e3, e3) == 0);
}
