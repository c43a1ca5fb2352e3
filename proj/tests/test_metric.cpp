#include <doctest.h>

#include <cmath>
#include <numbers>

#include "perstopy/metric.hpp"

using namespace perstopy;

namespace {

// Independent check of all metric axioms by brute force over triples.
bool axioms_hold(const FiniteMetricSpace& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.d(i, i) != 0.0) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x.d(i, j) < 0 || x.d(i, j) != x.d(j, i)) return false;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x.d(i, k) > x.d(i, j) + x.d(j, k) + 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("validate accepts a two-point space") {
  auto x = validate(std::vector<std::vector<double>>{{0, 1}, {1, 0}});
  CHECK(x.size() == 2);
  CHECK(x.d(0, 1) == 1.0);
  CHECK(x.labels()[1] == "1");
}

TEST_CASE("validate reports the triangle witness") {
  try {
    validate(std::vector<std::vector<double>>{{0, 3, 1}, {3, 0, 1}, {1, 1, 0}});
    FAIL("expected TriangleViolation");
  } catch (const MetricError& e) {
    CHECK(e.kind() == MetricErrorKind::TriangleViolation);
    CHECK(e.witness() == std::vector<std::size_t>{0, 2, 1});
  }
}

TEST_CASE("validate error kinds") {
  auto kind = [](std::vector<std::vector<double>> m) {
    try {
      validate(m);
    } catch (const MetricError& e) {
      return e.kind();
    }
    FAIL("no error");
    return MetricErrorKind::NotSquare;
  };
  CHECK(kind({{0, 1}, {2, 0}}) == MetricErrorKind::AsymmetricMatrix);
  CHECK(kind({{0, -1}, {-1, 0}}) == MetricErrorKind::NegativeEntry);
  CHECK(kind({{1, 1}, {1, 0}}) == MetricErrorKind::NonzeroDiagonal);
  CHECK(kind({{0, 1}, {1}}) == MetricErrorKind::NotSquare);
}

TEST_CASE("cycle graphs") {
  auto c4 = cycle_graph(4);
  CHECK(c4.d(0, 2) == 2);
  CHECK(diam(c4) == 2);
  auto c3 = cycle_graph(3);
  CHECK(c3.d(0, 1) == 1);
  CHECK(c3.d(0, 2) == 1);
  CHECK(cycle_graph(7).d(1, 5) == 3);
  CHECK(diam(cycle_graph(7)) == 3);
  CHECK(axioms_hold(cycle_graph(5)));
  CHECK_THROWS(cycle_graph(2));
}

TEST_CASE("star graphs") {
  auto s4 = star_graph(4);
  CHECK(s4.basepoint == 0);
  CHECK(s4.space.d(1, 3) == 2);
  CHECK(s4.space.d(0, 3) == 1);
  auto s3 = star_graph(3);
  CHECK(diam(s3.space) == 2);
  CHECK(rad(s3.space) == 1);
  CHECK(ecc(star_graph(6).space, 3) == 2);
  CHECK(rad(star_graph(5).space) == 1);
  CHECK_THROWS(star_graph(2));
}

TEST_CASE("circle samples match scaled cycles") {
  const double pi = std::numbers::pi;
  CHECK(circle_sample(4).d(0, 2) == doctest::Approx(pi));
  CHECK(circle_sample(3).d(0, 1) == doctest::Approx(2 * pi / 3));
  CHECK(circle_sample(6).d(0, 2) == doctest::Approx(2 * pi / 3));
  for (int n = 3; n <= 12; ++n) {
    auto c = cycle_graph(n);
    auto s = circle_sample(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(std::abs(c.d(i, j) * 2 * pi / n - s.d(i, j)) <= 1e-12);
  }
}

TEST_CASE("uniform spaces") {
  CHECK(uniform_space(1).size() == 1);
  auto e3 = uniform_space(3);
  CHECK(e3.d(0, 1) == 1);
  CHECK(e3.d(1, 2) == 1);
  CHECK(ecc(e3, 0) == 1);
  CHECK_THROWS(uniform_space(0));
}

TEST_CASE("random trees satisfy the four-point condition") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (auto w : {TreeWeights::Unit, TreeWeights::RandomRational}) {
      auto t = random_tree_metric(2 + static_cast<int>(seed % 8), seed, w);
      CHECK(axioms_hold(t));
      CHECK(check_four_point(t));
    }
  }
  CHECK(random_tree_metric(2, 3).d(0, 1) > 0);
  CHECK(check_four_point(star_graph(5).space));
  CHECK_FALSE(check_four_point(cycle_graph(4)));
  for (int m = 4; m <= 9; ++m) CHECK_FALSE(check_four_point(cycle_graph(m)));
  CHECK(check_four_point(uniform_space(1)));
}

TEST_CASE("graph metric of a weighted path") {
  auto p = graph_metric({{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}});
  CHECK(p.d(0, 2) == 2);
}

TEST_CASE("random metrics are valid and deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = random_metric(6, seed);
    auto b = random_metric(6, seed);
    CHECK(axioms_hold(a));
    CHECK(a.matrix().data() == b.matrix().data());
  }
}

TEST_CASE("l-infinity products") {
  auto c3 = cycle_graph(3);
  auto p = linf_product(c3, c3);
  CHECK(p.size() == 9);
  CHECK(diam(p) == 1);
  auto one = uniform_space(1);
  auto q = linf_product(cycle_graph(5), one);
  CHECK(q.matrix().data() == cycle_graph(5).matrix().data());
  auto r = linf_product(cycle_graph(4), cycle_graph(6));
  CHECK(r.d(0, 2 * 6 + 3) == 3);
  for (int m = 3; m <= 6; ++m)
    for (int n = 3; n <= 6; ++n) CHECK(diam(linf_product(cycle_graph(m), cycle_graph(n))) == std::max(m / 2, n / 2));
}

TEST_CASE("wedge sums") {
  PointedMetricSpace c3(cycle_graph(3), 0);
  auto w = wedge_sum(c3, c3);
  CHECK(w.space.size() == 5);
  CHECK(w.basepoint == 0);
  // X points first, then Y minus its basepoint: 1_Y sits at index 3.
  CHECK(w.space.d(1, 3) == 2);
  CHECK(axioms_hold(w.space));
  PointedMetricSpace d6(circle_sample(6), 0);
  auto w6 = wedge_sum(d6, d6);
  CHECK(w6.space.d(2, 6 + 1) == doctest::Approx(4 * std::numbers::pi / 3));
  PointedMetricSpace pt(uniform_space(1), 0);
  auto w1 = wedge_sum(PointedMetricSpace(cycle_graph(5), 0), pt);
  CHECK(w1.space.matrix().data() == cycle_graph(5).matrix().data());
  for (int m = 3; m <= 7; ++m)
    for (int n = 3; n <= 7; ++n) {
      auto x = PointedMetricSpace(cycle_graph(m), 0);
      auto y = PointedMetricSpace(cycle_graph(n), 0);
      CHECK(diam(wedge_sum(x, y).space) == diam(x.space) + diam(y.space));
    }
}

TEST_CASE("eps-connectivity") {
  CHECK(is_eps_connected(cycle_graph(5), 1));
  CHECK_FALSE(is_eps_connected(uniform_space(3), 0.5));
  CHECK(is_eps_connected(star_graph(4).space, 1));
  CHECK(eps_component(uniform_space(3), 1, 0.5) == std::vector<std::size_t>{1});
}

TEST_CASE("candidate scales") {
  CHECK(candidate_scales(cycle_graph(7)) == std::vector<double>{0, 1, 2, 3});
  CHECK(candidate_scales(uniform_space(1)) == std::vector<double>{0});
  auto s = candidate_scales(circle_sample(4));
  REQUIRE(s.size() == 3);
  CHECK(find_scale(s, std::numbers::pi / 2).value() == 1);
  CHECK_FALSE(find_scale(s, 1.0).has_value());
}
