#include "perstopy/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

namespace perstopy {

DistanceMatrix::DistanceMatrix(const std::vector<std::vector<double>>& rows) : n_(rows.size()), d_(n_ * n_, 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw MetricError(MetricErrorKind::NotSquare, "distance matrix is not square");
    }
    std::copy(rows[i].begin(), rows[i].end(), d_.begin() + static_cast<std::ptrdiff_t>(i * n_));
  }
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

double DistanceMatrix::max_entry() const {
  double m = 0.0;
  for (double v : d_) m = std::max(m, v);
  return m;
}

PointedMetricSpace::PointedMetricSpace(FiniteMetricSpace s, std::size_t x0) : space(std::move(s)), basepoint(x0) {
  if (x0 >= space.size()) throw std::out_of_range("basepoint index out of range");
}

FiniteMetricSpace validate(const DistanceMatrix& m, std::vector<std::string> labels) {
  const std::size_t n = m.size();
  auto fmt = [](std::initializer_list<std::size_t> idx) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (auto i : idx) {
      if (!first) os << ',';
      os << i;
      first = false;
    }
    os << ')';
    return os.str();
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > kInternalTol)
      throw MetricError(MetricErrorKind::NonzeroDiagonal, "NonzeroDiagonal" + fmt({i}), {i});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j)) || m(i, j) < -kInternalTol)
        throw MetricError(MetricErrorKind::NegativeEntry, "NegativeEntry" + fmt({i, j}), {i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > kInternalTol)
        throw MetricError(MetricErrorKind::AsymmetricMatrix, "AsymmetricMatrix" + fmt({i, j}), {i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (m(i, j) > m(i, k) + m(k, j) + kInternalTol)
          throw MetricError(MetricErrorKind::TriangleViolation, "TriangleViolation" + fmt({i, k, j}), {i, k, j});
      }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw std::invalid_argument("label count does not match matrix size");
  }
  DistanceMatrix clean(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) clean.set_symmetric(i, j, std::max(0.0, m(i, j)));
  return FiniteMetricSpace(std::move(clean), std::move(labels));
}

FiniteMetricSpace validate(const std::vector<std::vector<double>>& rows, std::vector<std::string> labels) {
  return validate(DistanceMatrix(rows), std::move(labels));
}

namespace {

DistanceMatrix cyclic_matrix(int m, double unit) {
  DistanceMatrix d(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int k = std::min(j - i, m - (j - i));
      d.set_symmetric(i, j, unit * k);
    }
  return d;
}

}  // namespace

FiniteMetricSpace cycle_graph(int m) {
  if (m < 3) throw std::invalid_argument("cycle_graph requires m >= 3");
  return validate(cyclic_matrix(m, 1.0));
}

PointedMetricSpace star_graph(int n) {
  if (n < 3) throw std::invalid_argument("star_graph requires n >= 3");
  DistanceMatrix d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set_symmetric(i, j, i == 0 ? 1.0 : 2.0);
  return PointedMetricSpace(validate(d), 0);
}

FiniteMetricSpace circle_sample(int n) {
  if (n < 3) throw std::invalid_argument("circle_sample requires n >= 3");
  return validate(cyclic_matrix(n, 2.0 * std::numbers::pi / n));
}

FiniteMetricSpace uniform_space(int n) {
  if (n < 1) throw std::invalid_argument("uniform_space requires n >= 1");
  DistanceMatrix d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set_symmetric(i, j, 1.0);
  return validate(d);
}

FiniteMetricSpace graph_metric(const std::vector<std::vector<double>>& weights) {
  const std::size_t n = weights.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i].size() != n) throw MetricError(MetricErrorKind::NotSquare, "adjacency matrix is not square");
    d[i][i] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && weights[i][j] >= 0.0) d[i][j] = std::min(d[i][j], weights[i][j]);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return validate(d);
}

FiniteMetricSpace random_tree_metric(int n, std::uint64_t seed, TreeWeights weights) {
  if (n < 1) throw std::invalid_argument("random_tree_metric requires n >= 1");
  std::mt19937_64 rng(seed);
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> adj(un, std::vector<double>(un, -1.0));
  auto weight = [&] {
    if (weights == TreeWeights::Unit) return 1.0;
    return static_cast<double>(std::uniform_int_distribution<int>(1, 8)(rng)) / 4.0;
  };
  auto link = [&](std::size_t a, std::size_t b) {
    double w = weight();
    adj[a][b] = adj[b][a] = w;
  };
  if (n == 2) link(0, 1);
  if (n >= 3) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> pruefer(un - 2);
    for (auto& p : pruefer) p = pick(rng);
    std::vector<int> degree(un, 1);
    for (int p : pruefer) ++degree[static_cast<std::size_t>(p)];
    for (int p : pruefer) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      link(leaf, static_cast<std::size_t>(p));
      --degree[leaf];
      --degree[static_cast<std::size_t>(p)];
    }
    std::size_t u = un, v = un;
    for (std::size_t i = 0; i < un; ++i)
      if (degree[i] == 1) (u == un ? u : v) = i;
    link(u, v);
  }
  return graph_metric(adj);
}

FiniteMetricSpace random_metric(int n, std::uint64_t seed, int max_weight) {
  if (n < 1) throw std::invalid_argument("random_metric requires n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, std::max(1, max_weight));
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> adj(un, std::vector<double>(un, -1.0));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = i + 1; j < un; ++j) adj[i][j] = adj[j][i] = w(rng);
  return graph_metric(adj);
}

bool check_four_point(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = c; e < n; ++e) {
          double s1 = x.d(a, b) + x.d(c, e);
          double s2 = x.d(a, c) + x.d(b, e);
          double s3 = x.d(a, e) + x.d(b, c);
          if (s1 > std::max(s2, s3) + kInternalTol) return false;
        }
  return true;
}

FiniteMetricSpace linf_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const std::size_t nx = x.size(), ny = y.size();
  DistanceMatrix d(nx * ny);
  std::vector<std::string> labels;
  labels.reserve(nx * ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) labels.push_back("(" + x.labels()[i] + "," + y.labels()[j] + ")");
  for (std::size_t p = 0; p < nx * ny; ++p)
    for (std::size_t q = p + 1; q < nx * ny; ++q)
      d.set_symmetric(p, q, std::max(x.d(p / ny, q / ny), y.d(p % ny, q % ny)));
  return validate(d, std::move(labels));
}

PointedMetricSpace wedge_sum(const PointedMetricSpace& x, const PointedMetricSpace& y) {
  // Layout: all points of X in order, then the points of Y except its basepoint.
  const std::size_t nx = x.space.size(), ny = y.space.size();
  const std::size_t x0 = x.basepoint, y0 = y.basepoint;
  std::vector<std::size_t> ymap;  // wedge index -> Y index for the appended block
  for (std::size_t j = 0; j < ny; ++j)
    if (j != y0) ymap.push_back(j);
  const std::size_t n = nx + ymap.size();
  DistanceMatrix d(n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nx; ++i) labels.push_back("x" + x.space.labels()[i]);
  for (std::size_t j : ymap) labels.push_back("y" + y.space.labels()[j]);
  auto side = [&](std::size_t p) { return p < nx; };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      double v;
      if (side(p) && side(q)) {
        v = x.space.d(p, q);
      } else if (!side(p) && !side(q)) {
        v = y.space.d(ymap[p - nx], ymap[q - nx]);
      } else {
        std::size_t xi = side(p) ? p : q;
        std::size_t yj = ymap[(side(p) ? q : p) - nx];
        v = x.space.d(xi, x0) + y.space.d(yj, y0);
      }
      d.set_symmetric(p, q, v);
    }
  return PointedMetricSpace(validate(d, std::move(labels)), x0);
}

double diam(const DistanceMatrix& m) { return m.max_entry(); }

double diam(const FiniteMetricSpace& x) { return x.matrix().max_entry(); }

double ecc(const FiniteMetricSpace& x, std::size_t i) {
  double e = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) e = std::max(e, x.d(i, j));
  return e;
}

double rad(const FiniteMetricSpace& x) {
  if (x.size() == 0) return 0.0;
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) r = std::min(r, ecc(x, i));
  return r;
}

std::vector<std::size_t> eps_component(const FiniteMetricSpace& x, std::size_t from, double eps) {
  std::vector<char> seen(x.size(), 0);
  std::queue<std::size_t> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (std::size_t v = 0; v < x.size(); ++v)
      if (!seen[v] && x.d(u, v) <= eps + kApiTol) {
        seen[v] = 1;
        q.push(v);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool is_eps_connected(const FiniteMetricSpace& x, double eps) {
  if (x.size() == 0) return true;
  return eps_component(x, 0, eps).size() == x.size();
}

std::vector<double> candidate_scales(const FiniteMetricSpace& x) {
  std::vector<double> all{0.0};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) all.push_back(x.d(i, j));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all)
    if (out.empty() || v > out.back() + kApiTol) out.push_back(v);
  return out;
}

std::optional<std::size_t> find_scale(const std::vector<double>& scales, double scale) {
  for (std::size_t i = 0; i < scales.size(); ++i)
    if (approx_eq(scales[i], scale)) return i;
  return std::nullopt;
}

}  // namespace perstopy
