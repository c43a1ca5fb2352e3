#include "perstopy/gromov_hausdorff.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "perstopy/homology.hpp"
#include "perstopy/interleaving.hpp"
#include "perstopy/persistent_pi1.hpp"

namespace perstopy {

bool is_correspondence(const Correspondence& r, std::size_t nx, std::size_t ny) {
  std::vector<bool> cx(nx, false), cy(ny, false);
  for (auto [i, j] : r.pairs) {
    if (i >= nx || j >= ny) return false;
    cx[i] = true;
    cy[j] = true;
  }
  return std::all_of(cx.begin(), cx.end(), [](bool b) { return b; }) &&
         std::all_of(cy.begin(), cy.end(), [](bool b) { return b; });
}

double distortion(const Correspondence& r, const DistanceMatrix& x, const DistanceMatrix& y) {
  if (!is_correspondence(r, x.size(), y.size())) throw std::invalid_argument("invalid correspondence");
  double d = 0.0;
  for (auto [i, j] : r.pairs)
    for (auto [k, l] : r.pairs) d = std::max(d, std::abs(x(i, k) - y(j, l)));
  return d;
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return distortion(r, x.matrix(), y.matrix());
}

Correspondence GHResult::correspondence() const {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t i = 0; i < phi.size(); ++i) s.insert({i, phi[i]});
  for (std::size_t j = 0; j < psi.size(); ++j) s.insert({psi[j], j});
  return Correspondence{{s.begin(), s.end()}};
}

long double gh_search_size(std::size_t nx, std::size_t ny) {
  return std::pow(static_cast<long double>(ny), static_cast<long double>(nx)) *
         std::pow(static_cast<long double>(nx), static_cast<long double>(ny));
}

namespace {

// Constraint problem at a fixed threshold: every point v of X (variable v) and of Y (variable
// n + v) picks a partner; the chosen pairs must be pairwise compatible, i.e.
// |dX(x,x') - dY(y,y')| <= delta. Domains are bitsets over the other side.
class Feasibility {
 public:
  Feasibility(const DistanceMatrix& x, const DistanceMatrix& y, double delta,
              std::optional<std::pair<std::size_t, std::size_t>> base)
      : x_(x), y_(y), n_(x.size()), m_(y.size()) {
    const std::size_t np = n_ * m_;
    mask_x_.assign(np * n_, 0);
    mask_y_.assign(np * m_, 0);
    self_.assign(np, false);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < m_; ++b) {
        const std::size_t p = a * m_ + b;
        for (std::size_t c = 0; c < n_; ++c)
          for (std::size_t d = 0; d < m_; ++d)
            if (std::abs(x(a, c) - y(b, d)) <= delta + kApiTol) {
              mask_x_[p * n_ + c] |= std::uint64_t{1} << d;
              mask_y_[p * m_ + d] |= std::uint64_t{1} << c;
            }
        self_[p] = (mask_x_[p * n_ + a] >> b) & 1;
      }
    root_.assign(n_ + m_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < m_; ++b)
        if (self_[a * m_ + b]) {
          root_[a] |= std::uint64_t{1} << b;
          root_[n_ + b] |= std::uint64_t{1} << a;
        }
    if (base) {
      auto [x0, y0] = *base;
      root_[x0] &= std::uint64_t{1} << y0;
      root_[n_ + y0] &= std::uint64_t{1} << x0;
    }
  }

  using Domains = std::vector<std::uint64_t>;
  static constexpr std::uint64_t kAssigned = ~std::uint64_t{0};

  // Restricts unassigned domains after assigning variable v the value w. False on wipe-out.
  bool assign(Domains& dom, std::vector<char>& done, std::size_t v, std::size_t w) const {
    const std::size_t p = v < n_ ? v * m_ + w : w * m_ + (v - n_);
    done[v] = 1;
    for (std::size_t u = 0; u < n_ + m_; ++u) {
      if (done[u]) continue;
      dom[u] &= u < n_ ? mask_x_[p * n_ + u] : mask_y_[p * m_ + (u - n_)];
      if (!dom[u]) return false;
    }
    return true;
  }

  long pick(const Domains& dom, const std::vector<char>& done) const {
    long best = -1;
    int best_count = 65;
    for (std::size_t u = 0; u < n_ + m_; ++u) {
      if (done[u]) continue;
      int c = std::popcount(dom[u]);
      if (c < best_count) {
        best_count = c;
        best = static_cast<long>(u);
      }
    }
    return best;
  }

  bool dfs(Domains& dom, std::vector<char>& done, std::vector<std::size_t>& value,
           const std::atomic<bool>* stop) const {
    if (stop && stop->load(std::memory_order_relaxed)) return false;
    long v = pick(dom, done);
    if (v < 0) return true;
    const auto vu = static_cast<std::size_t>(v);
    for (std::uint64_t bits = dom[vu]; bits; bits &= bits - 1) {
      auto w = static_cast<std::size_t>(std::countr_zero(bits));
      Domains next = dom;
      std::vector<char> nd = done;
      if (!assign(next, nd, vu, w)) continue;
      value[vu] = w;
      if (dfs(next, nd, value, stop)) {
        dom = std::move(next);
        done = std::move(nd);
        return true;
      }
    }
    return false;
  }

  bool solve(Execution exec, std::vector<std::size_t>* witness) const {
    Domains dom = root_;
    for (auto d : dom)
      if (!d) return false;
    std::vector<char> done(n_ + m_, 0);
    std::vector<std::size_t> value(n_ + m_, 0);
    if (exec == Execution::Serial || witness) {
      bool ok = dfs(dom, done, value, nullptr);
      if (ok && witness) *witness = value;
      return ok;
    }
    // Split over the values of the first branching variable.
    const auto v = static_cast<std::size_t>(pick(dom, done));
    std::vector<std::size_t> values;
    for (std::uint64_t bits = dom[v]; bits; bits &= bits - 1)
      values.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
    std::atomic<bool> found{false};
    const long nv = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < nv; ++i) {
      if (found.load(std::memory_order_relaxed)) continue;
      Domains d = dom;
      std::vector<char> dn = done;
      std::vector<std::size_t> val = value;
      if (!assign(d, dn, v, values[static_cast<std::size_t>(i)])) continue;
      if (dfs(d, dn, val, &found)) found.store(true);
    }
    return found.load();
  }

 private:
  const DistanceMatrix& x_;
  const DistanceMatrix& y_;
  std::size_t n_, m_;
  std::vector<std::uint64_t> mask_x_, mask_y_;
  std::vector<bool> self_;
  Domains root_;
};

std::vector<double> thresholds(const DistanceMatrix& x, const DistanceMatrix& y) {
  std::vector<double> dx(x.data()), dy(y.data());
  std::sort(dx.begin(), dx.end());
  dx.erase(std::unique(dx.begin(), dx.end()), dx.end());
  std::sort(dy.begin(), dy.end());
  dy.erase(std::unique(dy.begin(), dy.end()), dy.end());
  std::vector<double> all;
  for (double a : dx)
    for (double b : dy) all.push_back(std::abs(a - b));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all)
    if (out.empty() || v > out.back() + kApiTol) out.push_back(v);
  return out;
}

}  // namespace

GHResult gh_search(const DistanceMatrix& x, const DistanceMatrix& y, double budget,
                   std::optional<std::pair<std::size_t, std::size_t>> basepoints, Execution exec) {
  const std::size_t n = x.size(), m = y.size();
  if (n == 0 || m == 0) throw std::invalid_argument("Gromov-Hausdorff search needs nonempty spaces");
  if (n > 64 || m > 64) throw BudgetExceeded(gh_search_size(n, m));
  if (basepoints && (basepoints->first >= n || basepoints->second >= m))
    throw std::out_of_range("basepoint index out of range");
  const long double required = gh_search_size(n, m);
  if (required > static_cast<long double>(budget)) throw BudgetExceeded(required);

  auto cand = thresholds(x, y);
  std::size_t lo = 0, hi = cand.size() - 1;  // the largest threshold admits every map pair
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (Feasibility(x, y, cand[mid], basepoints).solve(exec, nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<std::size_t> value;
  Feasibility(x, y, cand[lo], basepoints).solve(Execution::Serial, &value);
  GHResult r;
  r.value = cand[lo] / 2;
  r.phi.assign(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(n));
  r.psi.assign(value.begin() + static_cast<std::ptrdiff_t>(n), value.end());
  return r;
}

double gh_exact(const DistanceMatrix& x, const DistanceMatrix& y, double budget) {
  return gh_search(x, y, budget).value;
}

double gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double budget) {
  return gh_exact(x.matrix(), y.matrix(), budget);
}

double gh_pointed_exact(const PointedMetricSpace& x, const PointedMetricSpace& y, double budget) {
  return gh_search(x.space.matrix(), y.space.matrix(), budget, std::pair{x.basepoint, y.basepoint}).value;
}

namespace {

bool all_have_antipodes(const FiniteMetricSpace& x) {
  const double D = diam(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!approx_eq(ecc(x, i), D)) return false;
  return true;
}

}  // namespace

GHBoundsReport gh_lower_bounds(const PointedMetricSpace& px, const PointedMetricSpace& py, double budget,
                               bool with_exact) {
  const auto& x = px.space;
  const auto& y = py.space;
  GHBoundsReport r;
  r.diam_bound = std::abs(diam(x) - diam(y)) / 2;

  auto radius = [&](const FiniteMetricSpace& big, const FiniteMetricSpace& small) {
    if (diam(big) + kApiTol < diam(small) || !all_have_antipodes(big) || rad(small) > diam(big)) return 0.0;
    return (diam(big) - rad(small)) / 2;
  };
  r.radius_bound = std::max(radius(x, y), radius(y, x));

  try {
    r.mu0_bound = gh_exact(mu0_ultrametric(x), mu0_ultrametric(y), budget);
  } catch (const BudgetExceeded&) {
    r.flags.push_back("mu0_bound: budget exceeded");
  }
  r.bottleneck0_bound = bottleneck(ph0_diagram(x), ph0_diagram(y)) / 2;
  r.bottleneck1_bound = bottleneck(ph1_diagram(x), ph1_diagram(y)) / 2;

  auto gx = as_interval_group(persistent_pi1(px));
  auto gy = as_interval_group(persistent_pi1(py));
  if (gx && gy)
    r.pi1_interleaving_bound = interleaving_interval_groups(*gx, *gy) / 2;
  else
    r.flags.push_back("pi1_interleaving_bound: persistent group is not a single interval");

  if (with_exact) {
    try {
      r.exact = gh_exact(x, y, budget);
      r.exact_pointed = gh_pointed_exact(px, py, budget);
    } catch (const BudgetExceeded&) {
      r.flags.push_back("exact: budget exceeded");
    }
  }
  return r;
}

}  // namespace perstopy
