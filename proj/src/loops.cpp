#include "perstopy/loops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace perstopy {

DiscreteLoop::DiscreteLoop(std::vector<std::size_t> points) {
  if (points.empty()) throw std::invalid_argument("a loop needs at least one point");
  if (points.front() != points.back()) throw std::invalid_argument("loop endpoints differ");
  for (auto p : points)
    if (points_.empty() || points_.back() != p) points_.push_back(p);
}

DiscreteLoop DiscreteLoop::reversed() const { return DiscreteLoop({points_.rbegin(), points_.rend()}); }

DiscreteLoop DiscreteLoop::operator*(const DiscreteLoop& other) const {
  if (basepoint() != other.basepoint()) throw std::invalid_argument("loops have different basepoints");
  std::vector<std::size_t> p = points_;
  p.insert(p.end(), other.points_.begin() + 1, other.points_.end());
  return DiscreteLoop(std::move(p));
}

bool shortlex_less(const DiscreteLoop& a, const DiscreteLoop& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.points() < b.points();
}

double birth(const DiscreteLoop& g, const FiniteMetricSpace& x) {
  double b = 0.0;
  const auto& p = g.points();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) b = std::max(b, x.d(p.at(i), p.at(i + 1)));
  return b;
}

bool is_eps_loop(const DiscreteLoop& g, const FiniteMetricSpace& x, double eps) {
  for (auto p : g.points())
    if (p >= x.size()) return false;
  return within_scale(birth(g, x), eps);
}

const char* homotopy_name(Homotopy h) {
  switch (h) {
    case Homotopy::Yes:
      return "Yes";
    case Homotopy::No:
      return "No";
    case Homotopy::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

namespace {

void require_eps_loop(const DiscreteLoop& g, const FiniteMetricSpace& x, double eps) {
  if (!is_eps_loop(g, x, eps)) throw std::invalid_argument("not an eps-loop at this scale");
}

// Canonical loops obtained by deleting one interior point.
template <class F>
void for_each_removal(const std::vector<std::size_t>& p, const FiniteMetricSpace& x, double eps, F&& f) {
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (!within_scale(x.d(p[i - 1], p[i + 1]), eps)) continue;
    std::vector<std::size_t> q;
    q.reserve(p.size() - 1);
    q.insert(q.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
    q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.end());
    f(DiscreteLoop(std::move(q)));
  }
}

// Canonical loops obtained by inserting one point. Besides v between two consecutive points,
// this covers inserting v next to a stuttered copy of p[i], i.e. p[i] -> p[i] v p[i]; those are
// exactly the reverses of removals that collapse a stutter, so the move graph stays symmetric.
template <class F>
void for_each_insertion(const std::vector<std::size_t>& p, const FiniteMetricSpace& x, double eps, F&& f) {
  auto insert_at = [&](std::size_t pos, std::initializer_list<std::size_t> vs) {
    std::vector<std::size_t> q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(pos));
    q.insert(q.end(), vs);
    q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(pos), p.end());
    f(DiscreteLoop(std::move(q)));
  };
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (v == p[i] || !within_scale(x.d(p[i], v), eps)) continue;
      insert_at(i + 1, {v, p[i]});
      if (i + 1 < p.size() && v != p[i + 1] && within_scale(x.d(v, p[i + 1]), eps)) insert_at(i + 1, {v});
    }
}

}  // namespace

std::vector<DiscreteLoop> basic_moves(const DiscreteLoop& g, double eps, const FiniteMetricSpace& x) {
  require_eps_loop(g, x, eps);
  std::set<DiscreteLoop> out;
  auto add = [&](DiscreteLoop l) {
    if (!(l == g)) out.insert(std::move(l));
  };
  for_each_removal(g.points(), x, eps, add);
  for_each_insertion(g.points(), x, eps, add);
  std::vector<DiscreteLoop> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), shortlex_less);
  return v;
}

BruteforceOutcome homotopic_bruteforce(const DiscreteLoop& a, const DiscreteLoop& b, double eps,
                                       const FiniteMetricSpace& x, std::size_t max_size, std::size_t max_states) {
  require_eps_loop(a, x, eps);
  require_eps_loop(b, x, eps);
  if (a.basepoint() != b.basepoint()) throw std::invalid_argument("loops have different basepoints");
  BruteforceOutcome out;
  const std::size_t longest = std::max(a.size(), b.size());
  out.cap = max_size ? max_size : longest + x.size();
  if (a == b) {
    out.verdict = Homotopy::Yes;
    return out;
  }
  if (out.cap < longest) {
    out.verdict = Homotopy::Unknown;
    return out;
  }
  std::set<DiscreteLoop> seen[2] = {{a}, {b}};
  std::vector<DiscreteLoop> frontier[2] = {{a}, {b}};
  out.states = 2;
  while (true) {
    for (int s = 0; s < 2; ++s)
      if (frontier[s].empty()) {
        // One side's component is exhausted without meeting the other.
        out.verdict = out.cap > longest ? Homotopy::No : Homotopy::Unknown;
        return out;
      }
    const int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<DiscreteLoop> next;
    bool met = false, overflow = false;
    auto visit = [&](DiscreteLoop l) {
      if (met || overflow || l.size() > out.cap) return;
      if (seen[1 - s].count(l)) {
        met = true;
        return;
      }
      if (seen[s].insert(l).second) {
        next.push_back(std::move(l));
        if (++out.states > max_states) overflow = true;
      }
    };
    for (const auto& l : frontier[s]) {
      for_each_removal(l.points(), x, eps, visit);
      for_each_insertion(l.points(), x, eps, visit);
      if (met || overflow) break;
    }
    if (met) {
      out.verdict = Homotopy::Yes;
      return out;
    }
    if (overflow) {
      out.verdict = Homotopy::Unknown;
      return out;
    }
    frontier[s] = std::move(next);
  }
}

std::vector<DiscreteLoop> all_loops(const FiniteMetricSpace& x, std::size_t x0, std::size_t max_size, double eps) {
  std::vector<DiscreteLoop> out{DiscreteLoop::constant(x0)};
  std::vector<std::size_t> path{x0};
  // Exact-size DFS in lexicographic order, for each size in turn.
  auto extend = [&](auto&& self, std::size_t size) -> void {
    if (path.size() == size) {
      if (path.back() != x0 && within_scale(x.d(path.back(), x0), eps)) {
        auto p = path;
        p.push_back(x0);
        out.emplace_back(std::move(p));
      }
      return;
    }
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (v == path.back() || !within_scale(x.d(path.back(), v), eps)) continue;
      path.push_back(v);
      self(self, size);
      path.pop_back();
    }
  };
  for (std::size_t size = 2; size <= max_size; ++size) extend(extend, size);
  return out;
}

std::optional<std::size_t> LoopComponents::index_of(const DiscreteLoop& g) const {
  auto it = std::lower_bound(loops.begin(), loops.end(), g, shortlex_less);
  if (it == loops.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::size_t>(it - loops.begin());
}

LoopComponents loop_components(const FiniteMetricSpace& x, std::size_t x0, double eps, std::size_t cap) {
  LoopComponents c;
  c.cap = cap;
  c.loops = all_loops(x, x0, cap, eps);
  std::vector<std::size_t> parent(c.loops.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // Every move edge is a removal seen from its larger end.
  for (std::size_t i = 0; i < c.loops.size(); ++i)
    for_each_removal(c.loops[i].points(), x, eps, [&](const DiscreteLoop& l) {
      auto j = c.index_of(l);
      if (!j) throw std::logic_error("removal left the enumerated loop set");
      auto a = find(i), b = find(*j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
  c.component.resize(c.loops.size());
  for (std::size_t i = 0; i < c.loops.size(); ++i) c.component[i] = find(i);
  return c;
}

LoopGroupAtScale::LoopGroupAtScale(const PointedMetricSpace& x, double eps, int effort)
    : LoopGroupAtScale(pi1_at_scale(x, eps, effort)) {}

Word LoopGroupAtScale::raw_word(const DiscreteLoop& g) const {
  const auto& raw = level_->raw;
  if (g.basepoint() != raw.basepoint) throw std::invalid_argument("loop is not based at the basepoint");
  return raw.path_word(g.points());
}

Word LoopGroupAtScale::word(const DiscreteLoop& g) const { return level_->simplified.translate(raw_word(g)); }

WordVerdict LoopGroupAtScale::is_trivial(const Word& w) const {
  return word_problem(level_->simplified.presentation, level_->cls, w);
}

Homotopy LoopGroupAtScale::homotopic(const DiscreteLoop& a, const DiscreteLoop& b) const {
  switch (is_trivial(concat(word(a), inverse_word(word(b))))) {
    case WordVerdict::Trivial:
      return Homotopy::Yes;
    case WordVerdict::Nontrivial:
      return Homotopy::No;
    case WordVerdict::Unknown:
      return Homotopy::Unknown;
  }
  return Homotopy::Unknown;
}

Homotopy homotopic_via_pi1(const DiscreteLoop& a, const DiscreteLoop& b, double eps, const PointedMetricSpace& x) {
  require_eps_loop(a, x.space, eps);
  require_eps_loop(b, x.space, eps);
  return LoopGroupAtScale(x, eps).homotopic(a, b);
}

LoopSpace::LoopSpace(const PointedMetricSpace& x, int effort) : x_(x), pp_(persistent_pi1(x, effort)) {
  for (const auto& lvl : pp_.levels) groups_.emplace_back(lvl);
}

std::size_t LoopSpace::first_scale_at_least(double s) const {
  const auto& sc = pp_.scales;
  for (std::size_t i = 0; i < sc.size(); ++i)
    if (sc[i] + kApiTol >= s) return i;
  throw std::out_of_range("scale beyond the filtration");
}

Homotopy LoopSpace::homotopic(const DiscreteLoop& a, const DiscreteLoop& b, std::size_t i) const {
  return groups_.at(i).homotopic(a, b);
}

std::optional<double> LoopSpace::mu1(const DiscreteLoop& a, const DiscreteLoop& b) const {
  double start = std::max(birth(a, x_.space), birth(b, x_.space));
  for (std::size_t i = first_scale_at_least(start); i < pp_.scales.size(); ++i) {
    auto h = homotopic(a, b, i);
    if (h == Homotopy::Yes) return pp_.scales[i];
    if (h == Homotopy::Unknown) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> mu1(const DiscreteLoop& a, const DiscreteLoop& b, const PointedMetricSpace& x) {
  return LoopSpace(x).mu1(a, b);
}

std::optional<double> death(const DiscreteLoop& g, const PointedMetricSpace& x) {
  return mu1(g, DiscreteLoop::constant(x.basepoint), x);
}

namespace {

// Groups loops at one scale into homotopy classes. Classified groups use an exact key;
// Unclassified groups fall back to pairwise word-problem checks.
class ClassSorter {
 public:
  explicit ClassSorter(const LoopGroupAtScale& g) : g_(g) {}

  // Returns the class id of the loop and whether an Unknown verdict was involved.
  std::pair<std::size_t, bool> classify(const DiscreteLoop& l) {
    const auto& lvl = g_.level();
    Word w = g_.word(l);
    std::vector<std::int64_t> key;
    switch (lvl.cls.tag) {
      case GroupTag::Trivial:
        break;
      case GroupTag::Free:
        key.assign(w.begin(), w.end());
        break;
      case GroupTag::FreeAbelian:
        key = exponent_sums(w, static_cast<std::size_t>(lvl.cls.rank));
        break;
      case GroupTag::Unclassified: {
        bool unknown = false;
        for (std::size_t c = 0; c < words_.size(); ++c) {
          auto v = g_.is_trivial(concat(w, inverse_word(words_[c])));
          if (v == WordVerdict::Trivial) return {c, unknown};
          if (v == WordVerdict::Unknown) unknown = true;
        }
        words_.push_back(w);
        return {words_.size() - 1, unknown};
      }
    }
    auto [it, fresh] = keys_.emplace(key, keys_.size());
    return {it->second, false};
  }

 private:
  const LoopGroupAtScale& g_;
  std::map<std::vector<std::int64_t>, std::size_t> keys_;
  std::vector<Word> words_;
};

}  // namespace

std::vector<LoopClass> enumerate_L(const LoopSpace& ls, std::size_t max_size) {
  const auto& x = ls.space();
  if (max_size == 0) max_size = 2 * x.space.size();
  std::vector<ClassSorter> sorters;
  for (std::size_t i = 0; i < ls.scales().size(); ++i) sorters.emplace_back(ls.at(i));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> found;  // (scale, class) -> output slot
  std::vector<LoopClass> out;
  for (const auto& l : all_loops(x.space, x.basepoint, max_size)) {
    double b = birth(l, x.space);
    std::size_t s = ls.first_scale_at_least(b);
    auto [cls, unknown] = sorters[s].classify(l);
    auto [it, fresh] = found.emplace(std::pair{s, cls}, out.size());
    if (fresh) out.push_back({l, ls.scales()[s], unknown});
    else if (unknown)
      out[it->second].flagged = true;
  }
  return out;
}

std::vector<LoopClass> enumerate_L(const PointedMetricSpace& x, std::size_t max_size) {
  return enumerate_L(LoopSpace(x), max_size);
}

GSubdendrogram generalized_subdendrogram(const LoopSpace& ls, std::size_t max_size) {
  GSubdendrogram g;
  g.representatives = enumerate_L(ls, max_size);
  g.scales = ls.scales();
  for (const auto& r : g.representatives) g.flagged = g.flagged || r.flagged;
  for (std::size_t s = 0; s < g.scales.size(); ++s) {
    ClassSorter sorter(ls.at(s));
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t r = 0; r < g.representatives.size(); ++r) {
      const auto& rep = g.representatives[r];
      if (rep.birth > g.scales[s] + kApiTol) continue;
      auto [cls, unknown] = sorter.classify(rep.representative);
      g.flagged = g.flagged || unknown;
      blocks[cls].push_back(r);
    }
    std::vector<std::vector<std::size_t>> level;
    for (auto& [cls, members] : blocks) level.push_back(std::move(members));
    std::sort(level.begin(), level.end());
    g.blocks.push_back(std::move(level));
  }
  return g;
}

GSubdendrogram generalized_subdendrogram(const PointedMetricSpace& x, std::size_t max_size) {
  return generalized_subdendrogram(LoopSpace(x), max_size);
}

DistanceMatrix GSubdendrogram::induced() const {
  const std::size_t n = representatives.size();
  DistanceMatrix u(n, kInfinity);
  for (std::size_t s = scales.size(); s-- > 0;)
    for (const auto& block : blocks[s])
      for (auto a : block)
        for (auto b : block) u(a, b) = scales[s];
  for (std::size_t a = 0; a < n; ++a) u(a, a) = representatives[a].birth;
  return u;
}

std::vector<std::vector<std::optional<double>>> mu1_matrix(const LoopSpace& ls, const std::vector<LoopClass>& reps) {
  std::vector<std::vector<std::optional<double>>> m(reps.size(), std::vector<std::optional<double>>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a; b < reps.size(); ++b)
      m[a][b] = m[b][a] = ls.mu1(reps[a].representative, reps[b].representative);
  return m;
}

}  // namespace perstopy
