#include "perstopy/persistent_pi1.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace perstopy {

bool EdgePathPresentation::contains(std::size_t v) const {
  return std::binary_search(component.begin(), component.end(), v);
}

Word EdgePathPresentation::edge_word(std::size_t u, std::size_t v) const {
  if (u == v) return {};
  if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  int g = edge_gen_[u * n_ + v];
  if (g < 0) throw std::invalid_argument("not an edge of the basepoint component");
  if (g == 0) return {};
  return {u < v ? g : -g};
}

Word EdgePathPresentation::path_word(const std::vector<std::size_t>& points) const {
  Word w;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Word e = edge_word(points[i], points[i + 1]);
    w.insert(w.end(), e.begin(), e.end());
  }
  return free_reduce(w);
}

std::vector<std::size_t> EdgePathPresentation::tree_path(std::size_t v) const {
  if (!contains(v)) throw std::invalid_argument("point outside the basepoint component");
  std::vector<std::size_t> path{v};
  while (parent[path.back()] >= 0) path.push_back(static_cast<std::size_t>(parent[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

EdgePathPresentation edge_path_presentation(const VRSkeleton2& k, std::size_t x0) {
  std::size_t n = 0;
  for (auto v : k.vertices) n = std::max(n, v + 1);
  if (x0 >= n) throw std::out_of_range("basepoint not in complex");

  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : k.edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  EdgePathPresentation out;
  out.basepoint = x0;
  out.n_ = n;
  out.parent.assign(n, -1);
  out.edge_gen_.assign(n * n, -1);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(x0);
  seen[x0] = true;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    out.component.push_back(u);
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        out.parent[v] = static_cast<long>(u);
        out.edge_gen_[u * n + v] = out.edge_gen_[v * n + u] = 0;
        q.push(v);
      }
  }
  std::sort(out.component.begin(), out.component.end());

  for (const auto& e : k.edges) {
    if (!seen[e[0]]) continue;
    if (out.edge_gen_[e[0] * n + e[1]] == 0) continue;
    out.generator_edges.push_back(e);
    int g = static_cast<int>(out.generator_edges.size());
    out.edge_gen_[e[0] * n + e[1]] = out.edge_gen_[e[1] * n + e[0]] = g;
    out.presentation.generators.push_back("e" + std::to_string(e[0]) + "." + std::to_string(e[1]));
  }
  for (const auto& t : k.triangles) {
    if (!seen[t[0]]) continue;
    out.presentation.relators.push_back(out.path_word({t[0], t[1], t[2], t[0]}));
  }
  return out;
}

Pi1Level pi1_at_scale(const PointedMetricSpace& x, double eps, int effort) {
  Pi1Level lvl;
  lvl.scale = eps;
  lvl.skeleton = vr_skeleton(x.space, eps);
  lvl.raw = edge_path_presentation(lvl.skeleton, x.basepoint);
  lvl.simplified = tietze_simplify(lvl.raw.presentation, effort);
  lvl.cls = classify_presentation(lvl.simplified.presentation);
  return lvl;
}

std::size_t PersistentPi1::level_of(double eps) const {
  auto i = find_scale(scales, eps);
  if (!i) throw std::out_of_range("scale " + std::to_string(eps) + " is not a candidate scale");
  return *i;
}

PersistentPi1 persistent_pi1(const PointedMetricSpace& x, int effort, Execution exec) {
  PersistentPi1 pp;
  pp.basepoint = x.basepoint;
  pp.scales = candidate_scales(x.space);
  const long n = static_cast<long>(pp.scales.size());
  pp.levels.resize(pp.scales.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) pp.levels[static_cast<std::size_t>(i)] = pi1_at_scale(x, pp.scales[static_cast<std::size_t>(i)], effort);
  } else {
    for (long i = 0; i < n; ++i) pp.levels[static_cast<std::size_t>(i)] = pi1_at_scale(x, pp.scales[static_cast<std::size_t>(i)], effort);
  }
  for (std::size_t i = 0; i + 1 < pp.levels.size(); ++i) {
    const auto& cur = pp.levels[i].raw;
    const auto& next = pp.levels[i + 1].raw;
    auto& images = pp.levels[i].generator_images;
    for (const auto& e : cur.generator_edges) {
      auto loop = cur.tree_path(e[0]);
      auto back = cur.tree_path(e[1]);
      loop.insert(loop.end(), back.rbegin(), back.rend());
      images.push_back(next.path_word(loop));
    }
  }
  return pp;
}

Word structure_map_image_raw(const PersistentPi1& pp, double eps, double eps2, const Word& raw) {
  std::size_t i = pp.level_of(eps);
  std::size_t j = pp.level_of(eps2);
  if (i > j) throw std::invalid_argument("structure maps go up in scale");
  pp.levels[i].raw.presentation.check();
  GroupPresentation probe{pp.levels[i].raw.presentation.generators, {raw}};
  probe.check();
  Word w = free_reduce(raw);
  for (std::size_t l = i; l < j; ++l) {
    const auto& img = pp.levels[l].generator_images;
    Word next;
    for (int letter : w) {
      const Word& s = img[static_cast<std::size_t>(gen_of(letter))];
      if (letter > 0) {
        next.insert(next.end(), s.begin(), s.end());
      } else {
        Word inv = inverse_word(s);
        next.insert(next.end(), inv.begin(), inv.end());
      }
    }
    w = free_reduce(next);
  }
  return w;
}

Word structure_map_image(const PersistentPi1& pp, double eps, double eps2, const Word& w) {
  const auto& from = pp.levels[pp.level_of(eps)].simplified;
  GroupPresentation probe{from.presentation.generators, {w}};
  probe.check();
  Word raw;
  for (int l : w) {
    int g = static_cast<int>(from.survivors[static_cast<std::size_t>(gen_of(l))]) + 1;
    raw.push_back(l > 0 ? g : -g);
  }
  Word image = structure_map_image_raw(pp, eps, eps2, raw);
  return pp.levels[pp.level_of(eps2)].simplified.translate(image);
}

const char* critical_name(CriticalVerdict v) {
  switch (v) {
    case CriticalVerdict::Critical:
      return "Critical";
    case CriticalVerdict::NonCritical:
      return "NonCritical";
    case CriticalVerdict::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

bool generates_free_group(const std::vector<Word>& images, int rank) {
  if (rank == 0) return true;
  struct E {
    int from, label, to;
  };
  std::vector<E> edges;
  int nv = 1;
  for (const auto& raw : images) {
    Word w = free_reduce(raw);
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int target = i + 1 == w.size() ? 0 : nv++;
      if (w[i] > 0)
        edges.push_back({cur, w[i], target});
      else
        edges.push_back({target, -w[i], cur});
      cur = target;
    }
  }
  std::vector<int> uf(static_cast<std::size_t>(nv));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int a) {
    while (uf[static_cast<std::size_t>(a)] != a) a = uf[static_cast<std::size_t>(a)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(a)])];
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out;
    for (const auto& e : edges) {
      int a = find(e.from), b = find(e.to);
      for (auto [key, target] : {std::pair{std::pair{a, e.label}, b}, std::pair{std::pair{b, -e.label}, a}}) {
        auto [it, fresh] = out.emplace(key, target);
        if (!fresh && find(it->second) != find(target)) {
          uf[static_cast<std::size_t>(find(it->second))] = find(target);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  int root = find(0);
  for (int g = 1; g <= rank; ++g) {
    bool loop = std::any_of(edges.begin(), edges.end(),
                            [&](const E& e) { return e.label == g && find(e.from) == root && find(e.to) == root; });
    if (!loop) return false;
  }
  return true;
}

std::vector<CriticalValue> detect_critical_values(const PersistentPi1& pp) {
  std::vector<CriticalValue> out;
  if (pp.levels.empty()) return out;
  out.push_back({pp.scales[0], CriticalVerdict::NonCritical});
  for (std::size_t i = 1; i < pp.levels.size(); ++i) {
    const auto& a = pp.levels[i - 1].cls;
    const auto& b = pp.levels[i].cls;
    CriticalVerdict v;
    if (a.tag == GroupTag::Unclassified || b.tag == GroupTag::Unclassified) {
      v = CriticalVerdict::Undetermined;
    } else if (a.tag != b.tag || a.rank != b.rank) {
      v = CriticalVerdict::Critical;
    } else if (a.tag == GroupTag::Trivial) {
      v = CriticalVerdict::NonCritical;
    } else {
      std::vector<Word> images;
      for (int g = 1; g <= a.rank; ++g)
        images.push_back(structure_map_image(pp, pp.scales[i - 1], pp.scales[i], {g}));
      bool bijective;
      if (a.tag == GroupTag::Free) {
        // Free groups are Hopfian: surjective endomorphisms are automorphisms.
        bijective = generates_free_group(images, a.rank);
      } else {
        IntMatrix m(static_cast<std::size_t>(a.rank), static_cast<std::size_t>(a.rank));
        for (std::size_t r = 0; r < images.size(); ++r) {
          auto e = exponent_sums(images[r], static_cast<std::size_t>(a.rank));
          for (std::size_t c = 0; c < e.size(); ++c) m(r, c) = e[c];
        }
        bijective = is_unimodular(m);
      }
      v = bijective ? CriticalVerdict::NonCritical : CriticalVerdict::Critical;
    }
    out.push_back({pp.scales[i], v});
  }
  return out;
}

}  // namespace perstopy
