#include "perstopy/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace perstopy {

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t ngens) {
  std::vector<std::int64_t> v(ngens, 0);
  for (int l : w) v[static_cast<std::size_t>(gen_of(l))] += l > 0 ? 1 : -1;
  return v;
}

Word canonical_relator(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  Word best;
  for (const Word& base : {r, inverse_word(r)}) {
    for (std::size_t s = 0; s < base.size(); ++s) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

void GroupPresentation::check() const {
  const int n = static_cast<int>(generators.size());
  for (const auto& r : relators)
    for (int l : r)
      if (l == 0 || gen_of(l) >= n) throw std::invalid_argument("relator references an undeclared generator");
}

std::string format_word(const Word& w, const std::vector<std::string>& gens) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += gens.at(static_cast<std::size_t>(gen_of(w[i])));
    if (w[i] < 0) out += '-';
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& gens) {
  Word w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    auto it = std::find(gens.begin(), gens.end(), tok);
    bool inv = false;
    if (it == gens.end() && tok.size() > 1 && tok.back() == '-') {
      inv = true;
      it = std::find(gens.begin(), gens.end(), tok.substr(0, tok.size() - 1));
    }
    if (it == gens.end()) {
      if (tok == "1") continue;
      throw std::invalid_argument("unknown generator '" + tok + "'");
    }
    int l = static_cast<int>(it - gens.begin()) + 1;
    w.push_back(inv ? -l : l);
  }
  return free_reduce(w);
}

std::string to_text(const GroupPresentation& p) {
  std::string out = "gens:";
  for (const auto& g : p.generators) out += " " + g;
  out += "; rels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += i ? ", " : " ";
    out += format_word(p.relators[i], p.generators);
  }
  return out;
}

GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p;
  bool have_gens = false;
  std::string rels_text;
  bool have_rels = false;
  for (const auto& part : split(text, ';')) {
    if (part.rfind("gens:", 0) == 0) {
      std::istringstream is(part.substr(5));
      std::string g;
      while (is >> g) p.generators.push_back(g);
      have_gens = true;
    } else if (part.rfind("rels:", 0) == 0) {
      rels_text = part.substr(5);
      have_rels = true;
    } else if (!part.empty()) {
      throw std::invalid_argument("malformed presentation section '" + part + "'");
    }
  }
  if (!have_gens) throw std::invalid_argument("presentation lacks 'gens:'");
  if (have_rels && !trim(rels_text).empty())
    for (const auto& r : split(rels_text, ',')) p.relators.push_back(parse_word(r, p.generators));
  return p;
}

IntMatrix relation_matrix(const GroupPresentation& p) {
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    auto v = exponent_sums(p.relators[i], p.generators.size());
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
  }
  return m;
}

AbelianInvariants abelianization(const GroupPresentation& p) { return cokernel(relation_matrix(p)); }

bool abelian_image_trivial(const GroupPresentation& p, const Word& w) {
  auto v = exponent_sums(w, p.generators.size());
  if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) return true;
  // Z^n/L and Z^n/(L + <v>) agree iff v lies in L (finitely generated abelian groups are Hopfian).
  IntMatrix m = relation_matrix(p);
  IntMatrix ext(m.rows + 1, m.cols);
  std::copy(m.data.begin(), m.data.end(), ext.data.begin());
  for (std::size_t j = 0; j < m.cols; ++j) ext(m.rows, j) = v[j];
  return cokernel(m) == cokernel(ext);
}

Word Simplification::translate(const Word& original) const {
  Word out;
  for (int l : original) {
    const Word& s = substitution.at(static_cast<std::size_t>(gen_of(l)));
    if (l > 0)
      out.insert(out.end(), s.begin(), s.end());
    else {
      Word inv = inverse_word(s);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

namespace {

Word substitute(const Word& w, int g, const Word& value) {
  Word out;
  Word inv;
  bool have_inv = false;
  for (int l : w) {
    if (gen_of(l) != g) {
      out.push_back(l);
    } else if (l > 0) {
      out.insert(out.end(), value.begin(), value.end());
    } else {
      if (!have_inv) {
        inv = inverse_word(value);
        have_inv = true;
      }
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

Word rotate(const Word& w, std::size_t s) {
  Word r(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
  return r;
}

void normalize(std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& r : rels) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    if (seen.insert(canonical_relator(c)).second) out.push_back(std::move(c));
  }
  rels = std::move(out);
}

// Shortens r using relator s: if a rotation of s (or its inverse) splits as p q with
// |p| > |s|/2 and p occurs cyclically in r, replace that occurrence by q^-1.
bool shorten_with(Word& r, const Word& s) {
  const std::size_t ls = s.size();
  const std::size_t lr = r.size();
  for (std::size_t len = std::min(ls, lr); len > ls / 2; --len) {
    for (const Word& base : {s, inverse_word(s)}) {
      for (std::size_t rot = 0; rot < ls; ++rot) {
        Word sr = rotate(base, rot);
        for (std::size_t start = 0; start < lr; ++start) {
          bool match = true;
          for (std::size_t t = 0; t < len && match; ++t) match = r[(start + t) % lr] == sr[t];
          if (!match) continue;
          Word q(sr.begin() + static_cast<std::ptrdiff_t>(len), sr.end());
          Word out = inverse_word(q);
          for (std::size_t t = len; t < lr; ++t) out.push_back(r[(start + t) % lr]);
          r = cyclic_reduce(out);
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

Simplification tietze_simplify(const GroupPresentation& p, int effort) {
  p.check();
  const std::size_t n = p.generators.size();
  std::vector<Word> rels = p.relators;
  std::vector<Word> sub(n);
  for (std::size_t g = 0; g < n; ++g) sub[g] = {static_cast<int>(g) + 1};
  std::vector<bool> alive(n, true);
  long budget = effort;
  bool exhausted = false;
  std::vector<int> count(n, 0);

  normalize(rels);
  while (true) {
    // Elimination: shortest relator containing some generator exactly once.
    bool found = false;
    std::size_t best_rel = 0, best_pos = 0;
    int best_gen = 0;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
      const Word& r = rels[ri];
      if (found && r.size() > rels[best_rel].size()) continue;
      for (int l : r) ++count[static_cast<std::size_t>(gen_of(l))];
      for (std::size_t k = 0; k < r.size(); ++k) {
        int g = gen_of(r[k]);
        if (count[static_cast<std::size_t>(g)] != 1) continue;
        if (!found || r.size() < rels[best_rel].size() || (r.size() == rels[best_rel].size() && g < best_gen)) {
          found = true;
          best_rel = ri;
          best_pos = k;
          best_gen = g;
        }
      }
      for (int l : r) count[static_cast<std::size_t>(gen_of(l))] = 0;
    }
    if (found) {
      budget -= static_cast<long>(rels[best_rel].size());
      if (budget < 0) {
        exhausted = true;
        break;
      }
      Word rot = rotate(rels[best_rel], best_pos);
      int lead = rot.front();
      Word rest(rot.begin() + 1, rot.end());
      Word value = lead > 0 ? inverse_word(rest) : rest;
      alive[static_cast<std::size_t>(best_gen)] = false;
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best_rel));
      std::vector<Word> kept;
      kept.reserve(rels.size());
      for (auto& r : rels) {
        if (std::none_of(r.begin(), r.end(), [&](int l) { return gen_of(l) == best_gen; })) {
          kept.push_back(std::move(r));
          continue;
        }
        Word c = cyclic_reduce(substitute(r, best_gen, value));
        if (!c.empty()) kept.push_back(std::move(c));
      }
      rels = std::move(kept);
      for (auto& s : sub) s = substitute(s, best_gen, value);
      continue;
    }
    normalize(rels);
    // No elimination available: try one relator-against-relator shortening.
    bool changed = false;
    for (std::size_t i = 0; i < rels.size() && !changed && !exhausted; ++i) {
      for (std::size_t j = 0; j < rels.size() && !changed; ++j) {
        if (i == j || rels[j].size() > rels[i].size()) continue;
        if (--budget < 0) {
          exhausted = true;
          break;
        }
        changed = shorten_with(rels[i], rels[j]);
      }
    }
    if (!changed) break;
  }
  normalize(rels);

  Simplification out;
  out.effort_exhausted = exhausted;
  std::vector<int> index(n, -1);
  for (std::size_t g = 0; g < n; ++g)
    if (alive[g]) {
      index[g] = static_cast<int>(out.survivors.size());
      out.survivors.push_back(g);
      out.presentation.generators.push_back(p.generators[g]);
    }
  auto reindex = [&](const Word& w) {
    Word r;
    r.reserve(w.size());
    for (int l : w) {
      int ng = index[static_cast<std::size_t>(gen_of(l))] + 1;
      r.push_back(l > 0 ? ng : -ng);
    }
    return r;
  };
  for (const auto& r : rels) out.presentation.relators.push_back(reindex(r));
  for (const auto& s : sub) out.substitution.push_back(reindex(s));
  return out;
}

GroupClass GroupClass::free_group(int k) {
  if (k == 0) return trivial();
  return GroupClass{GroupTag::Free, k, {}};
}

GroupClass GroupClass::free_abelian_group(int k) {
  if (k <= 1) return free_group(k);
  return GroupClass{GroupTag::FreeAbelian, k, {}};
}

std::string GroupClass::to_string() const {
  switch (tag) {
    case GroupTag::Trivial:
      return "0";
    case GroupTag::Free:
      return rank == 1 ? "Z" : "F" + std::to_string(rank);
    case GroupTag::FreeAbelian:
      return "Z^" + std::to_string(rank);
    case GroupTag::Unclassified:
      return "?[" + abelianization().to_string() + "]";
  }
  return "?";
}

const char* tag_name(GroupTag t) {
  switch (t) {
    case GroupTag::Trivial:
      return "Trivial";
    case GroupTag::Free:
      return "Free";
    case GroupTag::FreeAbelian:
      return "FreeAbelian";
    case GroupTag::Unclassified:
      return "Unclassified";
  }
  return "Unclassified";
}

GroupTag parse_tag(std::string_view name) {
  if (name == "Trivial") return GroupTag::Trivial;
  if (name == "Free") return GroupTag::Free;
  if (name == "FreeAbelian") return GroupTag::FreeAbelian;
  if (name == "Unclassified") return GroupTag::Unclassified;
  throw std::invalid_argument("unknown group tag '" + std::string(name) + "'");
}

GroupClass classify_presentation(const GroupPresentation& s) {
  const int k = static_cast<int>(s.generators.size());
  std::set<Word> rels;
  for (const auto& r : s.relators) {
    Word c = canonical_relator(r);
    if (!c.empty()) rels.insert(c);
  }
  if (k == 0) return GroupClass::trivial();
  if (rels.empty()) return GroupClass::free_group(k);
  if (k >= 2) {
    std::set<Word> comm;
    for (int a = 1; a <= k; ++a)
      for (int b = a + 1; b <= k; ++b) comm.insert(canonical_relator({a, b, -a, -b}));
    if (comm == rels) return GroupClass::free_abelian_group(k);
  }
  auto ab = abelianization(s);
  return GroupClass{GroupTag::Unclassified, ab.rank, ab.torsion};
}

GroupClass classify_group(const GroupPresentation& p, int effort) {
  return classify_presentation(tietze_simplify(p, effort).presentation);
}

const char* verdict_name(WordVerdict v) {
  switch (v) {
    case WordVerdict::Trivial:
      return "Trivial";
    case WordVerdict::Nontrivial:
      return "Nontrivial";
    case WordVerdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

WordVerdict word_problem(const GroupPresentation& p, const GroupClass& cls, const Word& w) {
  Word r = free_reduce(w);
  if (r.empty()) return WordVerdict::Trivial;
  switch (cls.tag) {
    case GroupTag::Trivial:
      return WordVerdict::Trivial;
    case GroupTag::Free:
      if (p.relators.empty()) return WordVerdict::Nontrivial;
      break;
    case GroupTag::FreeAbelian:
      return abelian_image_trivial(p, r) ? WordVerdict::Trivial : WordVerdict::Nontrivial;
    case GroupTag::Unclassified:
      break;
  }
  return abelian_image_trivial(p, r) ? WordVerdict::Unknown : WordVerdict::Nontrivial;
}

}  // namespace perstopy
