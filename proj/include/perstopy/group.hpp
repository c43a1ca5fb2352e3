#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "perstopy/smith.hpp"

namespace perstopy {

/// A word in a free group: letter +k is generator k-1, letter -k its inverse.
using Word = std::vector<int>;

inline int gen_of(int letter) { return (letter > 0 ? letter : -letter) - 1; }

Word inverse_word(const Word& w);
Word free_reduce(const Word& w);
/// Free reduction followed by cancelling inverse pairs across the ends.
Word cyclic_reduce(const Word& w);
Word concat(const Word& a, const Word& b);
/// Exponent sum per generator.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t ngens);
/// Canonical representative of a relator up to cyclic rotation and inversion.
Word canonical_relator(const Word& w);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t num_generators() const { return generators.size(); }
  /// Throws std::invalid_argument if a relator references an undeclared generator.
  void check() const;
  bool operator==(const GroupPresentation&) const = default;
};

/// "a b- c" for a b^-1 c; the empty word is "1".
std::string format_word(const Word& w, const std::vector<std::string>& gens);
/// Parses the format_word syntax against the given generator names.
Word parse_word(std::string_view text, const std::vector<std::string>& gens);

/// "gens: a b; rels: a b a- b-, b" (relators separated by commas).
std::string to_text(const GroupPresentation& p);
GroupPresentation parse_presentation(std::string_view text);

/// Relator exponent-sum matrix (relators x generators).
IntMatrix relation_matrix(const GroupPresentation& p);
AbelianInvariants abelianization(const GroupPresentation& p);
/// True iff the word maps to zero in the abelianization of p.
bool abelian_image_trivial(const GroupPresentation& p, const Word& w);

inline constexpr int kDefaultTietzeEffort = 10000;

struct Simplification {
  GroupPresentation presentation;
  /// For each original generator, its value as a word in the surviving generators.
  std::vector<Word> substitution;
  /// For each surviving generator, its original index.
  std::vector<std::size_t> survivors;
  bool effort_exhausted = false;

  Word translate(const Word& original) const;
};

/// Free reduction, generator elimination through relators containing it once, and bounded
/// relator-against-relator shortening. The result presents an isomorphic group.
Simplification tietze_simplify(const GroupPresentation& p, int effort = kDefaultTietzeEffort);

enum class GroupTag { Trivial, Free, FreeAbelian, Unclassified };

struct GroupClass {
  GroupTag tag = GroupTag::Trivial;
  /// Free rank for Free/FreeAbelian; abelianization rank for Unclassified; 0 for Trivial.
  int rank = 0;
  /// Torsion of the abelianization; only ever nonempty for Unclassified.
  std::vector<BigInt> torsion;

  static GroupClass trivial() { return {}; }
  static GroupClass free_group(int k);
  static GroupClass free_abelian_group(int k);

  AbelianInvariants abelianization() const { return {rank, torsion}; }
  bool operator==(const GroupClass&) const = default;
  /// "0", "Z", "F2", "Z^2", or "?[Z^2 + Z/3]".
  std::string to_string() const;
};

const char* tag_name(GroupTag t);
GroupTag parse_tag(std::string_view name);

/// Classification of an already simplified presentation.
GroupClass classify_presentation(const GroupPresentation& simplified);
/// Simplifies, then classifies.
GroupClass classify_group(const GroupPresentation& p, int effort = kDefaultTietzeEffort);

enum class WordVerdict { Trivial, Nontrivial, Unknown };
const char* verdict_name(WordVerdict v);

/// `p` should be the presentation `cls` was read from (normally the simplified one).
WordVerdict word_problem(const GroupPresentation& p, const GroupClass& cls, const Word& w);

}  // namespace perstopy
