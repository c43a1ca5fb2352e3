#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace perstopy {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Finitely generated abelian group Z^rank + Z/t1 + ... + Z/tk with t1 | t2 | ... | tk, ti >= 2.
struct AbelianInvariants {
  int rank = 0;
  std::vector<BigInt> torsion;

  bool operator==(const AbelianInvariants&) const = default;
  std::string to_string() const;
};

/// Nonzero diagonal of the Smith normal form, in divisibility order (all entries positive).
/// Arithmetic is exact: a 64-bit fast path falls back to arbitrary precision on overflow.
std::vector<BigInt> smith_diagonal(const IntMatrix& m);

/// Arbitrary-precision reference elimination; same contract as smith_diagonal.
std::vector<BigInt> smith_diagonal_bigint(const IntMatrix& m);

/// Z^cols modulo the row space of `relations`.
AbelianInvariants cokernel(const IntMatrix& relations);

/// Rank over Q.
std::size_t integer_rank(const IntMatrix& m);

/// Drops torsion (tensoring with Q).
int rationalize(const AbelianInvariants& a);

/// |det| == 1 for a square matrix.
bool is_unimodular(const IntMatrix& m);

}  // namespace perstopy
