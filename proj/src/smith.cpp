#include "perstopy/smith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace perstopy {

namespace {

struct Overflow {};

// Checked arithmetic for the fast path.
struct Checked {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
};

template <class T>
T abs_val(const T& v) {
  return v < 0 ? T(-v) : v;
}

template <class T>
T gcd_val(T a, T b) {
  a = abs_val(a);
  b = abs_val(b);
  while (b != 0) {
    T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class T>
T mul(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return Checked::mul(a, b);
  } else {
    return a * b;
  }
}

template <class T>
T sub(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return Checked::sub(a, b);
  } else {
    return a - b;
  }
}

// Elimination over a dense matrix of T. Returns the raw diagonal (unsorted, possibly not
// in divisibility order); the caller normalizes.
template <class T>
std::vector<T> eliminate(std::vector<std::vector<T>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<T> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero magnitude in the trailing block, prefer sparse rows.
    bool found = false;
    std::size_t pr = 0, pc = 0;
    T best = 0;
    std::size_t best_nnz = 0;
    for (std::size_t i = t; i < rows; ++i) {
      std::size_t nnz = 0;
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0) ++nnz;
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        T v = abs_val(a[i][j]);
        if (!found || v < best || (v == best && nnz < best_nnz)) {
          found = true;
          best = v;
          best_nnz = nnz;
          pr = i;
          pc = j;
        }
      }
      if (found && best == 1 && best_nnz == 1) break;
    }
    if (!found) break;
    std::swap(a[t], a[pr]);
    if (pc != t)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        T q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j)
          if (a[t][j] != 0) a[i][j] = sub(a[i][j], mul(q, a[t][j]));
        if (a[i][t] != 0) {
          // Remainder smaller than pivot: swap it up and restart.
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        T q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i)
          if (a[i][t] != 0) a[i][j] = sub(a[i][j], mul(q, a[i][t]));
        if (a[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs_val(a[t][t]));
    ++t;
  }
  return diag;
}

std::vector<BigInt> normalize(std::vector<BigInt> d) {
  // gcd/lcm passes bring any diagonal into divisibility order.
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = gcd_val(d[i], d[j]);
      if (g == 0) continue;
      BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::vector<BigInt> smith_diagonal_bigint(const IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
  return normalize(eliminate<BigInt>(std::move(a), m.cols));
}

std::vector<BigInt> smith_diagonal(const IntMatrix& m) {
  try {
    std::vector<std::vector<std::int64_t>> a(m.rows, std::vector<std::int64_t>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
    auto raw = eliminate<std::int64_t>(std::move(a), m.cols);
    std::vector<BigInt> d(raw.begin(), raw.end());
    return normalize(std::move(d));
  } catch (const Overflow&) {
    return smith_diagonal_bigint(m);
  }
}

AbelianInvariants cokernel(const IntMatrix& relations) {
  auto d = smith_diagonal(relations);
  AbelianInvariants out;
  out.rank = static_cast<int>(relations.cols) - static_cast<int>(d.size());
  for (const auto& v : d)
    if (v > 1) out.torsion.push_back(v);
  return out;
}

std::size_t integer_rank(const IntMatrix& m) { return smith_diagonal(m).size(); }

int rationalize(const AbelianInvariants& a) { return a.rank; }

bool is_unimodular(const IntMatrix& m) {
  if (m.rows != m.cols) return false;
  if (m.rows == 0) return true;
  auto d = smith_diagonal(m);
  if (d.size() != m.rows) return false;
  return std::all_of(d.begin(), d.end(), [](const BigInt& v) { return v == 1; });
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace perstopy
