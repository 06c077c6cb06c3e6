#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sylsim {

/// Arbitrary-precision signed integer used for exact counts, permanents and
/// determinants once fixed-width kernels no longer fit.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number; all Sylvester-case probabilities are of this type.
using BigRational = boost::multiprecision::cpp_rational;

using Int128 = __int128;

enum class Statistics { boson, fermion, distinguishable };

inline std::string to_string(Statistics s) {
  switch (s) {
    case Statistics::boson: return "boson";
    case Statistics::fermion: return "fermion";
    case Statistics::distinguishable: return "distinguishable";
  }
  throw std::logic_error("unknown statistics");
}

inline Statistics statistics_from_string(const std::string& s) {
  if (s == "boson") return Statistics::boson;
  if (s == "fermion") return Statistics::fermion;
  if (s == "distinguishable") return Statistics::distinguishable;
  throw std::invalid_argument("unknown statistics '" + s +
                              "' (expected boson, fermion or distinguishable)");
}

/// Thrown when a requested size exceeds a configured construction cap.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when an enumeration would exceed the configured state budget.
class budget_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

constexpr bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Exact log2 of a power of two; throws otherwise.
inline int log2_exact(std::uint64_t v) {
  if (!is_power_of_two(v)) throw std::invalid_argument("value is not a power of two");
  int p = 0;
  while (v > 1) {
    v >>= 1;
    ++p;
  }
  return p;
}

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact at every step
  }
  return r;
}

inline BigInt pow_int(BigInt base, int exp) {
  if (exp < 0) throw std::invalid_argument("negative integer exponent");
  BigInt r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// Converts a BigInt known to be small enough into uint64, throwing otherwise.
inline std::uint64_t checked_u64(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw capacity_error(std::string(what) + " does not fit in 64 bits");
  return v.convert_to<std::uint64_t>();
}

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

inline BigInt int128_to_big(Int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? -r : r;
}

/// Dense row-major square matrix; indices 0-based at this level.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int order, T fill = T{})
      : order_(order), entries_(static_cast<std::size_t>(order) * order, fill) {
    if (order < 0) throw std::invalid_argument("matrix order must be non-negative");
  }

  int order() const { return order_; }
  T& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * order_ + j]; }
  const T& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * order_ + j]; }
  std::span<const T> row(int i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * order_, static_cast<std::size_t>(order_)};
  }
  const std::vector<T>& entries() const { return entries_; }
  std::vector<T>& entries() { return entries_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  int order_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = SquareMatrix<int>;
using ComplexMatrix = SquareMatrix<std::complex<double>>;

}  // namespace sylsim
