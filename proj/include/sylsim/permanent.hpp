#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>

#include "sylsim/common.hpp"

namespace sylsim {

inline constexpr int kRyserOrderCap = 30;
inline constexpr int kNaiveOrderCap = 9;

namespace detail {

/// Ryser's formula evaluated over the subsets of columns in Gray-code order,
/// so each subset costs one row-sum update plus one product:
///   perm A = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} a_ij
template <typename Acc, typename T>
Acc ryser_gray(const T* a, int n) {
  if (n == 0) return Acc(1);
  std::array<Acc, 64> sums{};
  Acc total(0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t next = k ^ (k >> 1);
    const bool added = (next & (std::uint64_t{1} << j)) != 0;
    for (int i = 0; i < n; ++i) {
      const Acc v(a[static_cast<std::size_t>(i) * n + j]);
      sums[static_cast<std::size_t>(i)] += added ? v : -v;
    }
    gray = next;
    Acc term = sums[0];
    for (int i = 1; i < n; ++i) term *= sums[static_cast<std::size_t>(i)];
    const int parity = (n - std::popcount(gray)) & 1;
    total += parity ? -term : term;
  }
  return total;
}

/// Bits needed for the worst-case Ryser accumulation on an order-n matrix
/// with entries bounded by mag: 2^n subsets, each term at most (n*mag)^n.
inline double ryser_bits(int n, std::int64_t mag) {
  if (n == 0 || mag == 0) return 1.0;
  return n + n * std::log2(static_cast<double>(n) * static_cast<double>(mag)) + 1.0;
}

inline std::int64_t max_abs_entry(const IntMatrix& a) {
  std::int64_t mag = 0;
  for (int v : a.entries()) mag = std::max<std::int64_t>(mag, std::abs(static_cast<std::int64_t>(v)));
  return mag;
}

/// Fraction-free Gaussian elimination (Bareiss); every division is exact and
/// every intermediate entry is a minor of the input matrix.
template <typename T>
T bareiss_determinant(SquareMatrix<T> m) {
  const int n = m.order();
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == T(0)) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != T(0)) {
          pivot = i;
          break;
        }
      if (pivot < 0) return T(0);
      for (int j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = T(0);
    }
    prev = m.at(k, k);
  }
  const T det = m.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

/// Bits needed for Bareiss on an order-n matrix with entries bounded by mag:
/// intermediates are minors, Hadamard-bounded by (mag^2 * (n-1))^((n-1)/2),
/// and the pre-division update multiplies two of them.
inline double bareiss_bits(int n, std::int64_t mag) {
  if (n <= 1 || mag == 0) return 2.0 + std::log2(static_cast<double>(std::max<std::int64_t>(mag, 1)));
  const double d = n - 1;
  return 2.0 + d * std::log2(d * static_cast<double>(mag) * static_cast<double>(mag));
}

template <typename T>
SquareMatrix<T> convert_matrix(const IntMatrix& a) {
  SquareMatrix<T> out(a.order());
  for (std::size_t i = 0; i < a.entries().size(); ++i) out.entries()[i] = T(a.entries()[i]);
  return out;
}

}  // namespace detail

/// Exact permanent by Ryser's formula with Gray-code subset updates,
/// O(2^n * n). The accumulator width is chosen from a worst-case bound on
/// the entry magnitudes; beyond 128 bits it promotes to arbitrary precision.
inline BigInt permanent_ryser(const IntMatrix& a, int order_cap = kRyserOrderCap) {
  const int n = a.order();
  if (n > order_cap)
    throw capacity_error("permanent order " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(order_cap));
  const double bits = detail::ryser_bits(n, detail::max_abs_entry(a));
  if (bits <= 62.0) return BigInt(detail::ryser_gray<std::int64_t>(a.entries().data(), n));
  if (bits <= 126.0) return int128_to_big(detail::ryser_gray<Int128>(a.entries().data(), n));
  return detail::ryser_gray<BigInt>(a.entries().data(), n);
}

/// Permanent of a complex matrix (Fourier cores); same Gray-code scheme in
/// floating point.
inline std::complex<double> permanent_ryser(const ComplexMatrix& a) {
  return detail::ryser_gray<std::complex<double>>(a.entries().data(), a.order());
}

namespace detail {

template <typename Acc, typename T>
Acc permanent_by_permutations(const SquareMatrix<T>& a) {
  const int n = a.order();
  if (n > kNaiveOrderCap)
    throw capacity_error("naive permanent order " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(kNaiveOrderCap));
  if (n == 0) return Acc(1);
  std::array<int, kNaiveOrderCap> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);
  Acc total(0);
  do {
    Acc prod(1);
    for (int i = 0; i < n; ++i) prod *= Acc(a.at(i, perm[static_cast<std::size_t>(i)]));
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return total;
}

}  // namespace detail

/// Literal sum over all permutations; the factorial-time oracle used to
/// cross-validate the Ryser engine.
inline BigInt permanent_naive(const IntMatrix& a) {
  return int128_to_big(detail::permanent_by_permutations<Int128>(a));
}

inline std::complex<double> permanent_naive(const ComplexMatrix& a) {
  return detail::permanent_by_permutations<std::complex<double>>(a);
}

/// Exact integer determinant via fraction-free (Bareiss) elimination.
inline BigInt determinant_exact(const IntMatrix& a) {
  const int n = a.order();
  const double bits = detail::bareiss_bits(n, detail::max_abs_entry(a));
  if (bits <= 62.0) return BigInt(detail::bareiss_determinant(detail::convert_matrix<std::int64_t>(a)));
  if (bits <= 126.0) return int128_to_big(detail::bareiss_determinant(detail::convert_matrix<Int128>(a)));
  return detail::bareiss_determinant(detail::convert_matrix<BigInt>(a));
}

/// Floating-point determinant with partial pivoting, for complex cores.
inline std::complex<double> determinant(const ComplexMatrix& a) {
  const int n = a.order();
  if (n == 0) return 1.0;
  ComplexMatrix m = a;
  std::complex<double> det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(m.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double mag = std::abs(m.at(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      det = -det;
    }
    det *= m.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const std::complex<double> f = m.at(i, k) / m.at(k, k);
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return det;
}

/// The vanishing criterion for row-selected Sylvester submatrices: with
/// 0-based row indices, perm = 0 when the bitwise XOR of the indices is
/// nonzero, and (for square order-2^p selections, p > 1) nonzero otherwise.
/// Returns true exactly when the XOR is nonzero, i.e. "suppressed".
inline bool xor_vanishing_test(std::span<const int> rows, int exponent) {
  if (exponent < 0 || exponent > 62) throw std::invalid_argument("invalid Sylvester exponent");
  const std::int64_t m = std::int64_t{1} << exponent;
  std::int64_t acc = 0;
  for (int r : rows) {
    if (r < 0 || r >= m) throw std::out_of_range("row index outside [0, 2^p)");
    acc ^= r;
  }
  return acc != 0;
}

}  // namespace sylsim
