#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "sylsim/common.hpp"

namespace sylsim {

inline constexpr int kDefaultMaxSylvesterExponent = 8;  // m <= 256
inline constexpr int kDefaultMaxFourierModes = 256;

/// Sign of the (i, j) entry of the order-2^p Sylvester-Hadamard matrix,
/// rows and columns counted from 0: (-1)^(i_B . j_B) with the bitwise
/// dot-product reduced mod 2, i.e. the parity of popcount(i & j).
inline int sylvester_element(int exponent, int i, int j) {
  if (exponent < 0) throw std::invalid_argument("negative Sylvester exponent");
  const std::uint64_t m = std::uint64_t{1} << exponent;
  if (i < 0 || j < 0 || static_cast<std::uint64_t>(i) >= m || static_cast<std::uint64_t>(j) >= m)
    throw std::out_of_range("Sylvester element index out of range");
  const auto bits = std::popcount(static_cast<std::uint64_t>(i) & static_cast<std::uint64_t>(j));
  return (bits & 1) ? -1 : 1;
}

/// Real Hadamard matrix of order m = 2^p built by recursive doubling.
/// Entries are the exact +-1 core; the physical unitary is entries / sqrt(m),
/// with the scale carried symbolically so downstream arithmetic stays exact.
class SylvesterMatrix {
 public:
  using value_type = int;

  static SylvesterMatrix build(int exponent, int max_exponent = kDefaultMaxSylvesterExponent) {
    return SylvesterMatrix(exponent, max_exponent);
  }

  int exponent() const { return exponent_; }
  int size() const { return size_; }

  /// Entry of the +-1 core, modes 1-based.
  int entry(int row, int col) const {
    if (row < 1 || col < 1 || row > size_ || col > size_)
      throw std::out_of_range("Sylvester entry index out of range");
    return entries_[static_cast<std::size_t>(row - 1) * size_ + (col - 1)];
  }

  const std::vector<std::int8_t>& entries() const { return entries_; }

 private:
  SylvesterMatrix(int exponent, int max_exponent) : exponent_(exponent) {
    if (exponent < 0) throw std::invalid_argument("negative Sylvester exponent");
    if (exponent > max_exponent)
      throw capacity_error("Sylvester exponent " + std::to_string(exponent) +
                           " exceeds the cap of " + std::to_string(max_exponent));
    size_ = 1 << exponent;
    entries_.assign(static_cast<std::size_t>(size_) * size_, 1);
    // H(2^p) = [H, H; H, -H], starting from H(1) = [1].
    for (int half = 1; half < size_; half *= 2) {
      for (int i = 0; i < half; ++i) {
        for (int j = 0; j < half; ++j) {
          const std::int8_t v = at(i, j);
          at(i, j + half) = v;
          at(i + half, j) = v;
          at(i + half, j + half) = static_cast<std::int8_t>(-v);
        }
      }
    }
    for (int i = 0; i < size_; ++i)
      for (int j = 0; j < size_; ++j)
        if (at(i, j) != sylvester_element(exponent_, i, j))
          throw std::logic_error("Sylvester recursion disagrees with the closed form");
  }

  std::int8_t& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * size_ + j]; }
  std::int8_t at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * size_ + j]; }

  int exponent_ = 0;
  int size_ = 1;
  std::vector<std::int8_t> entries_;
};

/// Complex Hadamard matrix with F[j][k] = exp(2 pi i (j-1)(k-1) / m), modes
/// 1-based; the unitary is entries / sqrt(m). Used as the comparison family.
class FourierMatrix {
 public:
  using value_type = std::complex<double>;

  static FourierMatrix build(int modes, int max_modes = kDefaultMaxFourierModes) {
    return FourierMatrix(modes, max_modes);
  }

  int size() const { return size_; }

  std::complex<double> entry(int row, int col) const {
    if (row < 1 || col < 1 || row > size_ || col > size_)
      throw std::out_of_range("Fourier entry index out of range");
    return entries_[static_cast<std::size_t>(row - 1) * size_ + (col - 1)];
  }

  const std::vector<std::complex<double>>& entries() const { return entries_; }

 private:
  FourierMatrix(int modes, int max_modes) : size_(modes) {
    if (modes < 1) throw std::invalid_argument("Fourier matrix needs at least one mode");
    if (modes > max_modes)
      throw capacity_error("Fourier size " + std::to_string(modes) + " exceeds the cap of " +
                           std::to_string(max_modes));
    entries_.resize(static_cast<std::size_t>(size_) * size_);
    for (int j = 0; j < size_; ++j) {
      for (int k = 0; k < size_; ++k) {
        // Reduce the exponent mod m before evaluating for accuracy.
        const long long r = (static_cast<long long>(j) * k) % size_;
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / size_;
        entries_[static_cast<std::size_t>(j) * size_ + k] = std::polar(1.0, phase);
      }
    }
  }

  int size_ = 1;
  std::vector<std::complex<double>> entries_;
};

inline SylvesterMatrix build_sylvester(int exponent,
                                       int max_exponent = kDefaultMaxSylvesterExponent) {
  return SylvesterMatrix::build(exponent, max_exponent);
}

inline FourierMatrix build_fourier(int modes, int max_modes = kDefaultMaxFourierModes) {
  return FourierMatrix::build(modes, max_modes);
}

}  // namespace sylsim
