#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sylsim/common.hpp"
#include "sylsim/parallel.hpp"

namespace sylsim {

/// An n-particle Fock state on m modes, stored as the sorted list of occupied
/// 1-based mode indices (t_1 <= ... <= t_n). Value object; the multiplicity
/// vector is derived on demand.
class FockState {
 public:
  FockState(std::vector<int> modes, int mode_count)
      : mode_count_(mode_count), modes_(std::move(modes)) {
    if (mode_count_ < 1) throw std::invalid_argument("mode count must be positive");
    if (modes_.empty()) throw std::invalid_argument("Fock state needs at least one particle");
    std::sort(modes_.begin(), modes_.end());
    if (modes_.front() < 1 || modes_.back() > mode_count_)
      throw std::invalid_argument("mode index outside [1, m]");
  }

  int particles() const { return static_cast<int>(modes_.size()); }
  int mode_count() const { return mode_count_; }
  const std::vector<int>& modes() const { return modes_; }
  int mode(int i) const { return modes_[static_cast<std::size_t>(i)]; }  // 0-based position

  std::vector<int> multiplicities() const {
    std::vector<int> mult(static_cast<std::size_t>(mode_count_), 0);
    for (int t : modes_) ++mult[static_cast<std::size_t>(t - 1)];
    return mult;
  }

  int occupied_modes() const {
    int count = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i)
      if (i == 0 || modes_[i] != modes_[i - 1]) ++count;
    return count;
  }

  int max_multiplicity() const {
    int best = 0, run = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      run = (i > 0 && modes_[i] == modes_[i - 1]) ? run + 1 : 1;
      best = std::max(best, run);
    }
    return best;
  }

  /// Product of the factorials of all mode occupations.
  BigInt multiplicity_factorial_product() const {
    BigInt prod = 1;
    int run = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      run = (i > 0 && modes_[i] == modes_[i - 1]) ? run + 1 : 1;
      if (run > 1) prod *= run;
    }
    return prod;
  }

  bool operator==(const FockState&) const = default;

 private:
  int mode_count_;
  std::vector<int> modes_;
};

/// Number of n-particle output states on m modes: C(m+n-1, n).
inline BigInt output_state_count(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
  return binomial(m + n - 1, n);
}

inline std::uint64_t output_state_count_u64(int n, int m) {
  return checked_u64(output_state_count(n, m), "output state count");
}

namespace detail {

/// Occupation-number helpers shared by the hot enumeration loops; `modes` is
/// a sorted 1-based mode list.
inline int occupied_modes_of(std::span<const int> modes) {
  int count = 0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (i == 0 || modes[i] != modes[i - 1]) ++count;
  return count;
}

inline bool has_repeated_mode(std::span<const int> modes) {
  for (std::size_t i = 1; i < modes.size(); ++i)
    if (modes[i] == modes[i - 1]) return true;
  return false;
}

/// n! / (prod of occupation factorials), an exact integer (multinomial).
inline std::int64_t multinomial_weight(std::span<const int> modes,
                                       std::span<const std::int64_t> factorials) {
  std::int64_t w = factorials[modes.size()];
  int run = 1;
  for (std::size_t i = 1; i <= modes.size(); ++i) {
    if (i < modes.size() && modes[i] == modes[i - 1]) {
      ++run;
    } else {
      w /= factorials[static_cast<std::size_t>(run)];
      run = 1;
    }
  }
  return w;
}

}  // namespace detail

/// Fills `modes` with the colexicographically first state (1, 1, ..., 1).
inline void first_output_state(std::span<int> modes) {
  std::fill(modes.begin(), modes.end(), 1);
}

/// Advances a sorted state to its colexicographic successor on m modes;
/// returns false once the last state (m, ..., m) has been passed.
inline bool next_output_state(std::span<int> modes, int m) {
  const int n = static_cast<int>(modes.size());
  for (int i = 0; i < n; ++i) {
    const int cap = (i + 1 < n) ? modes[static_cast<std::size_t>(i + 1)] : m;
    if (modes[static_cast<std::size_t>(i)] < cap) {
      ++modes[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) modes[static_cast<std::size_t>(j)] = 1;
      return true;
    }
  }
  return false;
}

namespace detail {

/// Binomial table C(k, i) for k <= rows-1, i <= cols-1, saturated at
/// uint64 max so overflowing entries stay unusable rather than wrapping.
class BinomialTable {
 public:
  BinomialTable(int rows, int cols) : cols_(cols), values_(static_cast<std::size_t>(rows) * cols) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    for (int k = 0; k < rows; ++k) {
      for (int i = 0; i < cols; ++i) {
        std::uint64_t v;
        if (i == 0) {
          v = 1;
        } else if (k == 0) {
          v = 0;
        } else {
          const std::uint64_t a = get(k - 1, i - 1);
          const std::uint64_t b = get(k - 1, i);
          v = (a == kMax || b == kMax || a > kMax - b) ? kMax : a + b;
        }
        values_[static_cast<std::size_t>(k) * cols_ + i] = v;
      }
    }
  }

  std::uint64_t get(int k, int i) const {
    if (k < 0 || i < 0) return i == 0 ? 1 : 0;
    if (i >= cols_) return 0;
    return values_[static_cast<std::size_t>(k) * cols_ + i];
  }

 private:
  int cols_;
  std::vector<std::uint64_t> values_;
};

}  // namespace detail

/// Colexicographic rank of a sorted state: with 0-based modes b_i and the
/// strictly increasing image k_i = b_i + i, rank = sum_i C(k_i, i+1).
inline std::uint64_t output_state_rank(std::span<const int> modes, int m) {
  const int n = static_cast<int>(modes.size());
  detail::BinomialTable table(m + n, n + 1);
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    const int k = modes[static_cast<std::size_t>(i)] - 1 + i;
    const std::uint64_t c = table.get(k, i + 1);
    if (c == std::numeric_limits<std::uint64_t>::max())
      throw capacity_error("state rank does not fit in 64 bits");
    rank += c;
  }
  return rank;
}

/// Inverse of output_state_rank.
inline void output_state_unrank(std::uint64_t rank, int m, std::span<int> modes) {
  const int n = static_cast<int>(modes.size());
  detail::BinomialTable table(m + n, n + 1);
  for (int i = n - 1; i >= 0; --i) {
    int k = i;  // smallest admissible image value for position i
    while (table.get(k + 1, i + 1) <= rank && k + 1 <= m - 1 + i) ++k;
    rank -= table.get(k, i + 1);
    modes[static_cast<std::size_t>(i)] = k - i + 1;
  }
}

/// A restartable stream over a contiguous colex rank range of the sorted
/// n-particle states on m modes; split() partitions it for parallel use.
class OutputStateRange {
 public:
  OutputStateRange(int n, int m)
      : OutputStateRange(n, m, 0, output_state_count_u64(n, m)) {}

  OutputStateRange(int n, int m, std::uint64_t begin, std::uint64_t end)
      : n_(n), m_(m), begin_(begin), end_(end) {
    if (n < 1 || m < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
    const std::uint64_t total = output_state_count_u64(n, m);
    if (begin > end || end > total) throw std::out_of_range("rank range out of bounds");
  }

  int particles() const { return n_; }
  int mode_count() const { return m_; }
  std::uint64_t begin_rank() const { return begin_; }
  std::uint64_t end_rank() const { return end_; }
  std::uint64_t size() const { return end_ - begin_; }

  /// Calls fn(modes, rank) for every state of the range in colex order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    if (begin_ == end_) return;
    std::vector<int> modes(static_cast<std::size_t>(n_));
    if (begin_ == 0)
      first_output_state(modes);
    else
      output_state_unrank(begin_, m_, modes);
    for (std::uint64_t rank = begin_; rank < end_; ++rank) {
      fn(std::span<const int>(modes), rank);
      if (rank + 1 < end_ && !next_output_state(modes, m_))
        throw std::logic_error("state stream exhausted before its end rank");
    }
  }

  std::vector<OutputStateRange> split(int parts) const;

  std::vector<FockState> collect() const {
    std::vector<FockState> states;
    states.reserve(static_cast<std::size_t>(size()));
    for_each([&](std::span<const int> modes, std::uint64_t) {
      states.emplace_back(std::vector<int>(modes.begin(), modes.end()), m_);
    });
    return states;
  }

 private:
  int n_, m_;
  std::uint64_t begin_, end_;
};

inline std::vector<OutputStateRange> OutputStateRange::split(int parts) const {
  std::vector<OutputStateRange> out;
  for (auto [b, e] : partition_ranges(size(), parts)) out.emplace_back(n_, m_, begin_ + b, begin_ + e);
  return out;
}

/// Enumerates all n-particle output states on m modes in colex order.
inline OutputStateRange enumerate_outputs(int n, int m) { return {n, m}; }

/// Standard input block: one particle per mode on the contiguous modes
/// 1 + n*c, ..., n + n*c. Requires n = 2^q, m = 2^p, q <= p, 0 <= c < m/n.
inline FockState standard_input(int n, int c, int m) {
  if (n < 1 || !is_power_of_two(static_cast<std::uint64_t>(n)))
    throw std::invalid_argument("particle count must be a power of two");
  if (m < n || !is_power_of_two(static_cast<std::uint64_t>(m)))
    throw std::invalid_argument("mode count must be a power of two with m >= n");
  if (c < 0 || c > m / n - 1) throw std::invalid_argument("block offset c outside [0, m/n - 1]");
  std::vector<int> modes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) modes[static_cast<std::size_t>(i)] = 1 + i + n * c;
  return {std::move(modes), m};
}

/// The n x n scattering submatrix for a transition: row i takes the output
/// mode h_i, column j the input mode g_j, entries U[h_i][g_j] of the
/// unscaled core. The factored-out scale is (1/sqrt(m))^n per amplitude.
template <typename Matrix>
struct ScatteringMatrix {
  SquareMatrix<typename Matrix::value_type> core;
  int scale_half_exponent = 0;  // number of 1/sqrt(m) factors carried outside
  FockState input;
  FockState output;
};

template <typename Matrix>
ScatteringMatrix<Matrix> scattering_matrix(const Matrix& u, const FockState& input,
                                           const FockState& output) {
  if (input.particles() != output.particles())
    throw std::invalid_argument("input and output particle numbers differ");
  if (input.mode_count() != u.size() || output.mode_count() != u.size())
    throw std::invalid_argument("state mode count does not match the matrix size");
  const int n = input.particles();
  SquareMatrix<typename Matrix::value_type> core(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) core.at(i, j) = u.entry(output.mode(i), input.mode(j));
  return {std::move(core), n, input, output};
}

}  // namespace sylsim
