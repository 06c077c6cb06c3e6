#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sylsim/common.hpp"
#include "sylsim/fock.hpp"
#include "sylsim/interference.hpp"
#include "sylsim/matrices.hpp"
#include "sylsim/parallel.hpp"
#include "sylsim/permanent.hpp"

namespace sylsim {

/// How the probability mass of one (input, statistics) pair splits over the
/// number of occupied output modes; histogram[k-1] is the probability of
/// exactly k occupied modes, k = 1..min(n, m).
template <typename Prob>
struct OccupancyProfile {
  int particles = 0;
  int mode_count = 0;
  Statistics statistics = Statistics::boson;
  std::vector<Prob> histogram;
  Prob total{};
  Prob mean{};
};

using ExactOccupancyProfile = OccupancyProfile<BigRational>;
using RealOccupancyProfile = OccupancyProfile<double>;

namespace detail {

inline int occupied_count(std::span<const int> modes) { return occupied_modes_of(modes); }

/// Packs the per-row sign bytes of a core, sorted so that any two outputs
/// whose scattering matrices agree up to a row permutation share a key.
/// Pure content-addressed caching; fits 64 bits for n <= 8.
inline std::uint64_t pack_row_key(std::uint8_t* bytes, int n) {
  for (int i = 1; i < n; ++i) {
    const std::uint8_t b = bytes[i];
    int j = i - 1;
    while (j >= 0 && bytes[j] > b) {
      bytes[j + 1] = bytes[j];
      --j;
    }
    bytes[j + 1] = b;
  }
  std::uint64_t key = 0;
  for (int i = 0; i < n; ++i) key |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return key;
}

inline std::int64_t squared_core_from_bits(std::span<const std::uint8_t> bytes, int n,
                                           bool boson) {
  IntMatrix core(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) core.at(i, j) = (bytes[static_cast<std::size_t>(i)] >> j) & 1 ? -1 : 1;
  const std::int64_t v = boson ? ryser_gray<std::int64_t>(core.entries().data(), n)
                               : bareiss_determinant(convert_matrix<std::int64_t>(core));
  return v * v;
}

}  // namespace detail

template <typename U>
OccupancyProfile<probability_t<U>> occupancy_profile(
    const U& u, const FockState& input, Statistics st,
    std::uint64_t budget = kDefaultEnumerationBudget, int threads = 1) {
  using Prob = probability_t<U>;
  constexpr bool exact_core = std::is_same_v<typename U::value_type, int>;
  const int n = input.particles();
  const int m = input.mode_count();
  if (u.size() != m) throw std::invalid_argument("input mode count does not match the matrix size");
  if (st == Statistics::fermion && input.max_multiplicity() > 1)
    throw std::invalid_argument("fermionic input must occupy distinct modes");
  if (st == Statistics::distinguishable && input.max_multiplicity() > 1)
    throw std::invalid_argument("the distinguishable baseline requires distinct input modes");
  if (n > 20) throw capacity_error("occupancy profiles support at most 20 particles");
  const BigInt state_count = output_state_count(n, m);
  if (state_count > BigInt(budget))
    throw budget_error("an occupancy profile over " + state_count.str() +
                       " output states exceeds the enumeration budget of " +
                       std::to_string(budget) + "; raise the budget to proceed");
  const std::uint64_t states = output_state_count_u64(n, m);
  const int buckets = std::min(n, m);

  std::vector<std::int64_t> factorials(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i)
    factorials[static_cast<std::size_t>(i)] = factorials[static_cast<std::size_t>(i - 1)] * i;

  // Common denominator: m^n for the distinguishable multinomial, otherwise
  // m^n * n! * prod(mu!) with numerators core^2 * n!/prod(nu!). Every term
  // is non-negative and the terms sum to the denominator, so the 128-bit
  // accumulators cannot overflow once the denominator fits well inside them.
  const BigInt denominator =
      st == Statistics::distinguishable
          ? pow_int(BigInt(m), n)
          : pow_int(BigInt(m), n) * factorial(n) * input.multiplicity_factorial_product();
  if (boost::multiprecision::msb(denominator) > 120)
    throw capacity_error("occupancy accumulator would overflow 128 bits at this size");

  std::vector<Int128> exact_acc(static_cast<std::size_t>(buckets) + 1, Int128(0));
  std::vector<double> real_acc(static_cast<std::size_t>(buckets) + 1, 0.0);

  if (st == Statistics::distinguishable) {
    auto worker = [&](std::uint64_t b, std::uint64_t e) {
      std::vector<Int128> acc(static_cast<std::size_t>(buckets) + 1, Int128(0));
      OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
        acc[static_cast<std::size_t>(detail::occupied_count(modes))] +=
            detail::multinomial_weight(modes, factorials);
      });
      return acc;
    };
    for (const auto& acc : run_partitioned<std::vector<Int128>>(states, threads, worker))
      for (std::size_t k = 0; k < acc.size(); ++k) exact_acc[k] += acc[k];
  } else if constexpr (exact_core) {
    // Sign rows of the core over the fixed input columns, plus n-bit packed
    // forms for the content-addressed cache (n <= 8 only).
    std::vector<std::vector<int>> sign_rows(static_cast<std::size_t>(m) + 1);
    std::vector<std::uint8_t> mode_bits(static_cast<std::size_t>(m) + 1, 0);
    for (int g = 1; g <= m; ++g) {
      auto& row = sign_rows[static_cast<std::size_t>(g)];
      row.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        const int s = u.entry(g, input.mode(j));
        row[static_cast<std::size_t>(j)] = s;
        if (s < 0) mode_bits[static_cast<std::size_t>(g)] |= static_cast<std::uint8_t>(1u << j);
      }
    }
    const bool boson = st == Statistics::boson;
    const bool cacheable = n <= 8;
    auto worker = [&](std::uint64_t b, std::uint64_t e) {
      std::vector<Int128> acc(static_cast<std::size_t>(buckets) + 1, Int128(0));
      std::unordered_map<std::uint64_t, std::int64_t> cache;
      if (cacheable) cache.reserve(1u << 14);
      IntMatrix core(n);
      std::array<std::uint8_t, 8> bytes{};
      OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
        std::int64_t squared;
        if (cacheable) {
          for (int i = 0; i < n; ++i)
            bytes[static_cast<std::size_t>(i)] =
                mode_bits[static_cast<std::size_t>(modes[static_cast<std::size_t>(i)])];
          const std::uint64_t key = detail::pack_row_key(bytes.data(), n);
          const auto it = cache.find(key);
          if (it != cache.end()) {
            squared = it->second;
          } else {
            squared = detail::squared_core_from_bits(
                std::span<const std::uint8_t>(bytes.data(), static_cast<std::size_t>(n)), n,
                boson);
            cache.emplace(key, squared);
          }
        } else {
          for (int i = 0; i < n; ++i) {
            const auto& row =
                sign_rows[static_cast<std::size_t>(modes[static_cast<std::size_t>(i)])];
            for (int j = 0; j < n; ++j) core.at(i, j) = row[static_cast<std::size_t>(j)];
          }
          const BigInt value = boson ? permanent_ryser(core) : determinant_exact(core);
          const std::int64_t v = value.convert_to<std::int64_t>();
          squared = v * v;
        }
        acc[static_cast<std::size_t>(detail::occupied_count(modes))] +=
            static_cast<Int128>(squared) * detail::multinomial_weight(modes, factorials);
      });
      return acc;
    };
    for (const auto& acc : run_partitioned<std::vector<Int128>>(states, threads, worker))
      for (std::size_t k = 0; k < acc.size(); ++k) exact_acc[k] += acc[k];
  } else {
    std::vector<std::vector<std::complex<double>>> rows(static_cast<std::size_t>(m) + 1);
    for (int g = 1; g <= m; ++g) {
      auto& row = rows[static_cast<std::size_t>(g)];
      row.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = u.entry(g, input.mode(j));
    }
    const bool boson = st == Statistics::boson;
    auto worker = [&](std::uint64_t b, std::uint64_t e) {
      std::vector<double> acc(static_cast<std::size_t>(buckets) + 1, 0.0);
      ComplexMatrix core(n);
      OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
        for (int i = 0; i < n; ++i) {
          const auto& row = rows[static_cast<std::size_t>(modes[static_cast<std::size_t>(i)])];
          for (int j = 0; j < n; ++j) core.at(i, j) = row[static_cast<std::size_t>(j)];
        }
        const std::complex<double> value = boson ? permanent_ryser(core) : determinant(core);
        acc[static_cast<std::size_t>(detail::occupied_count(modes))] +=
            std::norm(value) *
            static_cast<double>(detail::multinomial_weight(modes, factorials));
      });
      return acc;
    };
    for (const auto& acc : run_partitioned<std::vector<double>>(states, threads, worker))
      for (std::size_t k = 0; k < acc.size(); ++k) real_acc[k] += acc[k];
  }

  OccupancyProfile<Prob> profile;
  profile.particles = n;
  profile.mode_count = m;
  profile.statistics = st;
  profile.histogram.resize(static_cast<std::size_t>(buckets));
  if constexpr (std::is_same_v<Prob, BigRational>) {
    BigInt mean_numerator = 0;
    BigInt total_numerator = 0;
    for (int k = 1; k <= buckets; ++k) {
      const BigInt numer = int128_to_big(exact_acc[static_cast<std::size_t>(k)]);
      profile.histogram[static_cast<std::size_t>(k - 1)] = BigRational(numer, denominator);
      total_numerator += numer;
      mean_numerator += numer * k;
    }
    profile.total = BigRational(total_numerator, denominator);
    profile.mean = BigRational(mean_numerator, denominator);
  } else {
    const double denom = denominator.convert_to<double>();
    double total = 0.0;
    double mean = 0.0;
    for (int k = 1; k <= buckets; ++k) {
      double numer = real_acc[static_cast<std::size_t>(k)];
      if (st == Statistics::distinguishable)
        numer = static_cast<double>(exact_acc[static_cast<std::size_t>(k)]);
      const double p = numer / denom;
      profile.histogram[static_cast<std::size_t>(k - 1)] = p;
      total += p;
      mean += p * k;
    }
    profile.total = total;
    profile.mean = mean;
  }
  return profile;
}

/// Expected number of occupied output modes for distinguishable particles:
/// m * (1 - (1 - 1/m)^n), exactly.
inline BigRational distinguishable_mean_closed_form(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
  return {pow_int(BigInt(m), n) - pow_int(BigInt(m) - 1, n), pow_int(BigInt(m), n - 1)};
}

/// Probability that all n bosons leave through one given output mode:
/// n!/m^n for a block input, which is n!/m^m in the n = m case.
inline BigRational full_bunching_probability(int n, int m) {
  if (n < 1 || m < n) throw std::invalid_argument("need 1 <= n <= m");
  return {factorial(n), pow_int(BigInt(m), n)};
}

struct RatioPoint {
  int mode_count = 0;
  BigRational boson_mean;
  BigRational distinguishable_mean;
  BigRational ratio;  // boson mean over distinguishable mean
};

/// Mean-occupancy ratio curve at fixed n over a list of mode counts, with
/// the boson mean from exact enumeration (block-0 input) and the
/// distinguishable mean from the closed form.
inline std::vector<RatioPoint> occupancy_ratio_curve(
    int n, std::span<const int> mode_counts, std::uint64_t budget = kDefaultEnumerationBudget,
    int threads = 1) {
  std::vector<RatioPoint> points;
  points.reserve(mode_counts.size());
  for (int m : mode_counts) {
    const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(m)));
    const FockState input = standard_input(n, 0, m);
    const auto profile = occupancy_profile(u, input, Statistics::boson, budget, threads);
    RatioPoint point;
    point.mode_count = m;
    point.boson_mean = profile.mean;
    point.distinguishable_mean = distinguishable_mean_closed_form(n, m);
    point.ratio = point.boson_mean / point.distinguishable_mean;
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace sylsim
