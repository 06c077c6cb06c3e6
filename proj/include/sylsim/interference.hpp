#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sylsim/common.hpp"
#include "sylsim/fock.hpp"
#include "sylsim/matrices.hpp"
#include "sylsim/parallel.hpp"
#include "sylsim/permanent.hpp"

namespace sylsim {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Probability representation per matrix family: exact rationals for the
/// integer +-1 cores, floating point for the complex ones.
template <typename U>
using probability_t =
    std::conditional_t<std::is_same_v<typename U::value_type, int>, BigRational, double>;

/// Exact amplitude data for one transition. The physical amplitude is
/// amplitude_core / (m^(scale_exponent/2) * sqrt(normalization)); the
/// probability is carried as an exact rational so zeros are exact.
struct AmplitudeResult {
  BigInt amplitude_core;    // permanent (bosons) or determinant (fermions) of the sign core
  BigInt normalization;     // product of input and output occupation factorials
  int scale_exponent = 0;   // power of m dividing the probability
  BigRational probability;  // amplitude_core^2 / (m^scale_exponent * normalization)
};

struct ComplexAmplitudeResult {
  std::complex<double> amplitude;  // fully scaled
  double probability = 0.0;
};

namespace detail {

inline void require_interfering(Statistics st) {
  if (st != Statistics::boson && st != Statistics::fermion)
    throw std::invalid_argument("amplitudes are defined for boson or fermion statistics");
}

}  // namespace detail

template <typename U>
  requires std::is_same_v<typename U::value_type, int>
AmplitudeResult amplitude(const U& u, const FockState& input, const FockState& output,
                          Statistics st) {
  detail::require_interfering(st);
  const auto s = scattering_matrix(u, input, output);
  AmplitudeResult r;
  r.amplitude_core = st == Statistics::boson ? permanent_ryser(s.core) : determinant_exact(s.core);
  r.normalization =
      input.multiplicity_factorial_product() * output.multiplicity_factorial_product();
  r.scale_exponent = input.particles();
  r.probability = BigRational(r.amplitude_core * r.amplitude_core,
                              pow_int(BigInt(u.size()), r.scale_exponent) * r.normalization);
  return r;
}

template <typename U>
  requires std::is_same_v<typename U::value_type, std::complex<double>>
ComplexAmplitudeResult amplitude(const U& u, const FockState& input, const FockState& output,
                                 Statistics st) {
  detail::require_interfering(st);
  const auto s = scattering_matrix(u, input, output);
  const std::complex<double> core =
      st == Statistics::boson ? permanent_ryser(s.core) : determinant(s.core);
  const double norm = (input.multiplicity_factorial_product() *
                       output.multiplicity_factorial_product())
                          .convert_to<double>();
  ComplexAmplitudeResult r;
  r.amplitude =
      core / (std::pow(static_cast<double>(u.size()), input.particles() / 2.0) * std::sqrt(norm));
  r.probability = std::norm(r.amplitude);
  return r;
}

template <typename Prob>
struct DistributionRow {
  FockState output;
  Prob probability;
};

/// Full output distribution for one input and particle kind; rows are in
/// colex order over the output states regardless of thread count.
template <typename Prob>
struct DistributionTable {
  FockState input;
  Statistics statistics;
  std::vector<DistributionRow<Prob>> rows;
  Prob total;
};

using ExactDistributionTable = DistributionTable<BigRational>;
using RealDistributionTable = DistributionTable<double>;

template <typename U>
DistributionTable<probability_t<U>> distribution(const U& u, const FockState& input, Statistics st,
                                                 std::uint64_t budget = kDefaultEnumerationBudget,
                                                 int threads = 1) {
  using Prob = probability_t<U>;
  constexpr bool exact = std::is_same_v<Prob, BigRational>;
  const int n = input.particles();
  const int m = input.mode_count();
  if (u.size() != m) throw std::invalid_argument("input mode count does not match the matrix size");
  if (st == Statistics::fermion && input.max_multiplicity() > 1)
    throw std::invalid_argument("fermionic input must occupy distinct modes");
  if (st == Statistics::distinguishable && input.max_multiplicity() > 1)
    throw std::invalid_argument("the distinguishable baseline requires distinct input modes");
  const BigInt state_count = output_state_count(n, m);
  if (state_count > BigInt(budget))
    throw budget_error("a distribution over " + state_count.str() +
                       " output states exceeds the enumeration budget of " +
                       std::to_string(budget) +
                       "; use the counting or occupancy operations instead, or raise the budget");
  const std::uint64_t total_states = output_state_count_u64(n, m);
  const BigInt m_pow_n = pow_int(BigInt(m), n);
  const BigInt n_fact = factorial(n);

  auto compute_rows = [&](std::uint64_t b, std::uint64_t e) {
    std::vector<DistributionRow<Prob>> rows;
    rows.reserve(static_cast<std::size_t>(e - b));
    OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
      FockState output(std::vector<int>(modes.begin(), modes.end()), m);
      Prob p{};
      if (st == Statistics::distinguishable) {
        // Every core entry here has unit modulus, so the squared-modulus
        // scattering matrix is constant 1/m and its permanent is n!/m^n.
        const BigRational q(n_fact, m_pow_n * output.multiplicity_factorial_product());
        if constexpr (exact)
          p = q;
        else
          p = to_double(q);
      } else {
        p = amplitude(u, input, output, st).probability;
      }
      rows.push_back({std::move(output), std::move(p)});
    });
    return rows;
  };

  auto partials =
      run_partitioned<std::vector<DistributionRow<Prob>>>(total_states, threads, compute_rows);
  DistributionTable<Prob> table{input, st, {}, Prob{}};
  table.rows.reserve(static_cast<std::size_t>(total_states));
  for (auto& part : partials)
    for (auto& row : part) table.rows.push_back(std::move(row));
  Prob total{};
  for (const auto& row : table.rows) total += row.probability;
  table.total = std::move(total);
  return table;
}

/// Classical baseline: the same enumeration with the permanent of the
/// elementwise squared-modulus scattering matrix over the output factorials.
template <typename U>
DistributionTable<probability_t<U>> distinguishable_distribution(
    const U& u, const FockState& input, std::uint64_t budget = kDefaultEnumerationBudget,
    int threads = 1) {
  return distribution(u, input, Statistics::distinguishable, budget, threads);
}

}  // namespace sylsim
