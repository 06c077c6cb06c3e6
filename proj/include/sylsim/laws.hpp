#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylsim/common.hpp"
#include "sylsim/fock.hpp"
#include "sylsim/interference.hpp"
#include "sylsim/matrices.hpp"
#include "sylsim/parallel.hpp"
#include "sylsim/permanent.hpp"

namespace sylsim {

enum class SuppressionLaw {
  two_boson_first_pair,
  two_fermion_first_pair,
  two_boson_any_pair,
  boson_xor,
  fermion_mod,
};

inline const char* to_string(SuppressionLaw law) {
  switch (law) {
    case SuppressionLaw::two_boson_first_pair: return "two-boson-first-pair";
    case SuppressionLaw::two_fermion_first_pair: return "two-fermion-first-pair";
    case SuppressionLaw::two_boson_any_pair: return "two-boson-any-pair";
    case SuppressionLaw::boson_xor: return "boson-xor";
    case SuppressionLaw::fermion_mod: return "fermion-mod";
  }
  throw std::logic_error("unknown suppression law");
}

struct LawVerdict {
  FockState output;
  bool predicted_suppressed;
  SuppressionLaw law;
};

inline constexpr std::size_t kMismatchExamples = 16;

/// Outcome of a counting or verification pass over every output state of a
/// Sylvester interferometer. Counts are exact; `fraction` is the canonical
/// rational suppressed/total (render unreduced fractions from the counts).
struct SuppressionReport {
  int particles = 0;
  int mode_count = 0;
  int block_offset = 0;
  Statistics statistics = Statistics::boson;
  FockState input;
  BigInt suppressed;
  BigInt pauli_suppressed;  // outputs with a repeated mode (exclusion alone), fermions only
  BigInt total;
  std::uint64_t mismatch_count = 0;
  std::vector<FockState> mismatches;  // up to kMismatchExamples examples
  BigRational fraction;
  bool probability_checked = false;
  BigRational total_probability;
};

namespace detail {

inline void require_law_sizes(int n, int m) {
  if (n < 1 || !is_power_of_two(static_cast<std::uint64_t>(n)))
    throw std::invalid_argument("particle count must be a power of two");
  if (m < n || !is_power_of_two(static_cast<std::uint64_t>(m)))
    throw std::invalid_argument("mode count must be a power of two with m >= n");
  if (n > 64) throw capacity_error("law predicates support at most 64 particles");
}

inline void require_law_state(const FockState& output, int n, int m) {
  require_law_sizes(n, m);
  if (output.particles() != n || output.mode_count() != m)
    throw std::invalid_argument("output state does not match the given n and m");
}

/// Bosonic predicate on a sorted mode list: XOR of the q least significant
/// bits of the 0-based output modes, with mask = n - 1.
inline bool boson_xor_span(std::span<const int> modes, int mask) {
  int acc = 0;
  for (int g : modes) acc ^= (g - 1) & mask;
  return acc != 0;
}

/// Fermionic predicate: suppressed unless the modes occupy each residue
/// class mod n exactly once.
inline bool fermion_mod_span(std::span<const int> modes, int n) {
  std::uint64_t seen = 0;
  for (int g : modes) {
    const std::uint64_t bit = std::uint64_t{1} << ((g - 1) % n);
    if (seen & bit) return true;
    seen |= bit;
  }
  return false;
}

}  // namespace detail

/// An n = 2^q boson output of a 2^p-mode Sylvester interferometer fed from a
/// contiguous input block is suppressed iff the XOR of the q low bits of the
/// 0-based output modes is nonzero.
inline bool boson_xor_suppressed(const FockState& output, int n, int m) {
  detail::require_law_state(output, n, m);
  return detail::boson_xor_span(output.modes(), n - 1);
}

/// The fermionic counterpart: allowed outputs hit every residue class mod n
/// exactly once; everything else (including any doubly occupied mode) is
/// suppressed.
inline bool fermion_mod_suppressed(const FockState& output, int n, int m) {
  detail::require_law_state(output, n, m);
  return detail::fermion_mod_span(output.modes(), n);
}

inline LawVerdict law_verdict(const FockState& output, int n, int m, Statistics st) {
  if (st == Statistics::boson)
    return {output, boson_xor_suppressed(output, n, m), SuppressionLaw::boson_xor};
  if (st == Statistics::fermion)
    return {output, fermion_mod_suppressed(output, n, m), SuppressionLaw::fermion_mod};
  throw std::invalid_argument("suppression laws apply to boson or fermion statistics");
}

/// Collapses an m-mode output to the n-mode one with g' = ((g-1) mod n) + 1;
/// the suppression verdict is invariant under this map.
inline FockState mode_reduction(const FockState& output, int n, int m) {
  detail::require_law_state(output, n, m);
  std::vector<int> reduced;
  reduced.reserve(static_cast<std::size_t>(output.particles()));
  for (int g : output.modes()) reduced.push_back((g - 1) % n + 1);
  return {std::move(reduced), n};
}

/// Amplitude magnitude class for two particles entering modes (1, 2) of a
/// 2^p-mode Sylvester interferometer: when not suppressed the magnitude is
/// 2^(-half_exponent/2), i.e. the probability is exactly 2^(-half_exponent).
struct TwoParticleClass {
  bool suppressed = false;
  int half_exponent = 0;
};

inline TwoParticleClass two_particle_amplitude_law(int i, int j, int p, Statistics st) {
  if (p < 1 || p > 62) throw std::invalid_argument("exponent p must be in [1, 62]");
  const std::int64_t m = std::int64_t{1} << p;
  if (i < 1 || j < i || j > m) throw std::invalid_argument("need 1 <= i <= j <= 2^p");
  if (st == Statistics::boson) {
    if (i == j) return {false, 2 * p - 1};
    if (((i ^ j) & 1) == 0) return {false, 2 * p - 2};
    return {true, 0};
  }
  if (st == Statistics::fermion) {
    if (i != j && ((i ^ j) & 1) != 0) return {false, 2 * p - 2};
    return {true, 0};
  }
  throw std::invalid_argument("two-particle law applies to boson or fermion statistics");
}

enum class TwoParticleMethod { brute, closed };

/// Number of suppressed two-particle outputs when the particles enter any
/// two distinct modes (i, j): m^2/4 for bosons and C(m+1,2) - m^2/4 for
/// fermions, independent of the input pair. `brute` recomputes the count
/// from exact 2x2 permanents or determinants.
inline BigInt two_particle_any_input_count(int i, int j, int m, Statistics st,
                                           TwoParticleMethod method) {
  detail::require_law_sizes(2, m);
  if (i == j) throw std::invalid_argument("input modes must differ");
  if (i < 1 || j < 1 || i > m || j > m) throw std::invalid_argument("input mode outside [1, m]");
  if (st != Statistics::boson && st != Statistics::fermion)
    throw std::invalid_argument("two-particle counts apply to boson or fermion statistics");
  const BigInt quarter = BigInt(m) * m / 4;
  if (method == TwoParticleMethod::closed)
    return st == Statistics::boson ? quarter : binomial(m + 1, 2) - quarter;
  const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(m)));
  BigInt count = 0;
  for (int a = 1; a <= m; ++a) {
    for (int b = a; b <= m; ++b) {
      const std::int64_t cross = static_cast<std::int64_t>(u.entry(a, i)) * u.entry(b, j);
      const std::int64_t swapped = static_cast<std::int64_t>(u.entry(a, j)) * u.entry(b, i);
      const std::int64_t value = st == Statistics::boson ? cross + swapped : cross - swapped;
      if (value == 0) ++count;
    }
  }
  return count;
}

namespace detail {

/// Exact count of allowed boson outputs by dynamic programming: group the m
/// modes into n classes by the q-bit residue of the 0-based mode index; a
/// class holding an odd number of particles contributes its label to the
/// running XOR, and choosing which of its m/n modes the k particles occupy
/// contributes a multiset factor C(m/n + k - 1, k). Allowed outputs are the
/// placements whose final XOR is zero.
inline BigInt boson_allowed_count_by_classes(int n, int m) {
  const int per_class = m / n;
  std::vector<BigInt> weight(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    weight[static_cast<std::size_t>(k)] = binomial(per_class + k - 1, k);
  std::vector<std::vector<BigInt>> f(static_cast<std::size_t>(n) + 1,
                                     std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
  f[0][0] = 1;
  for (int r = 0; r < n; ++r) {
    std::vector<std::vector<BigInt>> g(static_cast<std::size_t>(n) + 1,
                                       std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
    for (int u = 0; u <= n; ++u) {
      for (int x = 0; x < n; ++x) {
        const BigInt& ways = f[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)];
        if (ways == 0) continue;
        for (int k = 0; u + k <= n; ++k)
          g[static_cast<std::size_t>(u + k)][static_cast<std::size_t>((k & 1) ? (x ^ r) : x)] +=
              ways * weight[static_cast<std::size_t>(k)];
      }
    }
    f = std::move(g);
  }
  return f[static_cast<std::size_t>(n)][0];
}

struct CountPartial {
  std::uint64_t suppressed = 0;
  std::uint64_t pauli = 0;
};

}  // namespace detail

enum class CountMethod { enumerate, dp };

/// Counts suppressed output states. `enumerate` walks every state and applies
/// the predicate; `dp` uses the residue-class dynamic program (bosons) or the
/// closed-form allowed count (m/n)^n (fermions) and has no practical size
/// limit.
inline SuppressionReport count_suppressed(int n, int m, Statistics st, CountMethod method,
                                          std::uint64_t budget = kDefaultEnumerationBudget,
                                          int threads = 1) {
  detail::require_law_sizes(n, m);
  if (st != Statistics::boson && st != Statistics::fermion)
    throw std::invalid_argument("suppression counting applies to boson or fermion statistics");
  const BigInt total = output_state_count(n, m);
  BigInt suppressed = 0;
  BigInt pauli = 0;
  if (method == CountMethod::enumerate) {
    if (total > BigInt(budget))
      throw budget_error("enumerating " + total.str() +
                         " output states exceeds the enumeration budget of " +
                         std::to_string(budget) + "; use the dp method instead");
    const std::uint64_t states = output_state_count_u64(n, m);
    const int mask = n - 1;
    auto worker = [&](std::uint64_t b, std::uint64_t e) {
      detail::CountPartial part;
      OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
        const bool hit = st == Statistics::boson ? detail::boson_xor_span(modes, mask)
                                                 : detail::fermion_mod_span(modes, n);
        part.suppressed += hit ? 1 : 0;
        if (st == Statistics::fermion && detail::has_repeated_mode(modes)) ++part.pauli;
      });
      return part;
    };
    for (const auto& part : run_partitioned<detail::CountPartial>(states, threads, worker)) {
      suppressed += part.suppressed;
      pauli += part.pauli;
    }
  } else {
    if (st == Statistics::boson) {
      suppressed = total - detail::boson_allowed_count_by_classes(n, m);
    } else {
      suppressed = total - pow_int(BigInt(m / n), n);
      pauli = total - binomial(m, n);
    }
  }
  return {n,
          m,
          0,
          st,
          standard_input(n, 0, m),
          suppressed,
          pauli,
          total,
          0,
          {},
          BigRational(suppressed, total),
          false,
          BigRational(0)};
}

namespace detail {

struct VerifyPartial {
  std::uint64_t suppressed = 0;
  std::uint64_t pauli = 0;
  std::uint64_t mismatch_count = 0;
  Int128 probability_numerator = 0;
  std::vector<std::vector<int>> mismatches;
};

}  // namespace detail

/// Checks the suppression predicate against exact brute-force amplitudes for
/// every output state of the block-c standard input, and accumulates the
/// exact total probability along the way. Mismatches (predicate verdict
/// differing from amplitude == 0) must come back empty.
inline SuppressionReport verify_law(int n, int m, int c, Statistics st,
                                    std::uint64_t budget = kDefaultEnumerationBudget,
                                    int threads = 1) {
  detail::require_law_sizes(n, m);
  if (st != Statistics::boson && st != Statistics::fermion)
    throw std::invalid_argument("verification applies to boson or fermion statistics");
  const FockState input = standard_input(n, c, m);
  const BigInt total = output_state_count(n, m);
  if (total > BigInt(budget))
    throw budget_error("verifying " + total.str() +
                       " output states exceeds the enumeration budget of " +
                       std::to_string(budget) + "; raise the budget to proceed");
  const std::uint64_t states = output_state_count_u64(n, m);
  const int p = log2_exact(static_cast<std::uint64_t>(m));
  const auto u = build_sylvester(p);

  // Common denominator of all state probabilities: m^n * n! (inputs here
  // have singly occupied modes); numerators are core^2 * n!/prod(nu!).
  const BigInt denominator = pow_int(BigInt(m), n) * factorial(n);
  if (boost::multiprecision::msb(denominator) > 120)
    throw capacity_error("probability accumulator would overflow 128 bits at this size");
  std::vector<std::int64_t> factorials(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i)
    factorials[static_cast<std::size_t>(i)] = factorials[static_cast<std::size_t>(i - 1)] * i;

  // Sign rows of the core over the fixed input columns, indexed by mode.
  std::vector<std::vector<int>> sign_rows(static_cast<std::size_t>(m) + 1);
  for (int g = 1; g <= m; ++g) {
    auto& row = sign_rows[static_cast<std::size_t>(g)];
    row.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = u.entry(g, input.mode(j));
  }

  const bool boson = st == Statistics::boson;
  const int mask = n - 1;
  const bool small_ryser = detail::ryser_bits(n, 1) <= 62.0;

  auto worker = [&](std::uint64_t b, std::uint64_t e) {
    detail::VerifyPartial part;
    IntMatrix core(n);
    OutputStateRange(n, m, b, e).for_each([&](std::span<const int> modes, std::uint64_t) {
      for (int i = 0; i < n; ++i) {
        const auto& row = sign_rows[static_cast<std::size_t>(modes[static_cast<std::size_t>(i)])];
        for (int j = 0; j < n; ++j) core.at(i, j) = row[static_cast<std::size_t>(j)];
      }
      BigInt value;
      if (boson)
        value = small_ryser
                    ? BigInt(detail::ryser_gray<std::int64_t>(core.entries().data(), n))
                    : permanent_ryser(core);
      else
        value = determinant_exact(core);
      const bool brute_suppressed = value == 0;
      const bool predicted = boson ? detail::boson_xor_span(modes, mask)
                                   : detail::fermion_mod_span(modes, n);
      if (brute_suppressed) ++part.suppressed;
      if (!boson && detail::has_repeated_mode(modes)) ++part.pauli;
      if (predicted != brute_suppressed) {
        ++part.mismatch_count;
        if (part.mismatches.size() < kMismatchExamples)
          part.mismatches.emplace_back(modes.begin(), modes.end());
      }
      const std::int64_t weight = detail::multinomial_weight(modes, factorials);
      const Int128 v128 = static_cast<Int128>(value.convert_to<std::int64_t>());
      part.probability_numerator += v128 * v128 * weight;
    });
    return part;
  };

  BigInt suppressed = 0;
  BigInt pauli = 0;
  std::uint64_t mismatch_count = 0;
  BigInt numerator = 0;
  std::vector<FockState> mismatches;
  for (const auto& part : run_partitioned<detail::VerifyPartial>(states, threads, worker)) {
    suppressed += part.suppressed;
    pauli += part.pauli;
    mismatch_count += part.mismatch_count;
    numerator += int128_to_big(part.probability_numerator);
    for (const auto& modes : part.mismatches)
      if (mismatches.size() < kMismatchExamples) mismatches.emplace_back(modes, m);
  }
  return {n,
          m,
          c,
          st,
          input,
          suppressed,
          pauli,
          total,
          mismatch_count,
          std::move(mismatches),
          BigRational(suppressed, total),
          true,
          BigRational(numerator, denominator)};
}

/// Limit of the suppressed boson fraction as m grows at fixed n.
inline BigRational boson_limit_fraction(int n) { return {BigInt(n) - 1, BigInt(n)}; }

/// Limit of the suppressed fermion fraction: 1 - n!/n^n.
inline BigRational fermion_limit_fraction(int n) {
  const BigInt nn = pow_int(BigInt(n), n);
  return {nn - factorial(n), nn};
}

/// All (n, m) suppressed-state cells for n in {2,4,8}, m a power of two from
/// n to max_modes, computed by the counting methods that need no enumeration.
inline std::vector<SuppressionReport> suppression_table(Statistics st, int max_modes = 64) {
  std::vector<SuppressionReport> cells;
  for (int n = 2; n <= 8; n *= 2)
    for (int m = n; m <= max_modes; m *= 2)
      cells.push_back(count_suppressed(n, m, st, CountMethod::dp));
  return cells;
}

}  // namespace sylsim
