#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "sylsim/fock.hpp"
#include "sylsim/matrices.hpp"

using namespace sylsim;

TEST_CASE("fock states sort their modes and validate bounds", "[fock]") {
  const FockState st({3, 1, 2}, 4);
  REQUIRE(st.modes() == std::vector<int>{1, 2, 3});
  REQUIRE(st.particles() == 3);
  REQUIRE(st.mode_count() == 4);
  REQUIRE(st.mode(0) == 1);
  REQUIRE(st.mode(2) == 3);

  REQUIRE_THROWS_AS(FockState({0, 1}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(FockState({1, 5}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(FockState({}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(FockState({1}, 0), std::invalid_argument);
}

TEST_CASE("occupancy summaries", "[fock]") {
  const FockState st({3, 1, 1, 3, 3}, 4);
  REQUIRE(st.multiplicities() == std::vector<int>{2, 0, 3, 0});
  REQUIRE(st.occupied_modes() == 2);
  REQUIRE(st.max_multiplicity() == 3);
  REQUIRE(st.multiplicity_factorial_product() == BigInt(12));

  const FockState single({2}, 2);
  REQUIRE(single.occupied_modes() == 1);
  REQUIRE(single.multiplicity_factorial_product() == BigInt(1));
}

TEST_CASE("output state counts", "[fock]") {
  REQUIRE(output_state_count(2, 2) == BigInt(3));
  REQUIRE(output_state_count(2, 4) == BigInt(10));
  REQUIRE(output_state_count(4, 4) == BigInt(35));
  REQUIRE(output_state_count(8, 8) == BigInt(6435));
  REQUIRE(output_state_count_u64(8, 32) == 61523748ULL);
  REQUIRE(output_state_count_u64(8, 64) == 10639125640ULL);
}

TEST_CASE("enumeration order and rank round trip", "[fock]") {
  const auto states = enumerate_outputs(2, 3).collect();
  REQUIRE(states.size() == 6);
  REQUIRE(states[0].modes() == std::vector<int>{1, 1});
  REQUIRE(states[1].modes() == std::vector<int>{1, 2});
  REQUIRE(states[2].modes() == std::vector<int>{2, 2});
  REQUIRE(states[3].modes() == std::vector<int>{1, 3});
  REQUIRE(states[4].modes() == std::vector<int>{2, 3});
  REQUIRE(states[5].modes() == std::vector<int>{3, 3});

  const int n = 3, m = 5;
  std::uint64_t expected_rank = 0;
  enumerate_outputs(n, m).for_each([&](std::span<const int> modes, std::uint64_t rank) {
    REQUIRE(rank == expected_rank);
    REQUIRE(output_state_rank(modes, m) == rank);
    std::vector<int> rebuilt(modes.size());
    output_state_unrank(rank, m, rebuilt);
    REQUIRE(std::equal(rebuilt.begin(), rebuilt.end(), modes.begin(), modes.end()));
    ++expected_rank;
  });
  REQUIRE(expected_rank == output_state_count_u64(n, m));
}

TEST_CASE("range splitting covers every state once in order", "[fock]") {
  const OutputStateRange whole(4, 8);
  for (int parts : {1, 2, 3, 7}) {
    std::uint64_t seen = 0;
    for (const auto& piece : whole.split(parts)) {
      piece.for_each([&](std::span<const int> modes, std::uint64_t rank) {
        REQUIRE(rank == seen);
        REQUIRE(output_state_rank(modes, 8) == rank);
        ++seen;
      });
    }
    REQUIRE(seen == output_state_count_u64(4, 8));
  }
}

TEST_CASE("standard block inputs", "[fock]") {
  REQUIRE(standard_input(2, 0, 4).modes() == std::vector<int>{1, 2});
  REQUIRE(standard_input(2, 1, 4).modes() == std::vector<int>{3, 4});
  REQUIRE(standard_input(4, 3, 16).modes() == std::vector<int>{13, 14, 15, 16});
  REQUIRE(standard_input(8, 0, 8).modes() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});

  REQUIRE_THROWS_AS(standard_input(2, 0, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(standard_input(3, 0, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(standard_input(2, 2, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(standard_input(2, -1, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(standard_input(4, 0, 2), std::invalid_argument);
}

TEST_CASE("scattering matrix picks rows by output and columns by input", "[fock]") {
  const auto u = build_sylvester(1);
  const FockState input({1, 2}, 2);
  const FockState output({2, 2}, 2);
  const auto s = scattering_matrix(u, input, output);
  REQUIRE(s.scale_half_exponent == 2);
  REQUIRE(s.core.at(0, 0) == 1);
  REQUIRE(s.core.at(0, 1) == -1);
  REQUIRE(s.core.at(1, 0) == 1);
  REQUIRE(s.core.at(1, 1) == -1);

  const auto f = build_fourier(4);
  const FockState in4({1, 3}, 4);
  const FockState out4({2, 4}, 4);
  const auto sf = scattering_matrix(f, in4, out4);
  REQUIRE(std::abs(sf.core.at(0, 1) - f.entry(2, 3)) < 1e-15);
  REQUIRE(std::abs(sf.core.at(1, 0) - f.entry(4, 1)) < 1e-15);
}
