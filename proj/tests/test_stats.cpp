#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "sylsim/interference.hpp"
#include "sylsim/stats.hpp"

using namespace sylsim;

namespace {

// Occupancy histogram recomputed directly from the full distribution.
template <typename U>
std::vector<BigRational> histogram_from_distribution(const U& u, const FockState& input,
                                                     Statistics st) {
  const auto table = distribution(u, input, st);
  const int buckets = std::min(input.particles(), input.mode_count());
  std::vector<BigRational> hist(static_cast<std::size_t>(buckets), BigRational(0));
  for (const auto& row : table.rows)
    hist[static_cast<std::size_t>(row.output.occupied_modes() - 1)] += row.probability;
  return hist;
}

}  // namespace

TEST_CASE("two-particle occupancy profiles", "[stats]") {
  const auto u = build_sylvester(1);
  const FockState input({1, 2}, 2);

  const auto boson = occupancy_profile(u, input, Statistics::boson);
  REQUIRE(boson.histogram == std::vector<BigRational>{BigRational(1), BigRational(0)});
  REQUIRE(boson.mean == BigRational(1));
  REQUIRE(boson.total == BigRational(1));

  const auto fermion = occupancy_profile(u, input, Statistics::fermion);
  REQUIRE(fermion.histogram == std::vector<BigRational>{BigRational(0), BigRational(1)});
  REQUIRE(fermion.mean == BigRational(2));

  const auto baseline = occupancy_profile(u, input, Statistics::distinguishable);
  REQUIRE(baseline.histogram ==
          std::vector<BigRational>{BigRational(1, 2), BigRational(1, 2)});
  REQUIRE(baseline.mean == BigRational(3, 2));
  REQUIRE(baseline.mean == distinguishable_mean_closed_form(2, 2));
}

TEST_CASE("profiles agree with the full distribution", "[stats]") {
  for (Statistics st : {Statistics::boson, Statistics::fermion, Statistics::distinguishable}) {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 4}, {4, 4}, {4, 8}}) {
      const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(m)));
      const FockState input = standard_input(n, 0, m);
      const auto profile = occupancy_profile(u, input, st);
      REQUIRE(profile.histogram == histogram_from_distribution(u, input, st));
      REQUIRE(profile.total == BigRational(1));
      BigRational mean(0);
      for (std::size_t k = 0; k < profile.histogram.size(); ++k)
        mean += BigRational(static_cast<int>(k + 1)) * profile.histogram[k];
      REQUIRE(profile.mean == mean);
    }
  }
}

TEST_CASE("fourier profiles match the sylvester core when they coincide", "[stats]") {
  const auto f = build_fourier(2);
  const FockState input({1, 2}, 2);
  const auto boson = occupancy_profile(f, input, Statistics::boson);
  REQUIRE(boson.histogram.size() == 2);
  REQUIRE(std::abs(boson.histogram[0] - 1.0) < 1e-12);
  REQUIRE(std::abs(boson.histogram[1]) < 1e-12);
  REQUIRE(std::abs(boson.mean - 1.0) < 1e-12);

  const auto f4 = build_fourier(4);
  const FockState in4 = standard_input(4, 0, 4);
  const auto profile = occupancy_profile(f4, in4, Statistics::boson);
  const auto table = distribution(f4, in4, Statistics::boson);
  std::vector<double> hist(4, 0.0);
  for (const auto& row : table.rows)
    hist[static_cast<std::size_t>(row.output.occupied_modes() - 1)] += row.probability;
  for (int k = 0; k < 4; ++k)
    REQUIRE(std::abs(profile.histogram[static_cast<std::size_t>(k)] - hist[static_cast<std::size_t>(k)]) <
            1e-12);
  REQUIRE(std::abs(profile.total - 1.0) < 1e-12);
}

TEST_CASE("full bunching probabilities", "[stats]") {
  REQUIRE(full_bunching_probability(2, 2) == BigRational(1, 2));
  REQUIRE(full_bunching_probability(4, 4) == BigRational(24, 256));
  REQUIRE(full_bunching_probability(8, 8) == BigRational(factorial(8), pow_int(BigInt(8), 8)));

  for (int n : {2, 4}) {
    const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(n)));
    const FockState input = standard_input(n, 0, n);
    for (int g = 1; g <= n; ++g) {
      const FockState bunched(std::vector<int>(static_cast<std::size_t>(n), g), n);
      REQUIRE(amplitude(u, input, bunched, Statistics::boson).probability ==
              full_bunching_probability(n, n));
    }
    const auto profile = occupancy_profile(u, input, Statistics::boson);
    REQUIRE(profile.histogram[0] == BigRational(n) * full_bunching_probability(n, n));
  }
}

TEST_CASE("distinguishable means", "[stats]") {
  REQUIRE(distinguishable_mean_closed_form(2, 2) == BigRational(3, 2));
  REQUIRE(distinguishable_mean_closed_form(8, 8) ==
          BigRational(pow_int(BigInt(8), 8) - pow_int(BigInt(7), 8), pow_int(BigInt(8), 7)));
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 4}, {4, 8}}) {
    const auto u = build_sylvester(log2_exact(static_cast<std::uint64_t>(m)));
    const auto profile =
        occupancy_profile(u, standard_input(n, 0, m), Statistics::distinguishable);
    REQUIRE(profile.mean == distinguishable_mean_closed_form(n, m));
  }
}

TEST_CASE("ratio curves", "[stats]") {
  const std::vector<int> modes{2, 4};
  const auto points = occupancy_ratio_curve(2, modes);
  REQUIRE(points.size() == 2);
  REQUIRE(points[0].mode_count == 2);
  REQUIRE(points[0].boson_mean == BigRational(1));
  REQUIRE(points[0].distinguishable_mean == BigRational(3, 2));
  REQUIRE(points[0].ratio == BigRational(2, 3));
  REQUIRE(points[1].boson_mean == BigRational(3, 2));
  REQUIRE(points[1].distinguishable_mean == BigRational(7, 4));
  REQUIRE(points[1].ratio == BigRational(6, 7));
}

TEST_CASE("profile preconditions", "[stats]") {
  const auto u = build_sylvester(1);
  REQUIRE_THROWS_AS(occupancy_profile(u, FockState({1, 2}, 2), Statistics::boson, 2),
                    budget_error);
  REQUIRE_THROWS_AS(occupancy_profile(u, FockState({1, 1}, 2), Statistics::fermion),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(occupancy_profile(u, FockState({1, 1}, 2), Statistics::distinguishable),
                    std::invalid_argument);
  const auto u4 = build_sylvester(2);
  REQUIRE_THROWS_AS(occupancy_profile(u4, FockState({1, 2}, 2), Statistics::boson),
                    std::invalid_argument);
}

TEST_CASE("threaded profiles match single threaded", "[stats]") {
  const auto u = build_sylvester(3);
  const FockState input = standard_input(8, 0, 8);
  const auto one = occupancy_profile(u, input, Statistics::boson, kDefaultEnumerationBudget, 1);
  const auto four = occupancy_profile(u, input, Statistics::boson, kDefaultEnumerationBudget, 4);
  REQUIRE(one.histogram == four.histogram);
  REQUIRE(one.mean == four.mean);
}
