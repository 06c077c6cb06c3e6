#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "sylsim/matrices.hpp"
#include "sylsim/permanent.hpp"

using namespace sylsim;

namespace {

IntMatrix ones(int n) { return IntMatrix(n, 1); }

IntMatrix identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix row_selection(const SylvesterMatrix& u, const std::vector<int>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = u.entry(rows[static_cast<std::size_t>(i)] + 1, j + 1);
  return m;
}

BigInt leibniz_determinant(const IntMatrix& m) {
  const int n = m.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  BigInt total = 0;
  do {
    BigInt term = 1;
    for (int i = 0; i < n; ++i) term *= m.at(i, perm[static_cast<std::size_t>(i)]);
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    total += inversions % 2 == 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("permanent basics", "[permanent]") {
  IntMatrix h2(2);
  h2.at(0, 0) = 1;
  h2.at(0, 1) = 1;
  h2.at(1, 0) = 1;
  h2.at(1, 1) = -1;
  REQUIRE(permanent_ryser(h2) == BigInt(0));
  REQUIRE(permanent_naive(h2) == BigInt(0));
  REQUIRE(determinant_exact(h2) == BigInt(-2));

  BigInt fact = 1;
  for (int n = 1; n <= 8; ++n) {
    fact *= n;
    REQUIRE(permanent_ryser(ones(n)) == fact);
    REQUIRE(permanent_ryser(identity(n)) == BigInt(1));
    REQUIRE(determinant_exact(identity(n)) == BigInt(1));
  }
}

TEST_CASE("ryser agrees with the permutation-sum oracle", "[permanent]") {
  std::mt19937 rng(20240811);
  SECTION("sign matrices") {
    std::bernoulli_distribution coin;
    for (int n = 2; n <= 7; ++n) {
      for (int trial = 0; trial < 60; ++trial) {
        IntMatrix m(n);
        for (int& v : m.entries()) v = coin(rng) ? 1 : -1;
        REQUIRE(permanent_ryser(m) == permanent_naive(m));
      }
    }
  }
  SECTION("wider integer entries") {
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int n = 2; n <= 6; ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m(n);
        for (int& v : m.entries()) v = entry(rng);
        REQUIRE(permanent_ryser(m) == permanent_naive(m));
        REQUIRE(determinant_exact(m) == leibniz_determinant(m));
      }
    }
  }
  SECTION("complex matrices") {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix m(n);
        for (auto& v : m.entries()) v = {entry(rng), entry(rng)};
        const auto a = permanent_ryser(m);
        const auto b = permanent_naive(m);
        REQUIRE(std::abs(a - b) < 1e-10);
      }
    }
  }
}

TEST_CASE("large-magnitude entries fall back to wide accumulators", "[permanent]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-1000000, 1000000);
  IntMatrix m(6);
  for (int& v : m.entries()) v = entry(rng);
  REQUIRE(permanent_ryser(m) == permanent_naive(m));

  IntMatrix big(4);
  for (int& v : big.entries()) v = 1000000000;
  BigInt expected = BigInt(1000000000);
  expected = expected * expected * expected * expected * 24;
  REQUIRE(permanent_ryser(big) == expected);
}

TEST_CASE("sylvester row selections", "[permanent]") {
  const auto u = build_sylvester(3);
  const std::vector<int> vanishing{0, 1, 2, 2, 4, 5, 6, 7};
  REQUIRE(xor_vanishing_test(vanishing, 3));
  REQUIRE(permanent_ryser(row_selection(u, vanishing)) == BigInt(0));

  const std::vector<int> surviving{0, 1, 2, 3, 4, 5, 6, 7};
  REQUIRE_FALSE(xor_vanishing_test(surviving, 3));
  REQUIRE(permanent_ryser(row_selection(u, surviving)) != BigInt(0));

  REQUIRE(xor_vanishing_test(std::vector<int>{0, 1}, 1));
  REQUIRE_FALSE(xor_vanishing_test(std::vector<int>{0, 0}, 1));
  REQUIRE_FALSE(xor_vanishing_test(std::vector<int>{1, 2, 3}, 2));
}

TEST_CASE("hadamard determinants reach the maximal magnitude", "[permanent]") {
  for (int p : {1, 2, 3, 4}) {
    const auto u = build_sylvester(p);
    const int m = u.size();
    IntMatrix full(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) full.at(i, j) = u.entry(i + 1, j + 1);
    BigInt expected = 1;
    for (int k = 0; k < m / 2; ++k) expected *= m;
    BigInt det = determinant_exact(full);
    if (det < 0) det = -det;
    REQUIRE(det == expected);
  }

  IntMatrix repeated(3, 1);
  repeated.at(1, 0) = 2;
  repeated.at(2, 0) = 2;
  repeated.at(1, 2) = 5;
  repeated.at(2, 2) = 5;
  REQUIRE(determinant_exact(repeated) == BigInt(0));
}

TEST_CASE("complex determinant matches the scaled fourier magnitude", "[permanent]") {
  for (int m : {2, 3, 4, 8}) {
    const auto f = build_fourier(m);
    ComplexMatrix full(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) full.at(i, j) = f.entry(i + 1, j + 1);
    const double expected = std::pow(double(m), m / 2.0);
    REQUIRE(std::abs(std::abs(determinant(full)) - expected) < 1e-9 * expected);
  }
}

TEST_CASE("order caps are enforced", "[permanent]") {
  REQUIRE_THROWS_AS(permanent_ryser(ones(31)), capacity_error);
  REQUIRE_THROWS_AS(permanent_naive(ones(10)), capacity_error);
  REQUIRE_THROWS_AS(permanent_ryser(ones(12), 11), capacity_error);
  REQUIRE(permanent_ryser(ones(12), 12) == factorial(12));
}
