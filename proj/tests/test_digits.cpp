#include <algorithm>
#include <random>

#include "doctest.h"
#include "gaussconv/arith.hpp"
#include "gaussconv/digits.hpp"

using namespace gaussconv;
using digits::DigitVector;

namespace {

std::uint64_t hat(std::uint32_t p, unsigned n, std::uint64_t c) { return c * ((arith::ipow(p, n) - 1) / (p - 1)); }

DigitVector dv(std::uint32_t p, std::vector<std::uint32_t> d) { return DigitVector(p, std::move(d)); }

DigitVector rotate(const DigitVector& v) {
  auto d = v.digits();
  std::rotate(d.begin(), d.begin() + 1, d.end());
  return DigitVector(v.p(), d);
}

}  // namespace

TEST_SUITE("digits") {

TEST_CASE("expansion, s and t") {
  const auto v = digits::expand(3, 2, 5);
  CHECK(v.digits() == std::vector<std::uint32_t>{2, 1});
  CHECK(digits::s(v) == 3);
  CHECK(digits::t_mod_p(v) == 2);
  CHECK(digits::expand(3, 4, 4).digits() == std::vector<std::uint32_t>{1, 1, 0, 0});
  CHECK(digits::s(digits::expand(3, 4, 4)) == 2);
  CHECK(digits::expand(3, 4, 0).digits() == std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK(digits::expand(3, 4, -1).value() == 79);
  CHECK(dv(3, {1, 2, 0}).at(4) == 1);
  CHECK(dv(3, {1, 2, 0}).at(0) == 0);
}

TEST_CASE("s is invariant under multiplication by p") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7}[trial % 4];
    const unsigned n = 2 + trial % 4;
    const std::uint64_t N = arith::ipow(p, n) - 1;
    const std::uint64_t e = rng() % N;
    CHECK(digits::s(digits::expand(p, n, static_cast<std::int64_t>(e * p % N))) == digits::s(digits::expand(p, n, e)));
  }
}

TEST_CASE("prime-free factorial") {
  CHECK(digits::prime_free_factorial(0, 3, 9) == 1);
  CHECK(digits::prime_free_factorial(4, 3, 27) == 8);
  CHECK(digits::prime_free_factorial(3, 3, 27) == 2);
  CHECK(digits::prime_free_factorial(10, 5, 125) == 1 * 2 * 3 * 4 * 6 * 7 * 8 * 9 % 125);
}

TEST_CASE("V_m") {
  CHECK(digits::V_m(digits::expand(3, 4, 4), 1) == 7);
  CHECK(digits::V_m(digits::expand(3, 4, 10), 1) == 4);
  for (std::int64_t e = 0; e < 80; ++e) {
    const auto v = digits::expand(3, 4, e);
    CHECK(digits::V_m(v, 0) == digits::t_mod_p(v));
  }
}

TEST_CASE("Gamma_p by windows") {
  for (unsigned m : {0u, 1u, 2u}) {
    const std::uint64_t M = arith::ipow(3, m + 1);
    for (unsigned i = 1; i <= 3; ++i) CHECK(digits::gamma_p_truncated(i, digits::expand(3, 3, 0), m) == M - 1);
  }
  CHECK(digits::gamma_p_integer(1, 5, 25) == 24);
  CHECK(digits::gamma_p_integer(4, 5, 125) == 6);  // (−1)^4·1·2·3
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t p = std::vector<std::uint32_t>{3, 5, 7}[trial % 3];
    const unsigned n = 2 + trial % 3;
    const std::int64_t e = static_cast<std::int64_t>(rng() % (arith::ipow(p, n) - 1));
    const auto v = digits::expand(p, n, e);
    for (unsigned i = 1; i <= n; ++i)
      CHECK(digits::gamma_p_truncated(i, v, 1) == digits::gamma_p_direct(i, p, n, e, 1));
  }
}

TEST_CASE("product of Gamma_p values recombines to V_m") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {5, 2}, {3, 4}}) {
    for (unsigned m : {0u, 1u, 2u}) {
      const std::uint64_t M = arith::ipow(p, m + 1);
      std::uint64_t geometric = 0;
      for (unsigned j = 0; j <= m; ++j) geometric += arith::ipow(p, j);
      for (std::int64_t e = 0; e + 1 < static_cast<std::int64_t>(arith::ipow(p, n)); ++e) {
        const auto v = digits::expand(p, n, e);
        std::uint64_t prod = 1;
        for (unsigned i = 1; i <= n; ++i) prod = arith::mulmod(prod, digits::gamma_p_truncated(i, v, m), M);
        std::uint64_t rhs = digits::V_m(v, m);
        if ((n + digits::s(v) * geometric) % 2 == 1) rhs = (M - rhs) % M;
        REQUIRE(prod == rhs);
      }
    }
  }
}

TEST_CASE("digit graph examples") {
  CHECK(digits::v_a(dv(5, {1, 0, 2, 1}), 4) == 0);
  const auto g = digits::build_graph(dv(3, {2, 1, 0, 0}), 2);
  CHECK(g.edge == std::vector<bool>{true, false, false, false});
  CHECK(g.in_core == std::vector<bool>{true, true, false, false});
  CHECK(g.core_size() == 2);
  CHECK(digits::v_a(dv(3, {2, 1, 0, 0}), 2) == 2);
  // a full cycle of a−1 digits under each reading
  CHECK(digits::v_a(dv(3, {1, 1, 1}), 2, digits::CycleRule::kCarry) == 3);
  CHECK(digits::v_a(dv(3, {1, 1, 1}), 2, digits::CycleRule::kLeastFixpoint) == 0);
}

TEST_CASE("digit-sum identity holds exhaustively under the carry reading") {
  std::uint64_t cases = 0;
  for (auto [p, nmax] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 5}, {5, 4}, {7, 3}})
    for (unsigned n = 1; n <= nmax; ++n) {
      const std::uint64_t N = arith::ipow(p, n) - 1;
      for (std::uint64_t e = 0; e < N; ++e) {
        const auto v = digits::expand(p, n, static_cast<std::int64_t>(e));
        for (unsigned a = 1; a < p; ++a) {
          const auto w = digits::expand(p, n, static_cast<std::int64_t>((e + hat(p, n, p - a)) % N));
          const std::int64_t lhs = digits::s(w);
          const std::int64_t rhs = static_cast<std::int64_t>(digits::s(v) + (p - a) * n) -
                                   static_cast<std::int64_t>(digits::v_a(v, a) * (p - 1));
          REQUIRE(lhs == rhs);
          ++cases;
        }
      }
    }
  CHECK(cases > 0);
}

TEST_CASE("least-fixpoint reading fails exactly on the all-(a-1) configurations") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {5, 2}, {7, 2}}) {
    const std::uint64_t N = arith::ipow(p, n) - 1;
    for (std::uint64_t e = 0; e < N; ++e)
      for (unsigned a = 1; a < p; ++a) {
        const auto v = digits::expand(p, n, static_cast<std::int64_t>(e));
        const auto w = digits::expand(p, n, static_cast<std::int64_t>((e + hat(p, n, p - a)) % N));
        const std::int64_t rhs = static_cast<std::int64_t>(digits::s(v) + (p - a) * n) -
                                 static_cast<std::int64_t>(digits::v_a(v, a, digits::CycleRule::kLeastFixpoint) * (p - 1));
        const bool holds = static_cast<std::int64_t>(digits::s(w)) == rhs;
        REQUIRE(holds == (e != hat(p, n, a - 1) % N));
      }
  }
}

TEST_CASE("profile and consecutive predicates") {
  const auto pr = digits::profile(dv(3, {2, 2, 1, 0}));
  CHECK(pr.norms == std::vector<std::uint32_t>{2, 1, 0});
  CHECK(pr.multiplicities == std::vector<unsigned>{2, 1, 1});
  CHECK(pr.r() == 3);
  CHECK(digits::is_max_consecutive(dv(3, {2, 2, 1, 0})));
  CHECK_FALSE(digits::is_max_consecutive(dv(3, {2, 1, 2, 0})));
  CHECK(digits::is_max_consecutive(dv(3, {1, 0, 0, 1})));
  CHECK(digits::is_mini_consecutive(dv(3, {1, 0, 0, 1})));
  CHECK(digits::after_max_block(dv(3, {2, 2, 1, 0})) == 1);
  CHECK(digits::after_min_block(dv(3, {2, 2, 1, 0})) == 2);
}

TEST_CASE("statistics are invariant under rotation") {
  for (std::int64_t e = 0; e < 242; ++e) {
    const auto v = digits::expand(3, 5, e);
    const auto w = rotate(v);
    REQUIRE(digits::s(w) == digits::s(v));
    REQUIRE(digits::t_mod_p(w) == digits::t_mod_p(v));
    for (unsigned m : {0u, 1u, 2u}) REQUIRE(digits::V_m(w, m) == digits::V_m(v, m));
    for (unsigned a : {1u, 2u}) REQUIRE(digits::v_a(w, a) == digits::v_a(v, a));
    REQUIRE(digits::profile(w).norms == digits::profile(v).norms);
    REQUIRE(digits::profile(w).multiplicities == digits::profile(v).multiplicities);
    REQUIRE(digits::is_max_consecutive(w) == digits::is_max_consecutive(v));
    REQUIRE(digits::is_mini_consecutive(w) == digits::is_mini_consecutive(v));
  }
}

TEST_CASE("negation duality") {
  for (std::int64_t e = 1; e < 124; ++e) {
    const auto v = digits::expand(5, 3, e);
    const auto w = digits::expand(5, 3, -e);
    for (unsigned i = 1; i <= 3; ++i) REQUIRE(w.at(i) == 4 - v.at(i));
    const auto pv = digits::profile(v);
    REQUIRE(digits::profile(w).norms.front() == 4 - pv.norms.back());
  }
}

TEST_CASE("twisted multisets") {
  // α = 5 on (3, 2) is (2, 1); adding 1̂ = (1, 1) gives 9 ≡ 1 = (1, 0)
  CHECK(digits::twisted_multiset(3, 2, 5, 1) == std::vector<std::uint32_t>{0, 1});
  CHECK(digits::twisted_multiset(3, 2, 5, 0) == std::vector<std::uint32_t>{1, 2});
}

}  // TEST_SUITE
