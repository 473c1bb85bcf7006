#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "gaussconv/errors.hpp"
#include "gaussconv/ff.hpp"
#include "oracle.hpp"

using namespace gaussconv;
using ff::Element;

TEST_SUITE("ff") {

TEST_CASE("prime field F_3 uses generator 2") {
  auto t = ff::build_tower(3, 1, 1);
  CHECK(t->generator().index == 2);
  CHECK(t->group_order() == 2);
}

TEST_CASE("F_9 generator has exact order 8") {
  auto t = ff::build_tower(3, 1, 2);
  const Element g = t->generator();
  CHECK(t->pow(g, 8) == t->one());
  CHECK(t->pow(g, 4) != t->one());
  CHECK(t->pow(g, 4) == t->neg(t->one()));
}

TEST_CASE("F_32: modulus irreducible by trial division, Lagrange") {
  auto t = ff::build_tower(2, 1, 5);
  const auto& mod = t->modulus();
  REQUIRE(mod.size() == 6);
  // no factor of degree 1 or 2: trial-divide by every monic polynomial of those degrees
  auto divides = [&](std::vector<std::uint32_t> d) {
    std::vector<std::uint32_t> r(mod.begin(), mod.end());
    for (int k = static_cast<int>(r.size()) - 1; k >= static_cast<int>(d.size()) - 1; --k) {
      if (!r[k]) continue;
      for (std::size_t i = 0; i < d.size(); ++i) r[k - (d.size() - 1) + i] ^= d[i];
    }
    for (auto c : r)
      if (c) return false;
    return true;
  };
  for (std::uint32_t a = 0; a < 2; ++a) CHECK_FALSE(divides({a, 1}));
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) CHECK_FALSE(divides({a, b, 1}));
  for (std::uint32_t i = 1; i < 32; ++i) CHECK(t->pow(Element{i}, 31) == t->one());
}

TEST_CASE("modulus and generator selection is the smallest choice") {
  CHECK(ff::smallest_irreducible(2, 3) == ff::FpPoly{1, 1, 0, 1});
  CHECK(ff::smallest_irreducible(3, 2) == ff::FpPoly{1, 0, 1});
  CHECK(ff::build_tower(3, 1, 4)->modulus() == std::vector<std::uint32_t>{2, 1, 0, 0, 1});
  // generator: no smaller index has full order
  auto t = ff::build_tower(5, 1, 2);
  for (std::uint32_t i = 1; i < t->generator().index; ++i) {
    std::set<std::uint32_t> seen;
    Element x = t->one();
    do {
      seen.insert(x.index);
      x = t->mul(x, Element{i});
    } while (x != t->one());
    CHECK(seen.size() < t->group_order());
  }
}

TEST_CASE("irreducibility test rejects squares of irreducibles") {
  CHECK(ff::is_irreducible({1, 0, 1}, 3));
  CHECK_FALSE(ff::is_irreducible({1, 0, 1}, 2));
  // (x^2 + x + 1)^2 = x^4 + x^2 + 1 over F_2
  CHECK_FALSE(ff::is_irreducible({1, 0, 1, 0, 1}, 2));
  CHECK(ff::is_irreducible({1, 1, 0, 0, 1}, 2));
}

TEST_CASE("relative trace examples") {
  auto t = ff::build_tower(3, 1, 2);
  CHECK(t->trace_rel(t->one()) == Element{2});
  CHECK(t->trace_rel(t->pow(t->generator(), 4)) == Element{1});
  auto t32 = ff::build_tower(2, 1, 5);
  oracle::NaiveField F(*t32);
  const auto g = t32->coefficients(t32->generator());
  CHECK(t32->trace_abs(t32->generator()) == F.trace(g));
  for (std::uint64_t j = 0; j < t32->group_order(); ++j)
    CHECK(t32->trace_abs_by_log(j) == F.trace(F.pow(g, j)));
}

TEST_CASE("absolute trace agrees with the naive oracle over F_{5^3} and F_{4^2}") {
  for (auto [p, f, n] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{5, 1, 3}, {2, 2, 2}, {3, 2, 2}}) {
    auto t = ff::build_tower(p, f, n);
    oracle::NaiveField F(*t);
    for (std::uint32_t i = 0; i < t->size(); ++i) {
      const Element x{i};
      REQUIRE(t->trace_abs(x) == F.trace(t->coefficients(x)));
    }
  }
}

TEST_CASE("relative norm examples") {
  auto t = ff::build_tower(3, 1, 2);
  CHECK(t->norm_rel(t->generator(), 1) == Element{2});
  for (std::uint32_t i = 0; i < t->size(); ++i) CHECK(t->norm_rel(Element{i}, 2) == Element{i});
  auto t2 = ff::build_tower(2, 2, 3);  // F_64 over F_4
  const Element nr = t2->norm_rel(t2->generator(), 1);
  CHECK(t2->in_subfield(nr, 2));
  std::set<std::uint32_t> powers;
  Element x = t2->one();
  for (int i = 0; i < 3; ++i) {
    powers.insert(x.index);
    x = t2->mul(x, nr);
  }
  CHECK(powers.size() == 3);
  CHECK(x == t2->one());
}

TEST_CASE("trace is Frobenius invariant") {
  auto t = ff::build_tower(3, 2, 2);
  for (std::uint32_t i = 0; i < t->size(); ++i) {
    const Element x{i};
    CHECK(t->trace_rel(t->pow(x, t->q())) == t->trace_rel(x));
    CHECK(t->in_subfield(t->trace_rel(x), t->f()));
  }
}

TEST_CASE("norm is multiplicative and transitive") {
  auto t = ff::build_tower(3, 1, 4);
  for (std::uint32_t i = 1; i < t->size(); ++i)
    for (std::uint32_t j = 1; j < t->size(); ++j) {
      const Element x{i}, y{j};
      REQUIRE(t->norm_rel(t->mul(x, y), 2) == t->mul(t->norm_rel(x, 2), t->norm_rel(y, 2)));
    }
  std::mt19937_64 rng(12);
  auto big = ff::build_tower(2, 1, 12);
  for (int trial = 0; trial < 2000; ++trial) {
    const Element x{static_cast<std::uint32_t>(1 + rng() % big->group_order())};
    const Element y{static_cast<std::uint32_t>(1 + rng() % big->group_order())};
    for (unsigned d : {1u, 2u, 3u, 4u, 6u})
      REQUIRE(big->norm_rel(big->mul(x, y), d) == big->mul(big->norm_rel(x, d), big->norm_rel(y, d)));
  }
  // Nr_{n:1} = Nr_{d:1} ∘ Nr_{n:d}, with Nr_{d:1}(y) = y^{2^d − 1} over F_2
  for (std::uint32_t i = 1; i < 300; ++i) {
    const Element x{i};
    for (unsigned d : {2u, 3u, 4u, 6u}) {
      const Element inner = big->norm_rel(x, d);
      const Element outer = big->pow(inner, (std::uint64_t{1} << d) - 1);
      REQUIRE(big->norm_rel(x, 1) == outer);
    }
  }
}

TEST_CASE("discrete log round trip is a bijection") {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 10}, {3, 5}, {7, 3}}) {
    auto t = ff::build_tower(p, 1, n);
    std::vector<bool> hit(t->group_order(), false);
    for (std::uint32_t i = 1; i < t->size(); ++i) {
      const auto j = t->log(Element{i});
      REQUIRE(t->from_log(j) == Element{i});
      REQUIRE_FALSE(hit[j]);
      hit[j] = true;
    }
  }
  auto t = ff::build_tower(3, 1, 2);
  CHECK_THROWS_AS(t->log(t->zero()), std::invalid_argument);
}

TEST_CASE("etale algebra signs") {
  CHECK(ff::build_etale(3, 1, {3}).sign == 1);
  CHECK(ff::build_etale(3, 1, {4}).sign == -1);
  CHECK(ff::build_etale(3, 1, {1, 1, 1}).sign == 1);
  const auto A = ff::build_etale(3, 1, {2, 1});
  CHECK(A.n == 3);
  CHECK(A.r == 2);
  CHECK(A.sign == -1);
  CHECK(A.ambient->n() == 2);
  CHECK_THROWS_AS(ff::build_etale(3, 1, {}), std::invalid_argument);
}

TEST_CASE("argument and size checks") {
  CHECK_THROWS_AS(ff::build_tower(4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(ff::build_tower(3, 0, 2), std::invalid_argument);
  ff::TowerOptions small;
  small.size_cap = 100;
  CHECK_THROWS_AS(ff::build_tower(3, 1, 5, small), ResourceError);
}

TEST_CASE("table cache round trip and corrupt-cache rebuild") {
  const auto dir = std::filesystem::temp_directory_path() / "gaussconv_ff_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ff::TowerOptions opt;
  opt.cache_dir = dir;
  auto fresh = ff::build_tower(3, 1, 5, opt);
  const auto file = dir / ff::cache_file_name(3, 1, 5);
  REQUIRE(std::filesystem::exists(file));
  auto cached = ff::build_tower(3, 1, 5, opt);
  for (std::uint64_t j = 0; j < fresh->group_order(); j += 7) {
    CHECK(cached->from_log(j) == fresh->from_log(j));
    CHECK(cached->trace_abs_by_log(j) == fresh->trace_abs_by_log(j));
  }
  {
    std::ofstream corrupt(file, std::ios::binary | std::ios::trunc);
    corrupt << "garbage";
  }
  auto rebuilt = ff::build_tower(3, 1, 5, opt);
  CHECK(rebuilt->generator() == fresh->generator());
  CHECK(rebuilt->from_log(17) == fresh->from_log(17));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
