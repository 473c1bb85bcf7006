#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gaussconv::ff {

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;

/// An element of the top field F_{p^D}, identified by the base-p integer
/// Σ c_i p^i of its coefficient vector in the polynomial basis. F_p sits
/// inside as the indices 0..p-1.
struct Element {
  std::uint32_t index = 0;
  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

struct TowerOptions {
  std::uint64_t size_cap = kDefaultSizeCap;
  /// Directory for persisted log/trace tables; nullopt disables caching.
  std::optional<std::filesystem::path> cache_dir;
};

/// F_p ⊂ F_q ⊂ F_{q^n} with q = p^f, realized as one field of degree
/// D = f·n over F_p. The subfield F_{p^d} is the fixed field of x ↦ x^{p^d}.
/// Immutable after construction.
class FieldTower {
 public:
  std::uint32_t p() const noexcept { return p_; }
  unsigned f() const noexcept { return f_; }
  unsigned n() const noexcept { return n_; }
  unsigned degree() const noexcept { return f_ * n_; }
  /// q = p^f, the base field size.
  std::uint64_t q() const noexcept { return q_; }
  /// p^{f n}, the number of elements of the top field.
  std::uint64_t size() const noexcept { return size_; }
  /// q^n - 1, the order of the multiplicative group.
  std::uint64_t group_order() const noexcept { return size_ - 1; }

  /// Monic modulus coefficients c_0..c_D (c_D = 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element generator() const noexcept { return generator_; }

  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {1}; }
  /// Element of F_p ⊂ top field.
  Element constant(std::uint32_t c) const noexcept { return {c % p_}; }

  Element from_log(std::uint64_t j) const { return {exp_[j % group_order()]}; }
  /// Discrete log base the generator; throws std::invalid_argument on zero.
  std::uint64_t log(Element x) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  /// Coefficients of x in the polynomial basis, lowest degree first.
  std::vector<std::uint32_t> coefficients(Element x) const;

  /// Tr_{F_{q^n}/F_q}(x) = Σ_{i<n} x^{q^i}.
  Element trace_rel(Element x) const;
  /// Absolute trace to F_p.
  std::uint32_t trace_abs(Element x) const;
  /// Absolute trace of g^j, table lookup.
  std::uint32_t trace_abs_by_log(std::uint64_t j) const { return trace_[j % group_order()]; }
  std::span<const std::uint32_t> trace_table() const noexcept { return trace_; }
  /// Tr_{F_{p^d}/F_p}(x) for x in the degree-d subfield (d | D).
  std::uint32_t subfield_trace(Element x, unsigned d) const;
  /// Nr_{n:d}(x) = x^{(q^n-1)/(q^d-1)} for d | n; norm(0) = 0.
  Element norm_rel(Element x, unsigned d) const;
  /// True iff x lies in F_{p^d} (d | D).
  bool in_subfield(Element x, unsigned d) const;

 private:
  friend std::shared_ptr<const FieldTower> build_tower(std::uint32_t, unsigned, unsigned,
                                                       const TowerOptions&);
  FieldTower() = default;
  void build_tables();
  bool load_cache(const std::filesystem::path& file);
  void save_cache(const std::filesystem::path& file) const;

  std::uint32_t p_ = 0;
  unsigned f_ = 0, n_ = 0;
  std::uint64_t q_ = 0, size_ = 0;
  std::vector<std::uint32_t> modulus_;
  Element generator_;
  std::vector<std::uint32_t> exp_;    // j -> index of g^j
  std::vector<std::uint32_t> log_;    // index -> j (log_[0] unused)
  std::vector<std::uint32_t> trace_;  // j -> Tr(g^j) in F_p
  std::vector<std::uint64_t> place_;  // p^i
};

/// Builds the tower with the lexicographically smallest monic irreducible
/// modulus of degree f·n and the smallest generator. Throws
/// std::invalid_argument for non-prime p or zero degrees and ResourceError
/// when p^{f n} exceeds the size cap.
std::shared_ptr<const FieldTower> build_tower(std::uint32_t p, unsigned f, unsigned n,
                                              const TowerOptions& options = {});

/// Name of the cache file for (p, f, n) inside a cache directory.
std::filesystem::path cache_file_name(std::uint32_t p, unsigned f, unsigned n);

/// Format version written into cache headers.
inline constexpr std::uint32_t kCacheVersion = 1;

// ---------------------------------------------------------------------------
// Polynomials over F_p (coefficients lowest degree first), exposed for tests.

using FpPoly = std::vector<std::uint32_t>;

/// Rabin test: f monic of degree D is irreducible iff x^{p^D} ≡ x mod f and
/// gcd(x^{p^d} - x, f) = 1 for every proper divisor d of D.
bool is_irreducible(const FpPoly& f, std::uint32_t p);

/// Smallest monic irreducible of the given degree (constant term varies fastest).
FpPoly smallest_irreducible(std::uint32_t p, unsigned degree);

// ---------------------------------------------------------------------------

/// Product of finite fields F_{q^{d_1}} × ... × F_{q^{d_r}} over a common F_q.
/// Every factor is realized as a subfield of one ambient tower of degree
/// lcm(d_i) over F_q, so characters of different factors live in one
/// compatible system (inflation along norms).
struct EtaleAlgebra {
  std::uint32_t p = 0;
  unsigned f = 0;
  std::vector<unsigned> degrees;
  unsigned n = 0;  // Σ d_i
  unsigned r = 0;  // number of factors
  int sign = 1;    // ε_A = (-1)^{n-r}
  std::shared_ptr<const FieldTower> ambient;

  std::uint64_t q() const { return ambient->q(); }
  /// Order q^{d_i} - 1 of the i-th factor's unit group.
  std::uint64_t factor_order(std::size_t i) const;
  /// Exponent e such that the generator of factor i is g^e in the ambient field.
  std::uint64_t factor_generator_log(std::size_t i) const;
};

/// Throws std::invalid_argument for an empty list or a zero degree.
EtaleAlgebra build_etale(std::uint32_t p, unsigned f, std::vector<unsigned> degrees,
                         const TowerOptions& options = {});

}  // namespace gaussconv::ff
