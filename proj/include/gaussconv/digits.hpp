#pragma once

#include <cstdint>
#include <vector>

namespace gaussconv::digits {

/// Base-p expansion (α_1, …, α_n) of an exponent class modulo p^n − 1,
/// Σ α_i p^{i−1}. The class of 0 expands to all zeros. Positions are
/// 1-based and cyclic: α_j = α_{((j−1) mod n)+1}.
class DigitVector {
 public:
  DigitVector(std::uint32_t p, std::vector<std::uint32_t> digits);

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return static_cast<unsigned>(digits_.size()); }
  const std::vector<std::uint32_t>& digits() const noexcept { return digits_; }
  /// Cyclic 1-based access.
  std::uint32_t at(std::int64_t j) const;
  /// Σ α_i p^{i−1} (in [0, p^n − 1]).
  std::uint64_t value() const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> digits_;
};

DigitVector expand(std::uint32_t p, unsigned n, std::int64_t e);

/// s = Σ α_i.
unsigned s(const DigitVector& v);
/// t = ∏ α_i! mod p.
std::uint32_t t_mod_p(const DigitVector& v);

/// ∏_{1 ≤ i ≤ N, p ∤ i} i mod modulus.
std::uint64_t prime_free_factorial(std::uint64_t N, std::uint32_t p, std::uint64_t modulus);

/// W_i = α_i + α_{i+1} p + … + α_{i+m} p^m (cyclic).
std::uint64_t window(const DigitVector& v, unsigned i, unsigned m);

/// ∏_{i=1}^n W_i!' mod p^{m+1}.
std::uint64_t V_m(const DigitVector& v, unsigned m);

/// Γ_p(1 − ⟨p^{i−1}e/(p^n−1)⟩) mod p^{m+1} by the window formula
/// (−1)^{1+W} W!' with W = W_{2−i}, the window of the rotated expansion.
std::uint64_t gamma_p_truncated(unsigned i, const DigitVector& v, unsigned m);

/// Γ_p(x) = (−1)^x ∏_{0<j<x, p∤j} j for an integer x ≥ 1, mod modulus.
std::uint64_t gamma_p_integer(std::uint64_t x, std::uint32_t p, std::uint64_t modulus);

/// Same quantity as gamma_p_truncated, evaluated from the rational argument:
/// x ≡ 1 − r/(p^n−1) mod p^{m+1} with r = p^{i−1}e mod (p^n−1), then the
/// integer product definition at the representative of x in [1, p^{m+1}].
std::uint64_t gamma_p_direct(unsigned i, std::uint32_t p, unsigned n, std::int64_t e, unsigned m);

/// Directed graph G_a(α) on the n digit positions; edges go k → k+1.
struct DigitGraph {
  unsigned a = 0;
  std::vector<bool> edge;     // edge[k−1]: α_k → α_{k+1}
  std::vector<bool> in_core;  // vertex k−1 lies in G_a(α)°
  unsigned core_size() const;
};

/// How to read the chained a−1 clause on a cycle made only of a−1 digits,
/// where the rule refers to itself.
enum class CycleRule {
  kCarry,          // every edge present, the whole cycle is core
  kLeastFixpoint,  // no edge, empty core
};

/// Edge rule: α_k ≥ a and α_{k+1} ≥ a−1 gives an edge; α_k = α_{k+1} = a−1
/// gives an edge only if α_{k−1} → α_k is an edge, propagated forward from
/// the vertices ≥ a.
DigitGraph build_graph(const DigitVector& v, unsigned a, CycleRule rule = CycleRule::kCarry);
unsigned v_a(const DigitVector& v, unsigned a, CycleRule rule = CycleRule::kCarry);

struct Profile {
  std::vector<std::uint32_t> norms;         // ‖α‖_1 > ‖α‖_2 > … (distinct values)
  std::vector<unsigned> multiplicities;     // m_i(α)
  unsigned r() const { return static_cast<unsigned>(norms.size()); }
};

Profile profile(const DigitVector& v);
/// The positions of the largest digit form one cyclic interval.
bool is_max_consecutive(const DigitVector& v);
/// The positions of the smallest digit form one cyclic interval.
bool is_mini_consecutive(const DigitVector& v);
/// Digit following the cyclic block of the largest (resp. smallest) value;
/// requires the corresponding consecutive predicate.
std::uint32_t after_max_block(const DigitVector& v);
std::uint32_t after_min_block(const DigitVector& v);

/// Sorted digits of e + k̂ mod p^n − 1, k̂ = k(p^n−1)/(p−1).
std::vector<std::uint32_t> twisted_multiset(std::uint32_t p, unsigned n, std::int64_t e, unsigned k);

}  // namespace gaussconv::digits
