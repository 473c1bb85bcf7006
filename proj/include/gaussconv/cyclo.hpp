#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gaussconv/arith.hpp"

namespace gaussconv::cyclo {

using Integer = mpz_class;
using IntPoly = std::vector<Integer>;  // lowest degree first

inline constexpr std::uint64_t kDefaultConductorCap = std::uint64_t{1} << 23;

/// Static data for Z[ζ_m]. Elements are stored in the tensor product of the
/// power bases of Z[ζ_{ℓ^k}] over the prime-power factors ℓ^k of m, which is
/// a Z-basis of Z[ζ_m]: coordinate c_i ∈ [0, φ(ℓ_i^{k_i})) on axis i.
/// A "raw" vector lives on the full lattice ∏ [0, ℓ_i^{k_i}) (size m).
class Conductor {
 public:
  explicit Conductor(std::uint64_t m);

  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t phi() const noexcept { return phi_; }
  const std::vector<arith::PrimePower>& factors() const noexcept { return factors_; }
  std::size_t axes() const noexcept { return factors_.size(); }

  /// Raw lattice index of ζ_m^k.
  std::uint32_t raw_of_exponent(std::uint64_t k) const { return raw_of_exp_[k % m_]; }
  /// Exponent k with ζ_m^k equal to the basis vector at canonical index idx.
  std::uint64_t exponent_of_canonical(std::size_t idx) const { return exp_of_canon_[idx]; }
  /// Raw lattice index of the canonical basis vector idx.
  std::uint32_t raw_of_canonical(std::size_t idx) const { return raw_of_canon_[idx]; }

  /// Reduces a raw vector (size m) in place so that only canonical positions
  /// remain nonzero. Exact for any ring T.
  template <class T>
  void reduce_raw(std::vector<T>& raw) const;

  /// Extracts the canonical coordinates of a reduced raw vector.
  template <class T>
  std::vector<T> compact(const std::vector<T>& raw) const {
    std::vector<T> out(phi_);
    for (std::size_t i = 0; i < phi_; ++i) out[i] = raw[raw_of_canon_[i]];
    return out;
  }

  /// Reduction grows the l1 norm by at most this factor.
  std::uint64_t growth_bound() const noexcept { return growth_; }

 private:
  std::uint64_t m_, phi_, growth_ = 1;
  std::vector<arith::PrimePower> factors_;
  std::vector<std::uint64_t> raw_dim_, raw_stride_, canon_dim_;
  std::vector<std::uint32_t> raw_of_exp_;
  std::vector<std::uint64_t> exp_of_canon_;
  std::vector<std::uint32_t> raw_of_canon_;
};

/// Shared, memoized conductor data. Throws ResourceError when m exceeds cap.
std::shared_ptr<const Conductor> conductor(std::uint64_t m, std::uint64_t cap = kDefaultConductorCap);

/// Φ_m(x) by exact division of x^m − 1 by Φ_d for the proper divisors d.
IntPoly cyclotomic_poly(std::uint64_t m);

struct ComplexApprox {
  std::complex<long double> value;
  long double error_bound;
};

/// Exact element of Z[ζ_m]; value type, immutable conductor data shared.
class CycloElement {
 public:
  CycloElement() = default;

  static CycloElement zero(std::uint64_t m);
  static CycloElement integer(std::uint64_t m, const Integer& v);
  static CycloElement one(std::uint64_t m) { return integer(m, 1); }
  /// ζ_m^k.
  static CycloElement zeta_power(std::uint64_t m, std::uint64_t k);
  /// Canonical form of Σ raw[i] x^i with x = ζ_m (indices wrap modulo m).
  static CycloElement reduce(const IntPoly& raw, std::uint64_t m);
  /// Canonical form of Σ counts[k] ζ_m^k (counts sized m).
  static CycloElement from_exponent_counts(const std::vector<std::int64_t>& counts, std::uint64_t m);
  /// Adopts already-canonical coordinates.
  static CycloElement from_canonical(std::shared_ptr<const Conductor> c, std::vector<Integer> coeffs);

  std::uint64_t m() const noexcept { return cond_ ? cond_->m() : 0; }
  const Conductor& conductor() const { return *cond_; }
  std::shared_ptr<const Conductor> conductor_ptr() const noexcept { return cond_; }
  /// Coordinates in the tensor power basis.
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }

  /// Remainder of the representing polynomial modulo Φ_m (degree < φ(m)).
  IntPoly power_basis() const;

  CycloElement operator+(const CycloElement& b) const;
  CycloElement operator-(const CycloElement& b) const;
  CycloElement operator-() const;
  CycloElement operator*(const CycloElement& b) const;
  CycloElement operator*(const Integer& s) const;
  CycloElement pow(unsigned e) const;

  /// σ_j: ζ_m ↦ ζ_m^j. Throws std::invalid_argument unless gcd(j, m) = 1.
  CycloElement galois(std::int64_t j) const;
  /// Same element in Z[ζ_{m2}] via ζ_m = ζ_{m2}^{m2/m}; requires m | m2.
  CycloElement lift(std::uint64_t m2) const;

  bool is_zero() const;
  /// Rational integer value if the element lies in Z.
  bool is_integer(Integer* value = nullptr) const;
  /// True when q divides every coordinate.
  bool divisible_by(const Integer& q) const;
  /// Exact division of every coordinate; caller checks divisibility.
  CycloElement divexact(const Integer& q) const;

  /// Σ c·ζ_m^k in long double. digits must be in [15, 18].
  ComplexApprox embed_complex(unsigned digits = 18) const;

  std::uint64_t hash() const;
  friend bool operator==(const CycloElement& a, const CycloElement& b);

 private:
  CycloElement(std::shared_ptr<const Conductor> c, std::vector<Integer> coeffs)
      : cond_(std::move(c)), coeffs_(std::move(coeffs)) {}
  void check_same(const CycloElement& b) const;

  std::shared_ptr<const Conductor> cond_;
  std::vector<Integer> coeffs_;
};

/// 64-bit hash of a canonical integer coordinate vector.
std::uint64_t hash_coeffs(const std::vector<std::int64_t>& coeffs);

// ---------------------------------------------------------------------------

template <class T>
void Conductor::reduce_raw(std::vector<T>& raw) const {
  // Axis i: x^c with c >= φ_i is replaced by -Σ_{j<ℓ-1} x^{c-φ_i + j ℓ^{k-1}}.
  // All targets are below φ_i, so one descending pass per axis suffices.
  for (std::size_t axis = 0; axis < factors_.size(); ++axis) {
    const auto& pp = factors_[axis];
    const std::uint64_t dim = raw_dim_[axis];
    const std::uint64_t inner = raw_stride_[axis];
    const std::uint64_t outer = m_ / (dim * inner);
    const std::uint64_t phi_i = dim / pp.prime * (pp.prime - 1);
    const std::uint64_t step = dim / pp.prime;
    for (std::uint64_t o = 0; o < outer; ++o) {
      T* block = raw.data() + o * dim * inner;
      for (std::uint64_t c = dim - 1; c >= phi_i; --c) {
        T* src = block + c * inner;
        const std::uint64_t base = c - phi_i;
        for (std::uint64_t j = 0; j + 1 < pp.prime; ++j) {
          T* dst = block + (base + j * step) * inner;
          for (std::uint64_t in = 0; in < inner; ++in) dst[in] -= src[in];
        }
        for (std::uint64_t in = 0; in < inner; ++in) src[in] = 0;
        if (c == 0) break;
      }
    }
  }
}

}  // namespace gaussconv::cyclo
