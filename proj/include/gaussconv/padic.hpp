#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gaussconv/cyclo.hpp"
#include "gaussconv/ff.hpp"

namespace gaussconv::padic {

/// Truncated ring R = W[π]/(π^{p−1} + p) with W = (Z/p^K)[x]/(F), F the
/// Teichmüller-free lift (same integer coefficients) of the field modulus.
/// Arithmetic is exact modulo p^K, i.e. modulo π^{K(p−1)}.
class Ring {
 public:
  /// Throws ResourceError when p^K does not fit comfortably in 62 bits.
  Ring(std::shared_ptr<const ff::FieldTower> tower, unsigned K);

  std::uint32_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return D_; }
  unsigned K() const noexcept { return K_; }
  std::uint64_t modulus() const noexcept { return pK_; }
  /// π-adic precision M = K(p − 1).
  unsigned precision() const noexcept { return K_ * (p_ - 1); }
  const ff::FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const ff::FieldTower> tower_ptr() const { return tower_; }

 private:
  friend class Elem;
  friend class Embedding;
  std::shared_ptr<const ff::FieldTower> tower_;
  std::uint32_t p_;
  unsigned D_, K_;
  std::uint64_t pK_;
  std::vector<std::uint64_t> F_;  // monic, F_[D] = 1
};

/// Element Σ_{i<p−1} Σ_{j<D} a_{ij} π^i x^j of a Ring.
class Elem {
 public:
  Elem(const Ring* ring);
  static Elem integer(const Ring* ring, std::int64_t v);
  /// π itself.
  static Elem uniformizer(const Ring* ring);
  /// Lift of a residue-field element with the same digit coefficients.
  static Elem naive_lift(const Ring* ring, ff::Element x);

  const Ring& ring() const { return *ring_; }
  std::uint64_t coeff(unsigned pi_power, unsigned x_power) const { return c_[pi_power * ring_->D_ + x_power]; }

  Elem operator+(const Elem& b) const;
  Elem operator-(const Elem& b) const;
  Elem operator-() const;
  Elem operator*(const Elem& b) const;
  Elem pow(std::uint64_t e) const;
  /// Multiplicative inverse of a unit (valuation 0); throws otherwise.
  Elem inverse() const;
  /// x / π^v for x with valuation ≥ v. The result is exact modulo
  /// π^{M−v}; the caller tracks the reduced precision.
  Elem div_pi_power(unsigned v) const;

  /// π-adic valuation, or nullopt when the element vanishes at precision M.
  std::optional<unsigned> valuation() const;
  bool is_zero() const;
  /// True when every coefficient is ≡ 0 mod p^k (equivalently ≡ 0 mod π^{k(p−1)}).
  bool zero_mod_p_power(unsigned k) const;
  /// Reduction mod π into the residue field.
  ff::Element residue() const;

  friend bool operator==(const Elem& a, const Elem& b) { return a.c_ == b.c_; }

 private:
  const Ring* ring_;
  std::vector<std::uint64_t> c_;
};

/// Teichmüller lift: the unique (p^D − 1)-th root of unity reducing to x.
/// Throws std::invalid_argument on zero.
Elem teichmuller(const Ring& ring, ff::Element x);

/// Root of Φ_p with ζ ≡ 1 + π mod π² (Hensel/Newton on ζ = 1 + πu).
Elem zeta_p_lift(const Ring& ring);

/// Ring morphism Z[ζ_m] → R, m = p(p^D − 1): ζ_{p^D−1} ↦ T(g), ζ_p ↦ zeta_p_lift.
class Embedding {
 public:
  explicit Embedding(const Ring& ring);
  const Ring& ring() const { return ring_; }
  std::uint64_t conductor() const noexcept { return m_; }
  /// Throws std::invalid_argument on a conductor mismatch.
  Elem operator()(const cyclo::CycloElement& a) const;
  const Elem& teichmuller_generator() const { return powers_t_[1 % powers_t_.size()]; }
  const Elem& zeta_p() const { return powers_z_[1]; }

 private:
  const Ring& ring_;
  std::uint64_t m_, N_;
  std::vector<Elem> powers_t_;  // T(g)^a
  std::vector<Elem> powers_z_;  // ζ^b
};

struct StickelbergerReport {
  std::uint64_t exponent = 0;  // k in S(ω^{−k})
  unsigned s = 0;
  std::uint32_t t = 0;
  std::optional<unsigned> valuation;
  bool valuation_ok = false;
  bool congruence_ok = false;
  bool ok() const { return valuation_ok && congruence_ok; }
};

/// ord_π S(ω^{−k}) = s(k) and S(ω^{−k})·t(k)/(ζ_p − 1)^{s(k)} ≡ −1 mod π.
/// Prime base only (tower with f = 1). k ≢ 0. Throws ResourceError when the
/// ring precision is below s(k) + 2.
StickelbergerReport stickelberger_check(const Embedding& emb, std::uint64_t k);

struct GrossKoblitzReport {
  std::uint64_t exponent = 0;  // a in S(ω^a)
  unsigned window = 0;         // m: comparison modulo p^{m+1}
  unsigned s = 0;
  std::uint64_t gamma_digits = 0;  // ∏ Γ_p via the window formula, mod p^{m+1}
  std::uint64_t gamma_direct = 0;  // ∏ Γ_p via the integer product definition
  /// Sign ε with S(ω^a)·π^{s(a)}/p^n ≡ ε·(−1)^n ∏Γ_p mod p^{m+1}; 0 if neither sign fits.
  int sign = 0;
  bool gamma_agree = false;
  bool ok() const { return gamma_agree && sign != 0; }
};

/// Evaluates S(ω^a)·π^{s(a)}/p^n in the ring and compares it with
/// (−1)^n ∏_{i<n} Γ_p(1 − ⟨p^i a/(p^n−1)⟩) modulo p^{m+1}, reporting the sign
/// that makes the identity hold. Requires ring K ≥ n + m + 2, and m ≥ 2 when
/// p = 2 (DomainError otherwise).
GrossKoblitzReport gross_koblitz_check(const Embedding& emb, std::uint64_t a, unsigned m);

/// Smallest K for which the checks above have enough headroom.
unsigned required_K(unsigned n, unsigned m);

}  // namespace gaussconv::padic
