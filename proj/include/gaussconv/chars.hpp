#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gaussconv/cyclo.hpp"
#include "gaussconv/ff.hpp"

namespace gaussconv::chars {

/// Exponent bookkeeping for the character group of F_{q^n}^×, with
/// χ_e(g^j) = ζ_N^{e j}, N = q^n − 1. All operations act on the literal
/// exponent e of ω^e.
class CharGroup {
 public:
  CharGroup(std::uint64_t q, unsigned n);

  std::uint64_t q() const noexcept { return q_; }
  unsigned n() const noexcept { return n_; }
  /// N = q^n − 1.
  std::uint64_t order() const noexcept { return order_; }
  /// k̂ = (q^n − 1)/(q − 1), the exponent of the norm to F_q.
  std::uint64_t twist_unit() const noexcept { return twist_unit_; }

  std::uint64_t normalize(std::int64_t e) const { return arith::mod(e, order_); }
  /// True iff the Frobenius orbit of e has exactly n elements.
  bool is_regular(std::uint64_t e) const;
  /// Sorted distinct members of {e q^i mod N}.
  std::vector<std::uint64_t> frobenius_orbit(std::uint64_t e) const;
  std::uint64_t orbit_rep(std::uint64_t e) const;
  /// e + k·(q^n−1)/(q−1) mod N; k must lie in [0, q−1).
  std::uint64_t twist(std::uint64_t e, std::uint64_t k) const;
  /// e mod (q − 1): the restriction to F_q^×.
  std::uint64_t restrict_to_base(std::uint64_t e) const { return (e % order_) % (q_ - 1); }
  /// Multiplicative order N / gcd(e, N).
  std::uint64_t char_order(std::uint64_t e) const;
  /// χ_e(−1) ∈ {±1}: (−1)^e for odd q, 1 for even q.
  int value_at_minus_one(std::uint64_t e) const;
  /// Smallest member of every orbit, ascending; regular orbits only if asked.
  std::vector<std::uint64_t> orbit_reps(bool regular_only) const;
  /// Σ_{d|n} μ(n/d)(q^d − 1).
  std::uint64_t regular_count_formula() const;

 private:
  std::uint64_t q_, order_, twist_unit_;
  unsigned n_;
};

/// A character χ_e of F_{q^n}^× bound to a concrete tower (so that values
/// can be evaluated at field elements).
class MultChar {
 public:
  MultChar(std::shared_ptr<const ff::FieldTower> tower, std::int64_t e);

  const ff::FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const ff::FieldTower> tower_ptr() const { return tower_; }
  const CharGroup& group() const { return group_; }
  std::uint64_t exponent() const noexcept { return e_; }
  /// Conductor p·(q^n − 1) of the shared ring.
  std::uint64_t conductor() const noexcept { return tower_->p() * group_.order(); }

  bool is_regular() const { return group_.is_regular(e_); }
  std::vector<std::uint64_t> frobenius_orbit() const { return group_.frobenius_orbit(e_); }
  std::uint64_t orbit_rep() const { return group_.orbit_rep(e_); }
  MultChar twist(std::uint64_t k) const { return MultChar(tower_, static_cast<std::int64_t>(group_.twist(e_, k))); }
  std::uint64_t restrict_to_base() const { return group_.restrict_to_base(e_); }
  std::uint64_t order() const { return group_.char_order(e_); }
  MultChar inverse() const { return MultChar(tower_, -static_cast<std::int64_t>(e_)); }

  /// Exponent of ζ_m for χ(x) (x ≠ 0): p·e·log(x) mod m.
  std::uint64_t value_exponent(ff::Element x) const;
  /// χ(x) as an element of Z[ζ_m]; χ(0) = 0.
  cyclo::CycloElement value(ff::Element x) const;

 private:
  std::shared_ptr<const ff::FieldTower> tower_;
  CharGroup group_;
  std::uint64_t e_;
};

}  // namespace gaussconv::chars
