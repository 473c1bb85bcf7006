#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gaussconv/chars.hpp"
#include "gaussconv/cyclo.hpp"
#include "gaussconv/ff.hpp"

namespace gaussconv::gauss {

using cyclo::CycloElement;
using cyclo::Integer;

/// numerator / q^{q_power}, canonical: q_power is minimal (the numerator is
/// not coefficientwise divisible by q unless q_power is 0) and never negative.
class ScaledCyclo {
 public:
  ScaledCyclo() = default;
  ScaledCyclo(CycloElement numerator, std::int64_t q_power, std::uint64_t q);

  const CycloElement& numerator() const noexcept { return numerator_; }
  std::int64_t q_power() const noexcept { return q_power_; }
  std::uint64_t q() const noexcept { return q_; }

  ScaledCyclo operator*(const ScaledCyclo& b) const;
  ScaledCyclo operator+(const ScaledCyclo& b) const;
  ScaledCyclo operator-() const;
  /// Same value over the larger conductor m2.
  ScaledCyclo lift(std::uint64_t m2) const;

  friend bool operator==(const ScaledCyclo& a, const ScaledCyclo& b) {
    return a.q_ == b.q_ && a.q_power_ == b.q_power_ && a.numerator_ == b.numerator_;
  }

 private:
  void canonicalize();
  CycloElement numerator_;
  std::int64_t q_power_ = 0;
  std::uint64_t q_ = 1;
};

/// Per-field data for Gauss sums over F_{q^n}: conductor m = p(q^n−1) and
/// the absolute trace table. S(χ_e) = Σ_j ζ_m^{p e j + N Tr(g^j)}.
class GaussTable {
 public:
  explicit GaussTable(std::shared_ptr<const ff::FieldTower> tower);

  const ff::FieldTower& tower() const { return *tower_; }
  std::shared_ptr<const ff::FieldTower> tower_ptr() const { return tower_; }
  std::uint64_t conductor() const noexcept { return m_; }
  std::uint64_t group_order() const noexcept { return N_; }

  /// Canonical coordinates of S(χ_e) with 64-bit entries.
  std::vector<std::int64_t> canonical_S(std::int64_t e) const;
  CycloElement S(std::int64_t e) const;
  /// Σ_a χ_e(a) ψ(Tr a^{-1}) summed directly.
  CycloElement G_direct(std::int64_t e) const;

 private:
  std::shared_ptr<const ff::FieldTower> tower_;
  std::shared_ptr<const cyclo::Conductor> cond_;
  std::uint64_t m_, N_;
};

/// Exponent j with ζ_N ↦ ζ_N^{a}, ζ_p ↦ ζ_p (CRT inside Z/m, m = pN).
std::uint64_t unramified_galois_index(std::uint64_t p, std::uint64_t N, std::int64_t a);

CycloElement gauss_S(const chars::MultChar& c);
/// G(χ_e, ψ) = S(χ_{−e}).
CycloElement gauss_G(const chars::MultChar& c);
/// G by direct summation of χ(a)ψ(Tr a^{-1}), for cross-checks.
CycloElement gauss_G_direct(const chars::MultChar& c);

/// Gauss sum of χ_e on the subfield F_{q^d} ⊂ tower (d | n), with χ_e taken
/// relative to the subfield generator Nr_{n:d}(g). Conductor p(q^d − 1).
CycloElement subfield_gauss_S(const ff::FieldTower& tower, unsigned d, std::int64_t e);

/// (−q^{-1}τ(−1))^{n−1} Σ_a ψ(Tr a^{-1}) χ_e(a) τ_k(Nr a), τ_k(Nr g) = ζ_{q−1}^k.
/// Throws DomainError for non-regular χ or n < 2.
ScaledCyclo gamma_n_by_1(const chars::MultChar& c, std::uint64_t k);

/// Étale algebra Gauss sum ∏_i S(χ_{e_i}) over the factors of A, each factor
/// a subfield of A.ambient; result lives over the lcm conductor.
CycloElement etale_gauss(const ff::EtaleAlgebra& A, const std::vector<std::int64_t>& exponents);

struct HasseDavenportResult {
  bool holds = false;
  std::uint64_t conductor = 0;
  std::uint64_t lifted_exponent = 0;
};

/// −S(χ ∘ Nr_{m:1}) = (−S(χ))^m for χ = χ_e on F_q, where χ_e is taken
/// relative to the generator Nr(g) of F_q inside the tower (p, f, m).
HasseDavenportResult hasse_davenport_check(std::uint32_t p, unsigned f, std::uint64_t e, unsigned m,
                                           const ff::TowerOptions& options = {});

struct TensorRhs {
  ScaledCyclo value;
  std::uint64_t composed_exponent = 0;  // β = χ∘Nr_{mn:n} · η∘Nr_{mn:m}
  std::shared_ptr<const ff::FieldTower> tower;
};

/// c·χ(−1)^{m−1}η(−1)^{n−1}G(β, ψ) over F_{q^{mn}}, c = (−1)^{m(n−1)}q^{−mn+(m²+m)/2}.
/// χ = χ_{e_chi} on F_{q^n}, η = χ_{e_eta} on F_{q^m}, both relative to the
/// subfield generators of the tower (p, f, mn).
TensorRhs tensor_gamma_rhs(std::uint32_t p, unsigned f, std::uint64_t e_chi, std::uint64_t e_eta, unsigned n,
                           unsigned m, const ff::TowerOptions& options = {});

struct ModulusCheck {
  std::uint64_t exponent = 0;
  bool holds = false;
};

/// S(χ_e)·σ(S(χ_e)) = χ_e(−1)q^n for every e ≠ 0, where σ inverts ζ_N and
/// fixes ζ_p. The product is evaluated exactly from the double sum grouped by
/// the difference of discrete logs, so no full product in Z[ζ_m] is formed.
std::vector<ModulusCheck> modulus_identity_batch(const GaussTable& table);

/// Direct route: forms S, applies σ and multiplies in Z[ζ_m].
bool modulus_identity_direct(const GaussTable& table, std::int64_t e);

std::string to_string(const CycloElement& a);
std::string to_string(const ScaledCyclo& a);

}  // namespace gaussconv::gauss
