#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gaussconv/cyclo.hpp"
#include "gaussconv/ff.hpp"
#include "gaussconv/gauss.hpp"

namespace gaussconv::gl2 {

/// [[a, b], [c, d]] over F_q, entries in [0, q).
struct Mat {
  std::uint32_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Mat&, const Mat&) = default;
};

enum class ClassKind { kCentral, kCentralUnipotent, kSplit, kElliptic };
const char* to_string(ClassKind kind);

/// Conjugacy class label. Central and central-unipotent classes carry z;
/// split classes the unordered eigenvalues {a1 < a2}; elliptic classes the
/// eigenvalue t ∈ F_{q²} ∖ F_q with the smaller index of {t, t^q}.
struct GL2Class {
  ClassKind kind = ClassKind::kCentral;
  std::uint32_t z = 0, a1 = 0, a2 = 0;
  ff::Element t;
  friend auto operator<=>(const GL2Class&, const GL2Class&) = default;
};

/// GL_2(F_q) for a prime q, with F_{q²} for elliptic eigenvalues.
class Group {
 public:
  /// Throws std::invalid_argument unless q is prime and q ≤ max_q.
  explicit Group(std::uint32_t q, std::uint32_t max_q = 7, const ff::TowerOptions& options = {});

  std::uint32_t q() const noexcept { return q_; }
  const std::shared_ptr<const ff::FieldTower>& quadratic() const { return tower_; }
  /// (q² − 1)(q² − q).
  std::uint64_t order() const noexcept;
  /// Common conductor q(q² − 1) of every value this module produces.
  std::uint64_t conductor() const noexcept { return m_; }

  Mat mul(const Mat& x, const Mat& y) const;
  std::uint32_t det(const Mat& x) const;
  std::uint32_t trace(const Mat& x) const;
  bool invertible(const Mat& x) const { return det(x) != 0; }
  static Mat unipotent(std::uint32_t x) { return {1, x, 0, 1}; }
  /// [[0, 1], [a, 0]].
  static Mat antidiagonal(std::uint32_t a) { return {0, 1, a, 0}; }
  std::vector<Mat> elements() const;
  GL2Class classify(const Mat& x) const;
  /// Number of elements in the class.
  std::uint64_t class_size(const GL2Class& c) const;
  std::vector<GL2Class> classes() const;

  /// ζ_m exponent of ψ(x) = ζ_q^x.
  std::uint64_t psi_exponent(std::int64_t x) const;
  /// ζ_m exponent of μ_j(a), μ_j(Nr(g)^k) = ζ_{q−1}^{jk}, for a ∈ F_q^×.
  std::uint64_t base_char_exponent(std::uint64_t j, std::uint32_t a) const;

 private:
  std::uint32_t q_;
  std::uint64_t m_;
  std::shared_ptr<const ff::FieldTower> tower_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, ff::Element> elliptic_root_;  // (trace, det) → root
};

struct ValidationReport {
  bool dimension_ok = false;
  bool norm_ok = false;
  bool trivial_ok = false;
  bool cuspidal_ok = false;
  std::string failure;
  bool ok() const { return dimension_ok && norm_ok && trivial_ok && cuspidal_ok; }
};

/// Character of the cuspidal representation attached to a regular χ = χ_e of
/// F_{q²}^×: (q−1)χ(z), −χ(z), 0, −(χ(t) + χ(t^q)) on the four class families.
class CuspidalCharacter {
 public:
  /// Throws DomainError for non-regular χ, InternalError when a validation
  /// gate fails.
  CuspidalCharacter(std::shared_ptr<const Group> group, std::uint64_t e);

  const Group& group() const { return *group_; }
  std::uint64_t exponent() const noexcept { return e_; }
  const ValidationReport& validation() const { return validation_; }

  cyclo::CycloElement value(const GL2Class& c) const;
  cyclo::CycloElement value(const Mat& g) const { return value(group_->classify(g)); }

  /// Gate computation without throwing; used by the constructor.
  static ValidationReport validate(const Group& group, std::uint64_t e);

 private:
  static ValidationReport validate_table(const Group& group, const std::map<GL2Class, cyclo::CycloElement>& values);

  std::shared_ptr<const Group> group_;
  std::uint64_t e_;
  ValidationReport validation_;
  std::map<GL2Class, cyclo::CycloElement> values_;
};

/// B(g) = q^{−1} Σ_{x∈F_q} ψ(−x) χ_π(g·u(x)).
gauss::ScaledCyclo bessel(const CuspidalCharacter& pi, const Mat& g);

/// Σ_{a∈F_q^×} B([[0,1],[a,0]]) τ_k(a) with τ_k = μ_k.
gauss::ScaledCyclo gamma_via_bessel(const CuspidalCharacter& pi, std::uint64_t k);

struct CheckReport {
  std::uint32_t q = 0;
  std::uint64_t characters = 0;
  std::uint64_t comparisons = 0;
  bool class_count_ok = false;
  bool gates_ok = false;
  /// gamma_via_bessel(π_χ, k) == gamma_n_by_1(χ, k).
  std::uint64_t gamma_mismatches = 0;
  /// Same comparison against χ^{-1}, recorded to pin the convention.
  std::uint64_t gamma_inverse_mismatches = 0;
  bool bessel_identity_ok = false;
  bool equivariance_ok = false;
  bool mirabolic_support_ok = false;
  bool fourier_ok = false;
  bool separation_ok = false;
  bool conjugate_invariance_ok = false;
  std::string witness;
  double wall_seconds = 0;
  bool ok() const {
    return class_count_ok && gates_ok && gamma_mismatches == 0 && bessel_identity_ok && equivariance_ok &&
           mirabolic_support_ok && fourier_ok && separation_ok && conjugate_invariance_ok;
  }
};

/// Runs every check over all regular χ of F_{q²}^×.
CheckReport gl2_check(std::uint32_t q, std::uint32_t max_q = 7, unsigned jobs = 1);

}  // namespace gaussconv::gl2
