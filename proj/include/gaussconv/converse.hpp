#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaussconv/ff.hpp"
#include "gaussconv/gauss.hpp"

namespace gaussconv::converse {

/// Entry k is S(ω^{−(α+k̂)}), k̂ = k(q^n−1)/(q−1), for 0 ≤ k < q−1.
struct TwistSignature {
  std::uint64_t q = 0;
  std::vector<cyclo::CycloElement> entries;
  friend bool operator==(const TwistSignature&, const TwistSignature&) = default;
};

TwistSignature signature(const gauss::GaussTable& table, std::uint64_t e);
/// Concatenated canonical coordinates of all entries.
std::vector<std::int64_t> signature_encoding(const gauss::GaussTable& table, std::uint64_t e);
std::uint64_t signature_hash(const gauss::GaussTable& table, std::uint64_t e);
bool distinguishable(const gauss::GaussTable& table, std::uint64_t a, std::uint64_t b);

/// Choices that pin every Gauss sum a run reports.
struct ConventionStamp {
  std::uint32_t p = 0;
  unsigned f = 0, n = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> generator;  // coefficients, lowest degree first
  std::string psi;
  std::string omega;
};
ConventionStamp stamp(const ff::FieldTower& tower);

enum class Population { kRegular, kAll };
const char* to_string(Population population);

struct ScanOptions {
  unsigned jobs = 1;
  ff::TowerOptions tower;
};

struct ScanReport {
  std::uint32_t p = 0;
  unsigned f = 0;
  unsigned n = 0;  // degree over the base field
  std::uint64_t q = 0;
  std::string population;
  std::uint64_t orbits_scanned = 0;
  /// Signature classes as sorted lists of orbit representatives, ordered by
  /// their smallest member.
  std::vector<std::vector<std::uint64_t>> classes;
  std::vector<std::vector<std::uint64_t>> collisions;
  /// Hash buckets that split on exact comparison.
  std::uint64_t hash_false_positives = 0;
  /// Colliding orbits share the restriction to F_p^×, and for a prime base
  /// also s and t mod p.
  bool central_character_ok = true;
  std::string central_character_witness;
  double wall_seconds = 0;
  ConventionStamp stamp;
  bool clean() const { return collisions.empty(); }
};

ScanReport scan_converse(std::uint32_t p, unsigned f, unsigned n, Population population,
                         const ScanOptions& options = {});

/// Base F_{q^{n/r}}, degree r, over characters of F_{q^n}^× regular relative
/// to the full degree n over F_q. Orbits are taken under x ↦ x^{q^{n/r}}.
ScanReport scan_primitive(std::uint32_t p, unsigned f, unsigned n, unsigned r, const ScanOptions& options = {});

struct CounterexampleReport {
  std::uint32_t p = 0;
  unsigned t = 0, n = 0;
  std::uint64_t order = 0;  // p^t + 1
  std::uint64_t phi = 0;    // φ(p^t + 1)
  bool feasible = false;    // φ(p^t + 1) ≥ 4t
  std::int64_t expected_value = 0;
  std::uint64_t characters_checked = 0;
  bool values_match = false;  // every character of that order has S(χ) = −p^t
  std::optional<std::uint64_t> value_witness;
  std::vector<std::uint64_t> orbit_reps;  // regular orbits of that order
  std::vector<std::vector<std::uint64_t>> collisions;
  double wall_seconds = 0;
};

/// Characters of order p^t + 1 on F_{p^{2t}}: their Gauss sums and the
/// collision classes among their regular orbits under all base twists.
CounterexampleReport counterexample(std::uint32_t p, unsigned t, const ScanOptions& options = {});

/// j ↦ s(e·j mod p^n − 1) over the coset representatives T of (Z/(p^n−1))^×/⟨p⟩.
struct StickelbergerSpectrum {
  std::vector<std::pair<std::uint64_t, unsigned>> values;
  friend bool operator==(const StickelbergerSpectrum&, const StickelbergerSpectrum&) = default;
};

/// Smallest element of each coset of ⟨p⟩ in (Z/(p^n−1))^×, ascending.
std::vector<std::uint64_t> coset_representatives(std::uint32_t p, unsigned n);
StickelbergerSpectrum mersenne_spectrum(unsigned n, std::uint64_t e);

struct MersenneReport {
  unsigned n = 0;
  std::uint64_t N = 0;
  std::uint64_t coset_count = 0;
  std::uint64_t orbits = 0;
  bool injective = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  /// s(c) = 1 exactly for c a power of 2.
  bool single_bit_ok = false;
  /// Distinct orbits also have distinct Gauss sums.
  bool gauss_separates = false;
  double wall_seconds = 0;
};

/// Throws std::invalid_argument naming a factor when 2^n − 1 is composite.
MersenneReport mersenne_check(unsigned n, const ScanOptions& options = {});

enum class CheckStatus { kPass, kFail, kInconclusive, kNotApplicable };
const char* to_string(CheckStatus status);

struct LemmaCheck {
  std::string name;
  std::string hypothesis;
  std::uint64_t pairs_tested = 0;
  std::uint64_t cross_orbit_pairs = 0;
  std::uint64_t violations = 0;
  std::string witness;
  CheckStatus status = CheckStatus::kInconclusive;
  /// Diagnostic checks are reported but do not affect LemmaReport::ok.
  bool asserted = true;
};

struct LemmaReport {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::vector<LemmaCheck> checks;
  double wall_seconds = 0;
  bool ok() const;
};

/// Digit-calculus consequences of equal Gauss sums, checked on every pair of
/// regular exponents meeting each statement's hypothesis. Prime base only.
LemmaReport lemma_suite(std::uint32_t p, unsigned n, const ScanOptions& options = {});

struct EtaleScanReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  bool bound_satisfied = false;  // n < (q−1)/(2√q) + 1
  std::uint64_t algebras = 0;
  std::uint64_t characters = 0;
  std::uint64_t divisors = 0;
  std::uint64_t classes = 0;
  /// Characters with one divisor but different signed signatures.
  std::vector<std::string> forward_failures;
  /// Signature classes holding more than one divisor.
  std::vector<std::string> converse_failures;
  double wall_seconds = 0;
  bool ok() const { return forward_failures.empty() && (!bound_satisfied || converse_failures.empty()); }
};

/// All partitions of n into positive parts, each in non-increasing order.
std::vector<std::vector<unsigned>> partitions(unsigned n);

/// Signed twist signatures ε_A G_A(χ·η) over every étale algebra of degree
/// n over F_q and every character.
EtaleScanReport etale_signature_scan(std::uint32_t p, unsigned f, unsigned n, const ScanOptions& options = {});

}  // namespace gaussconv::converse
