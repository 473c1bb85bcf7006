#include "gaussconv/gl2.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "gaussconv/arith.hpp"
#include "gaussconv/chars.hpp"
#include "gaussconv/errors.hpp"
#include "gaussconv/parallel.hpp"

namespace gaussconv::gl2 {

using cyclo::CycloElement;
using gauss::ScaledCyclo;

const char* to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::kCentral:
      return "central";
    case ClassKind::kCentralUnipotent:
      return "central-unipotent";
    case ClassKind::kSplit:
      return "split";
    case ClassKind::kElliptic:
      return "elliptic";
  }
  return "unknown";
}

Group::Group(std::uint32_t q, std::uint32_t max_q, const ff::TowerOptions& options) : q_(q) {
  if (!arith::is_prime(q)) throw std::invalid_argument("gl2: q = " + std::to_string(q) + " is not prime");
  if (q > max_q)
    throw std::invalid_argument("gl2: q = " + std::to_string(q) + " exceeds the cap " + std::to_string(max_q));
  tower_ = ff::build_tower(q, 1, 2, options);
  m_ = static_cast<std::uint64_t>(q) * tower_->group_order();
  for (std::uint64_t j = 0; j < tower_->group_order(); ++j) {
    const ff::Element x = tower_->from_log(j);
    if (x.index < q) continue;
    const std::uint32_t t = tower_->trace_rel(x).index;
    const std::uint32_t d = tower_->norm_rel(x, 1).index;
    auto [it, fresh] = elliptic_root_.emplace(std::make_pair(t, d), x);
    if (!fresh && x.index < it->second.index) it->second = x;
  }
}

std::uint64_t Group::order() const noexcept {
  const std::uint64_t q = q_;
  return (q * q - 1) * (q * q - q);
}

Mat Group::mul(const Mat& x, const Mat& y) const {
  const std::uint64_t q = q_;
  return {static_cast<std::uint32_t>((std::uint64_t{x.a} * y.a + std::uint64_t{x.b} * y.c) % q),
          static_cast<std::uint32_t>((std::uint64_t{x.a} * y.b + std::uint64_t{x.b} * y.d) % q),
          static_cast<std::uint32_t>((std::uint64_t{x.c} * y.a + std::uint64_t{x.d} * y.c) % q),
          static_cast<std::uint32_t>((std::uint64_t{x.c} * y.b + std::uint64_t{x.d} * y.d) % q)};
}

std::uint32_t Group::det(const Mat& x) const {
  const std::uint64_t q = q_;
  return static_cast<std::uint32_t>((std::uint64_t{x.a} * x.d + q * q - std::uint64_t{x.b} * x.c % q) % q);
}

std::uint32_t Group::trace(const Mat& x) const { return (x.a + x.d) % q_; }

std::vector<Mat> Group::elements() const {
  std::vector<Mat> out;
  for (std::uint32_t a = 0; a < q_; ++a)
    for (std::uint32_t b = 0; b < q_; ++b)
      for (std::uint32_t c = 0; c < q_; ++c)
        for (std::uint32_t d = 0; d < q_; ++d) {
          const Mat x{a, b, c, d};
          if (invertible(x)) out.push_back(x);
        }
  return out;
}

GL2Class Group::classify(const Mat& x) const {
  if (!invertible(x)) throw std::invalid_argument("gl2::classify: matrix is singular");
  const std::uint32_t t = trace(x), d = det(x);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t r = 0; r < q_; ++r)
    if ((std::uint64_t{r} * r + q_ * std::uint64_t{q_} - std::uint64_t{t} * r % q_ + d) % q_ == 0) roots.push_back(r);
  GL2Class c;
  if (roots.size() == 2) {
    c.kind = ClassKind::kSplit;
    c.a1 = roots[0];
    c.a2 = roots[1];
  } else if (roots.size() == 1) {
    c.z = roots[0];
    c.kind = (x.b == 0 && x.c == 0) ? ClassKind::kCentral : ClassKind::kCentralUnipotent;
  } else {
    c.kind = ClassKind::kElliptic;
    c.t = elliptic_root_.at({t, d});
  }
  return c;
}

std::uint64_t Group::class_size(const GL2Class& c) const {
  const std::uint64_t q = q_;
  switch (c.kind) {
    case ClassKind::kCentral:
      return 1;
    case ClassKind::kCentralUnipotent:
      return q * q - 1;
    case ClassKind::kSplit:
      return q * (q + 1);
    case ClassKind::kElliptic:
      return q * (q - 1);
  }
  return 0;
}

std::vector<GL2Class> Group::classes() const {
  std::set<GL2Class> seen;
  for (const auto& x : elements()) seen.insert(classify(x));
  return {seen.begin(), seen.end()};
}

std::uint64_t Group::psi_exponent(std::int64_t x) const {
  return arith::mulmod(arith::mod(x, q_), tower_->group_order(), m_);
}

std::uint64_t Group::base_char_exponent(std::uint64_t j, std::uint32_t a) const {
  // a = Nr(g)^k with Nr(g) = g^{q+1}
  const std::uint64_t k = tower_->log(ff::Element{a}) / (q_ + 1);
  return arith::mulmod(arith::mulmod(j % (q_ - 1), k, q_ - 1), m_ / (q_ - 1), m_);
}

namespace {

CycloElement conj(const CycloElement& x) { return x.galois(-1); }

CycloElement class_value(const Group& G, const chars::MultChar& chi, const GL2Class& c) {
  const std::uint64_t m = G.conductor();
  const std::uint32_t q = G.q();
  switch (c.kind) {
    case ClassKind::kCentral:
      return chi.value(ff::Element{c.z}) * cyclo::Integer(q - 1);
    case ClassKind::kCentralUnipotent:
      return -chi.value(ff::Element{c.z});
    case ClassKind::kSplit:
      return CycloElement::zero(m);
    case ClassKind::kElliptic: {
      const auto& F = chi.tower();
      return -(chi.value(c.t) + chi.value(F.pow(c.t, q)));
    }
  }
  return CycloElement::zero(m);
}

std::map<GL2Class, CycloElement> class_table(const Group& G, std::uint64_t e) {
  const chars::MultChar chi(G.quadratic(), static_cast<std::int64_t>(e));
  std::map<GL2Class, CycloElement> out;
  for (const auto& c : G.classes()) out.emplace(c, class_value(G, chi, c));
  return out;
}

}  // namespace

ValidationReport CuspidalCharacter::validate(const Group& G, std::uint64_t e) {
  return validate_table(G, class_table(G, e));
}

ValidationReport CuspidalCharacter::validate_table(const Group& G, const std::map<GL2Class, CycloElement>& values) {
  ValidationReport r;
  const std::uint64_t m = G.conductor();
  const std::uint32_t q = G.q();
  cyclo::Integer dim;
  r.dimension_ok = values.at(G.classify(Mat{})).is_integer(&dim) && dim == q - 1;
  if (!r.dimension_ok) r.failure = "dimension";

  CycloElement norm = CycloElement::zero(m), total = CycloElement::zero(m);
  for (const auto& [c, v] : values) {
    const cyclo::Integer size = static_cast<unsigned long>(G.class_size(c));
    norm = norm + v * conj(v) * size;
    total = total + v * size;
  }
  cyclo::Integer nv;
  r.norm_ok = norm.is_integer(&nv) && nv == static_cast<unsigned long>(G.order());
  if (!r.norm_ok && r.failure.empty()) r.failure = "norm";
  r.trivial_ok = total.is_zero();
  if (!r.trivial_ok && r.failure.empty()) r.failure = "trivial";

  // Frobenius reciprocity: ⟨χ_π|_B, μ1 ⊗ μ2⟩_B = 0 for every character of the torus
  r.cuspidal_ok = true;
  for (std::uint64_t j1 = 0; j1 + 1 < q && r.cuspidal_ok; ++j1)
    for (std::uint64_t j2 = 0; j2 + 1 < q && r.cuspidal_ok; ++j2) {
      CycloElement acc = CycloElement::zero(m);
      for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t d = 1; d < q; ++d) {
          const std::uint64_t mu = (G.base_char_exponent(j1, a) + G.base_char_exponent(j2, d)) % m;
          CycloElement column = CycloElement::zero(m);
          for (std::uint32_t x = 0; x < q; ++x) column = column + values.at(G.classify(Mat{a, x, 0, d}));
          acc = acc + column * CycloElement::zeta_power(m, (m - mu) % m);
        }
      if (!acc.is_zero()) {
        r.cuspidal_ok = false;
        r.failure = "cuspidal(" + std::to_string(j1) + "," + std::to_string(j2) + ")";
      }
    }
  return r;
}

CuspidalCharacter::CuspidalCharacter(std::shared_ptr<const Group> group, std::uint64_t e)
    : group_(std::move(group)), e_(e % group_->quadratic()->group_order()) {
  const chars::CharGroup grp(group_->q(), 2);
  if (!grp.is_regular(e_)) throw DomainError("gl2: character exponent " + std::to_string(e_) + " is not regular");
  values_ = class_table(*group_, e_);
  validation_ = validate_table(*group_, values_);
  if (!validation_.ok())
    throw InternalError("gl2: cuspidal character formula failed the " + validation_.failure + " gate for e = " +
                        std::to_string(e_));
}

CycloElement CuspidalCharacter::value(const GL2Class& c) const { return values_.at(c); }

ScaledCyclo bessel(const CuspidalCharacter& pi, const Mat& g) {
  const Group& G = pi.group();
  const std::uint64_t m = G.conductor();
  CycloElement acc = CycloElement::zero(m);
  for (std::uint32_t x = 0; x < G.q(); ++x)
    acc = acc + pi.value(G.mul(g, Group::unipotent(x))) * CycloElement::zeta_power(m, G.psi_exponent(-static_cast<std::int64_t>(x)));
  return ScaledCyclo(std::move(acc), 1, G.q());
}

ScaledCyclo gamma_via_bessel(const CuspidalCharacter& pi, std::uint64_t k) {
  const Group& G = pi.group();
  const std::uint64_t m = G.conductor();
  ScaledCyclo acc(CycloElement::zero(m), 0, G.q());
  for (std::uint32_t a = 1; a < G.q(); ++a) {
    const ScaledCyclo tau(CycloElement::zeta_power(m, G.base_char_exponent(k, a)), 0, G.q());
    acc = acc + bessel(pi, Group::antidiagonal(a)) * tau;
  }
  return acc;
}

CheckReport gl2_check(std::uint32_t q, std::uint32_t max_q, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.q = q;
  auto G = std::make_shared<const Group>(q, max_q);
  const std::uint64_t m = G->conductor();
  const chars::CharGroup grp(q, 2);

  const auto classes = G->classes();
  std::uint64_t total = 0;
  for (const auto& c : classes) total += G->class_size(c);
  rep.class_count_ok = classes.size() == static_cast<std::uint64_t>(q) * q - 1 && total == G->order();

  std::vector<std::uint64_t> exps;
  for (std::uint64_t e = 0; e < grp.order(); ++e)
    if (grp.is_regular(e)) exps.push_back(e);
  rep.characters = exps.size();

  struct PerChar {
    bool gates = false, identity = false, equivariance = false, support = false, fourier = false;
    std::uint64_t mismatches = 0, inverse_mismatches = 0, comparisons = 0;
    std::vector<ScaledCyclo> bessel_vector;
    std::string witness;
  };
  std::vector<PerChar> results(exps.size());
  parallel_chunks(exps.size(), jobs, [&](unsigned, std::size_t b, std::size_t end) {
    for (std::size_t i = b; i < end; ++i) {
      auto& r = results[i];
      const std::uint64_t e = exps[i];
      std::optional<CuspidalCharacter> built;
      try {
        built.emplace(G, e);
      } catch (const InternalError& err) {
        r.witness = err.what();
        continue;
      }
      r.gates = true;
      const CuspidalCharacter& pi = *built;

      const ScaledCyclo one(CycloElement::one(m), 0, q);
      r.identity = bessel(pi, Mat{}) == one;

      for (std::uint32_t a = 1; a < q; ++a) r.bessel_vector.push_back(bessel(pi, Group::antidiagonal(a)));

      // B(u1 g u2) = ψ(x1 + x2) B(g) on a fixed pseudo-random sample
      std::mt19937_64 rng(0x5eed + e);
      const auto elements = G->elements();
      r.equivariance = true;
      for (int trial = 0; trial < 12 && r.equivariance; ++trial) {
        const Mat g = elements[rng() % elements.size()];
        const std::uint32_t x1 = rng() % q, x2 = rng() % q;
        const ScaledCyclo lhs = bessel(pi, G->mul(G->mul(Group::unipotent(x1), g), Group::unipotent(x2)));
        const ScaledCyclo rhs =
            ScaledCyclo(CycloElement::zeta_power(m, G->psi_exponent(static_cast<std::int64_t>(x1) + x2)), 0, q) *
            bessel(pi, g);
        r.equivariance = lhs == rhs;
      }

      // mirabolic elements [[a, x], [0, 1]] with a ≠ 1 lie outside the support
      r.support = true;
      for (std::uint32_t a = 2; a < q && r.support; ++a)
        for (std::uint32_t x = 0; x < q && r.support; ++x) r.support = bessel(pi, Mat{a, x, 0, 1}).numerator().is_zero();

      const chars::MultChar chi(G->quadratic(), static_cast<std::int64_t>(e));
      std::vector<ScaledCyclo> gammas;
      for (std::uint64_t k = 0; k + 1 < q; ++k) {
        const ScaledCyclo via_bessel = gamma_via_bessel(pi, k);
        gammas.push_back(via_bessel);
        ++r.comparisons;
        if (!(via_bessel == gauss::gamma_n_by_1(chi, k))) {
          ++r.mismatches;
          if (r.witness.empty()) r.witness = "gamma mismatch e=" + std::to_string(e) + " k=" + std::to_string(k);
        }
        if (!(via_bessel == gauss::gamma_n_by_1(chi.inverse(), k))) ++r.inverse_mismatches;
      }

      // (q−1) B(w_a) = Σ_k γ_k conj(τ_k(a))
      r.fourier = true;
      for (std::uint32_t a = 1; a < q && r.fourier; ++a) {
        ScaledCyclo acc(CycloElement::zero(m), 0, q);
        for (std::uint64_t k = 0; k + 1 < q; ++k)
          acc = acc + gammas[k] * ScaledCyclo(CycloElement::zeta_power(m, (m - G->base_char_exponent(k, a)) % m), 0, q);
        const ScaledCyclo lhs = r.bessel_vector[a - 1] * ScaledCyclo(CycloElement::integer(m, q - 1), 0, q);
        r.fourier = acc == lhs;
      }
    }
  });

  rep.gates_ok = rep.bessel_identity_ok = rep.equivariance_ok = rep.mirabolic_support_ok = rep.fourier_ok = true;
  for (const auto& r : results) {
    rep.gates_ok = rep.gates_ok && r.gates;
    rep.bessel_identity_ok = rep.bessel_identity_ok && r.identity;
    rep.equivariance_ok = rep.equivariance_ok && r.equivariance;
    rep.mirabolic_support_ok = rep.mirabolic_support_ok && r.support;
    rep.fourier_ok = rep.fourier_ok && r.fourier;
    rep.gamma_mismatches += r.mismatches;
    rep.gamma_inverse_mismatches += r.inverse_mismatches;
    rep.comparisons += r.comparisons;
    if (rep.witness.empty() && !r.witness.empty()) rep.witness = r.witness;
  }

  // restricted Bessel vectors: equal exactly on Frobenius orbits
  rep.separation_ok = rep.conjugate_invariance_ok = rep.gates_ok;
  if (rep.gates_ok)
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (std::size_t j = i + 1; j < exps.size(); ++j) {
        const bool same_orbit = grp.orbit_rep(exps[i]) == grp.orbit_rep(exps[j]);
        const bool same_vector = results[i].bessel_vector == results[j].bessel_vector;
        if (same_orbit && !same_vector) rep.conjugate_invariance_ok = false;
        if (!same_orbit && same_vector) {
          rep.separation_ok = false;
          if (rep.witness.empty())
            rep.witness = "bessel vectors agree for e=" + std::to_string(exps[i]) + " and e=" + std::to_string(exps[j]);
        }
      }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gaussconv::gl2
