#include "gaussconv/padic.hpp"

#include <stdexcept>
#include <string>

#include "gaussconv/arith.hpp"
#include "gaussconv/digits.hpp"
#include "gaussconv/errors.hpp"
#include "gaussconv/gauss.hpp"

namespace gaussconv::padic {

namespace {

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return a >= b ? a - b : a + m - b; }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

unsigned vp(std::uint64_t c, std::uint32_t p) {
  unsigned v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

}  // namespace

Ring::Ring(std::shared_ptr<const ff::FieldTower> tower, unsigned K) : tower_(std::move(tower)), K_(K) {
  p_ = tower_->p();
  D_ = tower_->degree();
  if (K == 0) throw std::invalid_argument("padic::Ring: K must be positive");
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < K; ++i) {
    if (pk > (std::uint64_t{1} << 61) / p_)
      throw ResourceError("padic::Ring: p^K with K = " + std::to_string(K) + " exceeds 61 bits", 61);
    pk *= p_;
  }
  pK_ = pk;
  F_.assign(tower_->modulus().begin(), tower_->modulus().end());
}

Elem::Elem(const Ring* ring) : ring_(ring), c_((ring->p_ - 1) * ring->D_, 0) {}

Elem Elem::integer(const Ring* ring, std::int64_t v) {
  Elem e(ring);
  e.c_[0] = arith::mod(v, ring->pK_);
  return e;
}

Elem Elem::uniformizer(const Ring* ring) {
  if (ring->p_ == 2) return integer(ring, -2);
  Elem e(ring);
  e.c_[ring->D_] = 1;
  return e;
}

Elem Elem::naive_lift(const Ring* ring, ff::Element x) {
  Elem e(ring);
  const auto digits = ring->tower_->coefficients(x);
  for (unsigned j = 0; j < ring->D_; ++j) e.c_[j] = digits[j];
  return e;
}

Elem Elem::operator+(const Elem& b) const {
  Elem r(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = addm(c_[i], b.c_[i], ring_->pK_);
  return r;
}

Elem Elem::operator-(const Elem& b) const {
  Elem r(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = subm(c_[i], b.c_[i], ring_->pK_);
  return r;
}

Elem Elem::operator-() const {
  Elem r(ring_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : ring_->pK_ - c_[i];
  return r;
}

Elem Elem::operator*(const Elem& b) const {
  const unsigned D = ring_->D_, P = ring_->p_ - 1;
  const std::uint64_t M = ring_->pK_;
  // full product in π-degree < 2P−1 and x-degree < 2D−1
  std::vector<std::uint64_t> acc((2 * P - 1) * (2 * D - 1), 0);
  const unsigned W = 2 * D - 1;
  for (unsigned i = 0; i < P; ++i)
    for (unsigned j = 0; j < D; ++j) {
      const std::uint64_t x = c_[i * D + j];
      if (x == 0) continue;
      for (unsigned k = 0; k < P; ++k)
        for (unsigned l = 0; l < D; ++l) {
          const std::uint64_t y = b.c_[k * D + l];
          if (y == 0) continue;
          auto& slot = acc[(i + k) * W + j + l];
          slot = addm(slot, arith::mulmod(x, y, M), M);
        }
    }
  // x-reduction modulo the monic lift F
  for (unsigned i = 0; i < 2 * P - 1; ++i)
    for (unsigned d = 2 * D - 1; d-- > D;) {
      const std::uint64_t c = acc[i * W + d];
      if (c == 0) continue;
      acc[i * W + d] = 0;
      for (unsigned j = 0; j < D; ++j)
        acc[i * W + d - D + j] = subm(acc[i * W + d - D + j], arith::mulmod(c, ring_->F_[j], M), M);
    }
  // π^{P} = −p
  Elem r(ring_);
  for (unsigned i = 0; i < 2 * P - 1; ++i)
    for (unsigned j = 0; j < D; ++j) {
      const std::uint64_t c = acc[i * W + j];
      if (c == 0) continue;
      if (i < P) {
        r.c_[i * D + j] = addm(r.c_[i * D + j], c, M);
      } else {
        const std::uint64_t t = arith::mulmod(c, ring_->p_, M);
        r.c_[(i - P) * D + j] = subm(r.c_[(i - P) * D + j], t, M);
      }
    }
  return r;
}

Elem Elem::pow(std::uint64_t e) const {
  Elem r = integer(ring_, 1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

ff::Element Elem::residue() const {
  std::uint64_t idx = 0, place = 1;
  for (unsigned j = 0; j < ring_->D_; ++j) {
    idx += (c_[j] % ring_->p_) * place;
    place *= ring_->p_;
  }
  return {static_cast<std::uint32_t>(idx)};
}

Elem Elem::inverse() const {
  const ff::Element r = residue();
  if (r == ring_->tower_->zero()) throw std::invalid_argument("padic inverse: element is not a unit");
  Elem y = naive_lift(ring_, ring_->tower_->inv(r));
  const Elem two = integer(ring_, 2), one = integer(ring_, 1);
  for (unsigned it = 0; it < 2 * ring_->precision() + 8; ++it) {
    const Elem next = y * (two - (*this) * y);
    if (next == y) break;
    y = next;
  }
  if (!((*this) * y == one)) throw InternalError("padic inverse: Newton iteration did not converge");
  return y;
}

Elem Elem::div_pi_power(unsigned v) const {
  const std::uint32_t p = ring_->p_;
  const unsigned D = ring_->D_, P = p - 1;
  const std::uint64_t M = ring_->pK_;
  Elem x = *this;
  for (unsigned step = 0; step < v; ++step) {
    // x/π = Σ_{i≥1} a_i π^{i−1} − (a_0/p) π^{p−2}, using π^{−1} = −π^{p−2}/p
    Elem y(ring_);
    for (unsigned i = 1; i < P; ++i)
      for (unsigned j = 0; j < D; ++j) y.c_[(i - 1) * D + j] = x.c_[i * D + j];
    for (unsigned j = 0; j < D; ++j) {
      const std::uint64_t a0 = x.c_[j];
      if (a0 % p != 0) throw InternalError("div_pi_power: element not divisible by π");
      const std::uint64_t q = a0 / p;
      y.c_[(P - 1) * D + j] = q == 0 ? 0 : M - q;
    }
    x = y;
  }
  return x;
}

std::optional<unsigned> Elem::valuation() const {
  std::optional<unsigned> best;
  const unsigned D = ring_->D_;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (c_[idx] == 0) continue;
    const unsigned v = (ring_->p_ - 1) * vp(c_[idx], ring_->p_) + static_cast<unsigned>(idx / D);
    if (!best || v < *best) best = v;
  }
  return best;
}

bool Elem::is_zero() const {
  for (auto c : c_)
    if (c != 0) return false;
  return true;
}

bool Elem::zero_mod_p_power(unsigned k) const {
  const std::uint64_t pk = arith::ipow(ring_->p_, k);
  for (auto c : c_)
    if (c % pk != 0) return false;
  return true;
}

Elem teichmuller(const Ring& ring, ff::Element x) {
  if (x == ring.tower().zero()) throw std::invalid_argument("teichmuller: zero has no Teichmüller lift");
  Elem y = Elem::naive_lift(&ring, x);
  const std::uint64_t q = ring.tower().size();
  for (unsigned it = 0; it <= ring.K() + 1; ++it) {
    const Elem next = y.pow(q);
    if (next == y) return y;
    y = next;
  }
  if (!(y.pow(q) == y)) throw InternalError("teichmuller: iteration did not stabilize");
  return y;
}

Elem zeta_p_lift(const Ring& ring) {
  const std::uint32_t p = ring.p();
  if (p == 2) return Elem::integer(&ring, -1);
  const Elem pi = Elem::uniformizer(&ring);
  const Elem one = Elem::integer(&ring, 1);
  // h(u) = u^{p−1} − 1 − Σ_{k=2}^{p−1} (C(p,k)/p) π^{k−1} u^{k−1}
  auto h = [&](const Elem& u) {
    Elem r = u.pow(p - 1) - one;
    for (unsigned k = 2; k < p; ++k)
      r = r - Elem::integer(&ring, static_cast<std::int64_t>(binomial(p, k) / p)) * pi.pow(k - 1) * u.pow(k - 1);
    return r;
  };
  auto dh = [&](const Elem& u) {
    Elem r = Elem::integer(&ring, p - 1) * u.pow(p - 2);
    for (unsigned k = 2; k < p; ++k)
      r = r - Elem::integer(&ring, static_cast<std::int64_t>(binomial(p, k) / p * (k - 1))) * pi.pow(k - 1) *
                  u.pow(k - 2);
    return r;
  };
  Elem u = one;
  for (unsigned it = 0; it < 2 * ring.precision() + 8; ++it) {
    const Elem val = h(u);
    if (val.is_zero()) break;
    u = u - val * dh(u).inverse();
  }
  if (!h(u).is_zero()) throw InternalError("zeta_p_lift: Hensel iteration failed");
  const Elem z = one + pi * u;
  Elem phi = Elem(&ring), power = one;
  for (unsigned k = 0; k < p; ++k) {
    phi = phi + power;
    power = power * z;
  }
  if (!phi.is_zero()) throw InternalError("zeta_p_lift: result is not a root of the p-th cyclotomic polynomial");
  return z;
}

Embedding::Embedding(const Ring& ring) : ring_(ring) {
  N_ = ring.tower().group_order();
  m_ = ring.p() * N_;
  const Elem t = teichmuller(ring, ring.tower().generator());
  powers_t_.reserve(N_);
  Elem x = Elem::integer(&ring, 1);
  for (std::uint64_t a = 0; a < N_; ++a) {
    powers_t_.push_back(x);
    x = x * t;
  }
  const Elem z = zeta_p_lift(ring);
  x = Elem::integer(&ring, 1);
  for (std::uint32_t b = 0; b <= ring.p(); ++b) {
    powers_z_.push_back(x);
    x = x * z;
  }
}

Elem Embedding::operator()(const cyclo::CycloElement& a) const {
  if (a.m() != m_)
    throw std::invalid_argument("embed: conductor " + std::to_string(a.m()) + " does not match " + std::to_string(m_));
  const std::uint32_t p = ring_.p();
  const std::uint64_t inv_p = N_ == 1 ? 0 : arith::invmod(p % N_, N_);
  const std::uint64_t inv_N = arith::invmod(N_ % p, p);
  std::vector<Elem> by_b(p, Elem(&ring_));
  const auto& cond = a.conductor();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const auto& c = a.coeffs()[i];
    if (c == 0) continue;
    const std::uint64_t k = cond.exponent_of_canonical(i);
    const std::uint64_t ea = N_ == 1 ? 0 : arith::mulmod(k % N_, inv_p, N_);
    const std::uint64_t eb = arith::mulmod(k % p, inv_N, p);
    cyclo::Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), ring_.modulus());
    const Elem scalar = Elem::integer(&ring_, static_cast<std::int64_t>(r.get_ui()));
    by_b[eb] = by_b[eb] + scalar * powers_t_[ea];
  }
  Elem out(&ring_);
  for (std::uint32_t b = 0; b < p; ++b) out = out + by_b[b] * powers_z_[b];
  return out;
}

unsigned required_K(unsigned n, unsigned m) { return n + m + 2; }

StickelbergerReport stickelberger_check(const Embedding& emb, std::uint64_t k) {
  const Ring& ring = emb.ring();
  const auto& tower = ring.tower();
  const std::uint32_t p = ring.p();
  const unsigned n = ring.degree();
  const std::uint64_t N = tower.group_order();
  if (k % N == 0) throw std::invalid_argument("stickelberger_check: exponent must be nonzero mod p^n − 1");
  StickelbergerReport rep;
  rep.exponent = k % N;
  const auto dv = digits::expand(p, n, static_cast<std::int64_t>(k));
  rep.s = digits::s(dv);
  rep.t = digits::t_mod_p(dv);
  if (ring.precision() < rep.s + 2)
    throw ResourceError("stickelberger_check: precision " + std::to_string(ring.precision()) + " below required " +
                            std::to_string(rep.s + 2),
                        rep.s + 2);
  const gauss::GaussTable table(ring.tower_ptr());
  const Elem e = emb(table.S(-static_cast<std::int64_t>(k)));
  rep.valuation = e.valuation();
  rep.valuation_ok = rep.valuation && *rep.valuation == rep.s;
  if (rep.valuation && *rep.valuation >= rep.s) {
    // (ζ_p − 1)^s = π^s u^s with u = (ζ_p − 1)/π
    const Elem u = (emb.zeta_p() - Elem::integer(&ring, 1)).div_pi_power(1);
    const Elem x = e.div_pi_power(rep.s) * u.inverse().pow(rep.s) * Elem::integer(&ring, rep.t);
    rep.congruence_ok = x.residue() == tower.neg(tower.one());
  }
  return rep;
}

GrossKoblitzReport gross_koblitz_check(const Embedding& emb, std::uint64_t a, unsigned m) {
  const Ring& ring = emb.ring();
  const std::uint32_t p = ring.p();
  const unsigned n = ring.degree();
  const std::uint64_t N = ring.tower().group_order();
  if (a % N == 0) throw std::invalid_argument("gross_koblitz_check: exponent must be nonzero mod p^n − 1");
  // Γ_2 is only continuous modulo 2^k for k ≥ 3: the units of Z/4 multiply to −1
  if (p == 2 && m < 2) throw DomainError("gross_koblitz_check: p = 2 needs window m >= 2");
  if (ring.K() < required_K(n, m))
    throw ResourceError("gross_koblitz_check: ring needs K >= " + std::to_string(required_K(n, m)), required_K(n, m));
  GrossKoblitzReport rep;
  rep.exponent = a % N;
  rep.window = m;
  const auto dv = digits::expand(p, n, static_cast<std::int64_t>(a));
  rep.s = digits::s(dv);
  const std::uint64_t M = arith::ipow(p, m + 1);
  rep.gamma_digits = 1 % M;
  rep.gamma_direct = 1 % M;
  for (unsigned i = 1; i <= n; ++i) {
    rep.gamma_digits = arith::mulmod(rep.gamma_digits, digits::gamma_p_truncated(i, dv, m), M);
    rep.gamma_direct = arith::mulmod(rep.gamma_direct, digits::gamma_p_direct(i, p, n, static_cast<std::int64_t>(a), m), M);
  }
  rep.gamma_agree = rep.gamma_digits == rep.gamma_direct;

  const gauss::GaussTable table(ring.tower_ptr());
  const Elem e = emb(table.S(static_cast<std::int64_t>(a)));
  const unsigned drop = n * (p - 1) - rep.s;  // valuation of S(ω^a)
  const auto val = e.valuation();
  if (!val || *val < drop) return rep;
  // S·π^s/p^n = (−1)^n S/π^{n(p−1)−s}
  Elem x = e.div_pi_power(drop);
  if (n % 2 == 1) x = -x;
  const std::int64_t target = (n % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(rep.gamma_digits);
  for (int eps : {1, -1}) {
    const Elem diff = x - Elem::integer(&ring, eps * target);
    if (diff.zero_mod_p_power(m + 1)) {
      rep.sign = eps;
      break;
    }
  }
  return rep;
}

}  // namespace gaussconv::padic
