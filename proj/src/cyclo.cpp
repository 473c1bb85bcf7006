#include "gaussconv/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gaussconv/errors.hpp"

namespace gaussconv::cyclo {

Conductor::Conductor(std::uint64_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  factors_ = m > 1 ? arith::factorize(m) : std::vector<arith::PrimePower>{};
  const std::size_t r = factors_.size();
  raw_dim_.resize(r);
  canon_dim_.resize(r);
  raw_stride_.assign(r, 1);
  phi_ = 1;
  for (std::size_t i = 0; i < r; ++i) {
    raw_dim_[i] = factors_[i].value;
    canon_dim_[i] = factors_[i].value / factors_[i].prime * (factors_[i].prime - 1);
    phi_ *= canon_dim_[i];
    growth_ *= std::max<std::uint64_t>(1, factors_[i].prime - 1);
  }
  for (std::size_t i = r; i-- > 1;) raw_stride_[i - 1] = raw_stride_[i] * raw_dim_[i];

  // c_i = k · (m/m_i)^{-1} mod m_i
  std::vector<std::uint64_t> cofactor_inv(r);
  for (std::size_t i = 0; i < r; ++i)
    cofactor_inv[i] = raw_dim_[i] == 1 ? 0 : arith::invmod((m / raw_dim_[i]) % raw_dim_[i], raw_dim_[i]);
  raw_of_exp_.resize(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < r; ++i) idx += arith::mulmod(k % raw_dim_[i], cofactor_inv[i], raw_dim_[i]) * raw_stride_[i];
    raw_of_exp_[k] = static_cast<std::uint32_t>(idx);
  }

  exp_of_canon_.resize(phi_);
  raw_of_canon_.resize(phi_);
  std::vector<std::uint64_t> coord(r, 0);
  for (std::uint64_t idx = 0; idx < phi_; ++idx) {
    std::uint64_t k = 0, raw = 0;
    for (std::size_t i = 0; i < r; ++i) {
      k = (k + arith::mulmod(coord[i], m / raw_dim_[i], m)) % m;
      raw += coord[i] * raw_stride_[i];
    }
    exp_of_canon_[idx] = k;
    raw_of_canon_[idx] = static_cast<std::uint32_t>(raw);
    for (std::size_t i = r; i-- > 0;) {
      if (++coord[i] < canon_dim_[i]) break;
      coord[i] = 0;
    }
  }
}

std::shared_ptr<const Conductor> conductor(std::uint64_t m, std::uint64_t cap) {
  if (m > cap)
    throw ResourceError("cyclotomic conductor " + std::to_string(m) + " exceeds cap " + std::to_string(cap), cap);
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const Conductor>> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(m); it != memo.end()) return it->second;
  }
  auto built = std::make_shared<const Conductor>(m);
  std::lock_guard lock(mutex);
  auto [it, inserted] = memo.emplace(m, built);
  return it->second;
}

IntPoly cyclotomic_poly(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_poly: m must be positive");
  IntPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (auto d : arith::divisors(m)) {
    if (d == m) continue;
    const IntPoly den = cyclotomic_poly(d);
    // exact division by a monic polynomial
    const std::size_t dd = den.size() - 1;
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const Integer c = num[i];
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (std::size_t j = 0; j < dd; ++j)
      if (num[j] != 0) throw InternalError("cyclotomic_poly: inexact division");
    num = std::move(quot);
  }
  return num;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
std::vector<Integer> to_integers(const std::vector<T>& v) {
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<T, Integer>)
      out[i] = v[i];
    else
      out[i] = static_cast<long>(v[i]);
  }
  return out;
}

Integer l1_norm(const std::vector<Integer>& v) {
  Integer s = 0;
  for (const auto& c : v) s += abs(c);
  return s;
}

bool fits_int64(const Integer& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) < 62; }

}  // namespace

CycloElement CycloElement::zero(std::uint64_t m) {
  auto c = cyclo::conductor(m);
  std::vector<Integer> z(c->phi(), 0);
  return {std::move(c), std::move(z)};
}

CycloElement CycloElement::integer(std::uint64_t m, const Integer& v) {
  CycloElement out = zero(m);
  out.coeffs_[0] = v;  // canonical index 0 is ζ^0 on every axis
  return out;
}

CycloElement CycloElement::zeta_power(std::uint64_t m, std::uint64_t k) {
  std::vector<std::int64_t> counts(m, 0);
  counts[k % m] = 1;
  return from_exponent_counts(counts, m);
}

CycloElement CycloElement::reduce(const IntPoly& raw, std::uint64_t m) {
  auto c = cyclo::conductor(m);
  std::vector<Integer> lattice(m, 0);
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (raw[i] != 0) lattice[c->raw_of_exponent(i % m)] += raw[i];
  c->reduce_raw(lattice);
  auto coeffs = c->compact(lattice);
  return {std::move(c), std::move(coeffs)};
}

CycloElement CycloElement::from_exponent_counts(const std::vector<std::int64_t>& counts, std::uint64_t m) {
  if (counts.size() != m) throw std::invalid_argument("from_exponent_counts: size must equal the conductor");
  auto c = cyclo::conductor(m);
  std::uint64_t l1 = 0;
  for (auto v : counts) l1 += static_cast<std::uint64_t>(v < 0 ? -v : v);
  if (l1 < (std::uint64_t{1} << 62) / c->growth_bound()) {
    std::vector<std::int64_t> lattice(m, 0);
    for (std::uint64_t k = 0; k < m; ++k)
      if (counts[k] != 0) lattice[c->raw_of_exponent(k)] += counts[k];
    c->reduce_raw(lattice);
    auto coeffs = to_integers(c->compact(lattice));
    return {std::move(c), std::move(coeffs)};
  }
  IntPoly raw(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) raw[k] = static_cast<long>(counts[k]);
  return reduce(raw, m);
}

CycloElement CycloElement::from_canonical(std::shared_ptr<const Conductor> c, std::vector<Integer> coeffs) {
  if (!c || coeffs.size() != c->phi()) throw std::invalid_argument("from_canonical: coefficient count must equal phi(m)");
  return {std::move(c), std::move(coeffs)};
}

void CycloElement::check_same(const CycloElement& b) const {
  if (!cond_ || !b.cond_ || cond_->m() != b.cond_->m())
    throw std::invalid_argument("conductor mismatch: " + std::to_string(m()) + " vs " + std::to_string(b.m()));
}

IntPoly CycloElement::power_basis() const {
  const std::uint64_t M = m();
  IntPoly poly(M, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) poly[cond_->exponent_of_canonical(i)] += coeffs_[i];
  const IntPoly phi_m = cyclotomic_poly(M);
  const std::size_t d = phi_m.size() - 1;
  for (std::size_t i = poly.size(); i-- > d;) {
    const Integer c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) poly[i - d + j] -= c * phi_m[j];
  }
  poly.resize(d);
  return poly;
}

CycloElement CycloElement::operator+(const CycloElement& b) const {
  check_same(b);
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] + b.coeffs_[i];
  return {cond_, std::move(out)};
}

CycloElement CycloElement::operator-(const CycloElement& b) const {
  check_same(b);
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] - b.coeffs_[i];
  return {cond_, std::move(out)};
}

CycloElement CycloElement::operator-() const {
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coeffs_[i];
  return {cond_, std::move(out)};
}

CycloElement CycloElement::operator*(const Integer& s) const {
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] * s;
  return {cond_, std::move(out)};
}

CycloElement CycloElement::operator*(const CycloElement& b) const {
  check_same(b);
  const Conductor& c = *cond_;
  const std::uint64_t M = c.m();
  std::vector<std::pair<std::uint64_t, std::size_t>> nz_a, nz_b;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) nz_a.emplace_back(c.exponent_of_canonical(i), i);
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
    if (b.coeffs_[i] != 0) nz_b.emplace_back(c.exponent_of_canonical(i), i);
  if (nz_a.empty() || nz_b.empty()) return zero(M);

  const Integer bound = l1_norm(coeffs_) * l1_norm(b.coeffs_) * static_cast<unsigned long>(c.growth_bound());
  if (fits_int64(bound)) {
    std::vector<std::int64_t> av(coeffs_.size()), bv(b.coeffs_.size());
    for (auto [k, i] : nz_a) av[i] = coeffs_[i].get_si();
    for (auto [k, i] : nz_b) bv[i] = b.coeffs_[i].get_si();
    std::vector<std::int64_t> lattice(M, 0);
    for (auto [ka, ia] : nz_a) {
      const std::int64_t x = av[ia];
      for (auto [kb, ib] : nz_b) {
        std::uint64_t k = ka + kb;
        if (k >= M) k -= M;
        lattice[c.raw_of_exponent(k)] += x * bv[ib];
      }
    }
    c.reduce_raw(lattice);
    return {cond_, to_integers(c.compact(lattice))};
  }
  std::vector<Integer> lattice(M, 0);
  for (auto [ka, ia] : nz_a)
    for (auto [kb, ib] : nz_b) {
      std::uint64_t k = ka + kb;
      if (k >= M) k -= M;
      lattice[c.raw_of_exponent(k)] += coeffs_[ia] * b.coeffs_[ib];
    }
  c.reduce_raw(lattice);
  return {cond_, c.compact(lattice)};
}

CycloElement CycloElement::pow(unsigned e) const {
  CycloElement result = one(m());
  CycloElement base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

CycloElement CycloElement::galois(std::int64_t j) const {
  const std::uint64_t M = m();
  const std::uint64_t jj = arith::mod(j, M);
  if (std::gcd(jj, M) != 1)
    throw std::invalid_argument("galois: " + std::to_string(j) + " is not coprime to " + std::to_string(M));
  std::vector<Integer> lattice(M, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) lattice[cond_->raw_of_exponent(arith::mulmod(cond_->exponent_of_canonical(i), jj, M))] += coeffs_[i];
  cond_->reduce_raw(lattice);
  return {cond_, cond_->compact(lattice)};
}

CycloElement CycloElement::lift(std::uint64_t m2) const {
  const std::uint64_t M = m();
  if (m2 % M != 0)
    throw std::invalid_argument("lift: " + std::to_string(M) + " does not divide " + std::to_string(m2));
  if (m2 == M) return *this;
  auto c2 = cyclo::conductor(m2);
  const std::uint64_t scale = m2 / M;
  std::vector<Integer> lattice(m2, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) lattice[c2->raw_of_exponent(cond_->exponent_of_canonical(i) * scale)] += coeffs_[i];
  c2->reduce_raw(lattice);
  auto coeffs = c2->compact(lattice);
  return {std::move(c2), std::move(coeffs)};
}

bool CycloElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloElement::is_integer(Integer* value) const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  if (value) *value = coeffs_.empty() ? Integer(0) : coeffs_[0];
  return true;
}

bool CycloElement::divisible_by(const Integer& q) const {
  for (const auto& c : coeffs_)
    if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) return false;
  return true;
}

CycloElement CycloElement::divexact(const Integer& q) const {
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), q.get_mpz_t());
  return {cond_, std::move(out)};
}

ComplexApprox CycloElement::embed_complex(unsigned digits) const {
  if (digits < 15 || digits > 18)
    throw std::invalid_argument("embed_complex: digits must lie in [15, 18] (long double working precision)");
  const std::uint64_t M = m();
  std::complex<long double> acc = 0;
  long double mass = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const long double c = coeffs_[i].get_d();
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(cond_->exponent_of_canonical(i)) /
                              static_cast<long double>(M);
    acc += c * std::complex<long double>(std::cos(angle), std::sin(angle));
    mass += std::fabs(c);
  }
  const long double eps = std::pow(10.0L, -static_cast<long double>(digits));
  const long double terms = static_cast<long double>(coeffs_.size());
  return {acc, (mass + 1.0L) * eps * (terms + 4.0L)};
}

std::uint64_t hash_coeffs(const std::vector<std::int64_t>& coeffs) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ coeffs.size();
  for (auto v : coeffs) {
    std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    h ^= x;
  }
  return h;
}

std::uint64_t CycloElement::hash() const {
  std::vector<std::int64_t> small(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].fits_slong_p()) {
      small[i] = coeffs_[i].get_si();
    } else {
      // fold limbs of large entries
      std::uint64_t h = 0;
      const auto* z = coeffs_[i].get_mpz_t();
      for (int l = 0; l < std::abs(z->_mp_size); ++l) h = h * 0x100000001b3ULL ^ z->_mp_d[l];
      small[i] = static_cast<std::int64_t>(h ^ (z->_mp_size < 0 ? 1 : 0));
    }
  }
  return hash_coeffs(small) ^ (m() * 0x2545f4914f6cdd1dULL);
}

bool operator==(const CycloElement& a, const CycloElement& b) { return a.m() == b.m() && a.coeffs_ == b.coeffs_; }

}  // namespace gaussconv::cyclo
