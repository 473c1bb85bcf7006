#include "gaussconv/gauss.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gaussconv/errors.hpp"

namespace gaussconv::gauss {

ScaledCyclo::ScaledCyclo(CycloElement numerator, std::int64_t q_power, std::uint64_t q)
    : numerator_(std::move(numerator)), q_power_(q_power), q_(q) {
  if (q < 2) throw std::invalid_argument("ScaledCyclo: q must be at least 2");
  canonicalize();
}

void ScaledCyclo::canonicalize() {
  const Integer qq = static_cast<unsigned long>(q_);
  if (q_power_ < 0) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(-q_power_));
    numerator_ = numerator_ * scale;
    q_power_ = 0;
  }
  if (numerator_.is_zero()) {
    q_power_ = 0;
    return;
  }
  while (q_power_ > 0 && numerator_.divisible_by(qq)) {
    numerator_ = numerator_.divexact(qq);
    --q_power_;
  }
}

ScaledCyclo ScaledCyclo::operator*(const ScaledCyclo& b) const {
  if (q_ != b.q_) throw std::invalid_argument("ScaledCyclo: mismatched q");
  return ScaledCyclo(numerator_ * b.numerator_, q_power_ + b.q_power_, q_);
}

ScaledCyclo ScaledCyclo::operator+(const ScaledCyclo& b) const {
  if (q_ != b.q_) throw std::invalid_argument("ScaledCyclo: mismatched q");
  const Integer qq = static_cast<unsigned long>(q_);
  const std::int64_t top = std::max(q_power_, b.q_power_);
  Integer sa, sb;
  mpz_pow_ui(sa.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(top - q_power_));
  mpz_pow_ui(sb.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(top - b.q_power_));
  return ScaledCyclo(numerator_ * sa + b.numerator_ * sb, top, q_);
}

ScaledCyclo ScaledCyclo::operator-() const { return ScaledCyclo(-numerator_, q_power_, q_); }

ScaledCyclo ScaledCyclo::lift(std::uint64_t m2) const { return ScaledCyclo(numerator_.lift(m2), q_power_, q_); }

// ---------------------------------------------------------------------------

GaussTable::GaussTable(std::shared_ptr<const ff::FieldTower> tower) : tower_(std::move(tower)) {
  N_ = tower_->group_order();
  m_ = tower_->p() * N_;
  cond_ = cyclo::conductor(m_);
}

std::vector<std::int64_t> GaussTable::canonical_S(std::int64_t e) const {
  const std::uint64_t ee = arith::mod(e, N_);
  const std::uint64_t step = arith::mulmod(tower_->p(), ee, m_);
  const auto traces = tower_->trace_table();
  std::vector<std::int64_t> lattice(m_, 0);
  std::uint64_t k = 0;
  for (std::uint64_t j = 0; j < N_; ++j) {
    std::uint64_t x = k + N_ * traces[j];
    if (x >= m_) x -= m_;
    ++lattice[cond_->raw_of_exponent(x)];
    k += step;
    if (k >= m_) k -= m_;
  }
  cond_->reduce_raw(lattice);
  return cond_->compact(lattice);
}

CycloElement GaussTable::S(std::int64_t e) const {
  const auto small = canonical_S(e);
  std::vector<Integer> coeffs(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) coeffs[i] = static_cast<long>(small[i]);
  return CycloElement::from_canonical(cond_, std::move(coeffs));
}

CycloElement GaussTable::G_direct(std::int64_t e) const {
  const std::uint64_t ee = arith::mod(e, N_);
  std::vector<std::int64_t> counts(m_, 0);
  for (std::uint64_t j = 0; j < N_; ++j) {
    const ff::Element a = tower_->from_log(j);
    const ff::Element inv = tower_->inv(a);
    const std::uint64_t x =
        (arith::mulmod(arith::mulmod(tower_->p(), ee, m_), j, m_) + N_ * tower_->trace_abs(inv)) % m_;
    ++counts[x];
  }
  return CycloElement::from_exponent_counts(counts, m_);
}

std::uint64_t unramified_galois_index(std::uint64_t p, std::uint64_t N, std::int64_t a) {
  // j ≡ a mod N, j ≡ 1 mod p
  const std::uint64_t m = p * N;
  const std::uint64_t an = arith::mod(a, N);
  const std::uint64_t t = arith::mulmod(arith::mod(1 - static_cast<std::int64_t>(an % p), p), arith::invmod(N % p, p), p);
  return (an + N * t) % m;
}

CycloElement gauss_S(const chars::MultChar& c) {
  return GaussTable(c.tower_ptr()).S(static_cast<std::int64_t>(c.exponent()));
}

CycloElement gauss_G(const chars::MultChar& c) {
  return GaussTable(c.tower_ptr()).S(-static_cast<std::int64_t>(c.exponent()));
}

CycloElement gauss_G_direct(const chars::MultChar& c) {
  return GaussTable(c.tower_ptr()).G_direct(static_cast<std::int64_t>(c.exponent()));
}

CycloElement subfield_gauss_S(const ff::FieldTower& tower, unsigned d, std::int64_t e) {
  if (d == 0 || tower.n() % d != 0) throw std::invalid_argument("subfield_gauss_S: d must divide n");
  const std::uint64_t p = tower.p();
  const std::uint64_t Nd = arith::ipow(tower.q(), d) - 1;
  const std::uint64_t m = p * Nd;
  const std::uint64_t stride = tower.group_order() / Nd;
  const std::uint64_t ee = arith::mod(e, Nd);
  const unsigned abs_degree = tower.f() * d;
  std::vector<std::int64_t> counts(m, 0);
  for (std::uint64_t j = 0; j < Nd; ++j) {
    const ff::Element x = tower.from_log(j * stride);
    const std::uint64_t k = (arith::mulmod(p * ee % m, j, m) + Nd * tower.subfield_trace(x, abs_degree)) % m;
    ++counts[k];
  }
  return CycloElement::from_exponent_counts(counts, m);
}

ScaledCyclo gamma_n_by_1(const chars::MultChar& c, std::uint64_t k) {
  const auto& grp = c.group();
  if (grp.n() < 2) throw DomainError("gamma_n_by_1: requires n >= 2");
  if (!c.is_regular())
    throw DomainError("gamma_n_by_1: character exponent " + std::to_string(c.exponent()) + " is not regular");
  const std::uint64_t shifted = grp.twist(c.exponent(), k);
  // Σ_a ψ(Tr a^{-1}) χ_{e+k̂}(a) = S(χ_{−(e+k̂)})
  CycloElement sum = GaussTable(c.tower_ptr()).S(-static_cast<std::int64_t>(shifted));
  const int tau_minus_one = grp.q() % 2 == 0 ? 1 : (k % 2 == 0 ? 1 : -1);
  const unsigned n1 = grp.n() - 1;
  int sign = (n1 % 2 == 0) ? 1 : -1;
  if (n1 % 2 == 1) sign *= tau_minus_one;
  if (sign < 0) sum = -sum;
  return ScaledCyclo(std::move(sum), n1, grp.q());
}

CycloElement etale_gauss(const ff::EtaleAlgebra& A, const std::vector<std::int64_t>& exponents) {
  if (exponents.size() != A.degrees.size())
    throw std::invalid_argument("etale_gauss: expected " + std::to_string(A.degrees.size()) + " characters, got " +
                                std::to_string(exponents.size()));
  std::uint64_t lcm_n = 1;
  for (std::size_t i = 0; i < A.degrees.size(); ++i) lcm_n = std::lcm(lcm_n, A.factor_order(i));
  const std::uint64_t m = A.p * lcm_n;
  CycloElement acc = CycloElement::one(m);
  for (std::size_t i = 0; i < A.degrees.size(); ++i)
    acc = acc * subfield_gauss_S(*A.ambient, A.degrees[i], exponents[i]).lift(m);
  return acc;
}

HasseDavenportResult hasse_davenport_check(std::uint32_t p, unsigned f, std::uint64_t e, unsigned m,
                                           const ff::TowerOptions& options) {
  if (m == 0) throw std::invalid_argument("hasse_davenport_check: lift degree must be positive");
  auto tower = ff::build_tower(p, f, m, options);
  const std::uint64_t q = tower->q();
  const std::uint64_t lifted = arith::mulmod(e % (q - 1), tower->group_order() / (q - 1), tower->group_order());
  const CycloElement big = GaussTable(tower).S(static_cast<std::int64_t>(lifted));
  const CycloElement small = subfield_gauss_S(*tower, 1, static_cast<std::int64_t>(e));
  const std::uint64_t M = big.m();
  const CycloElement rhs = (-small.lift(M)).pow(m);
  return {(-big) == rhs, M, lifted};
}

TensorRhs tensor_gamma_rhs(std::uint32_t p, unsigned f, std::uint64_t e_chi, std::uint64_t e_eta, unsigned n,
                           unsigned m, const ff::TowerOptions& options) {
  if (!(n > m && m >= 1)) throw std::invalid_argument("tensor_gamma_rhs: requires n > m >= 1");
  auto tower = ff::build_tower(p, f, m * n, options);
  const std::uint64_t q = tower->q();
  const std::uint64_t Q1 = tower->group_order();
  const chars::CharGroup gn(q, n), gm(q, m);
  if (!gn.is_regular(e_chi)) throw DomainError("tensor_gamma_rhs: chi is not regular");
  if (!gm.is_regular(e_eta)) throw DomainError("tensor_gamma_rhs: eta is not regular");
  const std::uint64_t b = (arith::mulmod(e_chi % gn.order(), Q1 / gn.order(), Q1) +
                           arith::mulmod(e_eta % gm.order(), Q1 / gm.order(), Q1)) %
                          Q1;
  CycloElement g = GaussTable(tower).S(-static_cast<std::int64_t>(b));
  int sign = (m * (n - 1)) % 2 == 0 ? 1 : -1;
  if ((m - 1) % 2 == 1) sign *= gn.value_at_minus_one(e_chi);
  if ((n - 1) % 2 == 1) sign *= gm.value_at_minus_one(e_eta);
  if (sign < 0) g = -g;
  const std::int64_t q_power = static_cast<std::int64_t>(m) * n - (static_cast<std::int64_t>(m) * m + m) / 2;
  return {ScaledCyclo(std::move(g), q_power, q), b, tower};
}

std::vector<ModulusCheck> modulus_identity_batch(const GaussTable& table) {
  const auto& tower = table.tower();
  const std::uint64_t N = table.group_order();
  const std::uint64_t p = tower.p();
  const auto t = tower.trace_table();
  // C[d][s] = #{j : t_{j+d} + t_j ≡ s}, reduced in Z[ζ_p] to coordinates s < p−1.
  const std::uint64_t width = p == 2 ? 1 : p - 1;
  std::vector<std::int64_t> coeff(N * width, 0);
  std::vector<std::int64_t> counts(p);
  for (std::uint64_t d = 0; d < N; ++d) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t j = 0; j < N; ++j) {
      std::uint64_t jd = j + d;
      if (jd >= N) jd -= N;
      ++counts[(t[jd] + t[j]) % p];
    }
    for (std::uint64_t s = 0; s < width; ++s) coeff[d * width + s] = counts[s] - counts[p - 1];
  }
  std::vector<bool> column_used(width, false);
  for (std::uint64_t d = 0; d < N; ++d)
    for (std::uint64_t s = 0; s < width; ++s)
      if (coeff[d * width + s] != 0) column_used[s] = true;

  auto condN = cyclo::conductor(N);
  const std::int64_t qn = static_cast<std::int64_t>(tower.size());
  std::vector<ModulusCheck> out;
  std::vector<std::int64_t> lattice(N);
  for (std::uint64_t e = 1; e < N; ++e) {
    const std::int64_t expected = (p % 2 == 0 || e % 2 == 0) ? qn : -qn;
    bool ok = true;
    for (std::uint64_t s = 0; s < width && ok; ++s) {
      if (!column_used[s]) {
        if (s == 0) ok = false;
        continue;
      }
      std::fill(lattice.begin(), lattice.end(), 0);
      std::uint64_t k = 0;
      for (std::uint64_t d = 0; d < N; ++d) {
        lattice[condN->raw_of_exponent(k)] += coeff[d * width + s];
        k += e;
        if (k >= N) k -= N;
      }
      condN->reduce_raw(lattice);
      const auto canon = condN->compact(lattice);
      for (std::size_t i = 0; i < canon.size() && ok; ++i) {
        const std::int64_t want = (s == 0 && i == 0) ? expected : 0;
        if (canon[i] != want) ok = false;
      }
    }
    out.push_back({e, ok});
  }
  return out;
}

bool modulus_identity_direct(const GaussTable& table, std::int64_t e) {
  const auto& tower = table.tower();
  const std::uint64_t N = table.group_order();
  const CycloElement s = table.S(e);
  const CycloElement conj = s.galois(static_cast<std::int64_t>(unramified_galois_index(tower.p(), N, -1)));
  const chars::CharGroup grp(tower.q(), tower.n());
  const Integer expected = Integer(static_cast<long>(tower.size())) * grp.value_at_minus_one(arith::mod(e, N));
  Integer value;
  return (s * conj).is_integer(&value) && value == expected;
}

std::string to_string(const CycloElement& a) {
  Integer v;
  if (a.is_integer(&v)) return v.get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const auto& c = a.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const Integer mag = abs(c);
    const std::uint64_t k = a.conductor().exponent_of_canonical(i);
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z" << a.m() << "^" << k;
  }
  return first ? "0" : os.str();
}

std::string to_string(const ScaledCyclo& a) {
  const std::string num = to_string(a.numerator());
  if (a.q_power() == 0) return num;
  return "(" + num + ")/" + std::to_string(a.q()) + "^" + std::to_string(a.q_power());
}

}  // namespace gaussconv::gauss
