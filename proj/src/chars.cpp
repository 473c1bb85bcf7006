#include "gaussconv/chars.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gaussconv::chars {

CharGroup::CharGroup(std::uint64_t q, unsigned n) : q_(q), n_(n) {
  if (q < 2 || n == 0) throw std::invalid_argument("CharGroup: need q >= 2 and n >= 1");
  order_ = arith::ipow(q, n) - 1;
  twist_unit_ = order_ / (q - 1);
}

bool CharGroup::is_regular(std::uint64_t e) const {
  e %= order_;
  std::uint64_t x = arith::mulmod(e, q_, order_);
  for (unsigned i = 1; i < n_; ++i) {
    if (x == e) return false;
    x = arith::mulmod(x, q_, order_);
  }
  return true;
}

std::vector<std::uint64_t> CharGroup::frobenius_orbit(std::uint64_t e) const {
  std::vector<std::uint64_t> out;
  std::uint64_t x = e % order_;
  for (unsigned i = 0; i < n_; ++i) {
    out.push_back(x);
    x = arith::mulmod(x, q_, order_);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t CharGroup::orbit_rep(std::uint64_t e) const {
  std::uint64_t best = e % order_, x = best;
  for (unsigned i = 1; i < n_; ++i) {
    x = arith::mulmod(x, q_, order_);
    best = std::min(best, x);
  }
  return best;
}

std::uint64_t CharGroup::twist(std::uint64_t e, std::uint64_t k) const {
  if (k >= q_ - 1)
    throw std::invalid_argument("twist index " + std::to_string(k) + " outside [0, " + std::to_string(q_ - 1) + ")");
  return (e % order_ + arith::mulmod(k, twist_unit_, order_)) % order_;
}

std::uint64_t CharGroup::char_order(std::uint64_t e) const { return order_ / std::gcd(e % order_, order_); }

int CharGroup::value_at_minus_one(std::uint64_t e) const {
  if (q_ % 2 == 0) return 1;
  return (e % order_) % 2 == 0 ? 1 : -1;
}

std::vector<std::uint64_t> CharGroup::orbit_reps(bool regular_only) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t e = 0; e < order_; ++e) {
    if (orbit_rep(e) != e) continue;
    if (regular_only && !is_regular(e)) continue;
    out.push_back(e);
  }
  return out;
}

std::uint64_t CharGroup::regular_count_formula() const {
  std::int64_t total = 0;
  for (auto d : arith::divisors(n_))
    total += arith::moebius(n_ / d) * static_cast<std::int64_t>(arith::ipow(q_, static_cast<unsigned>(d)) - 1);
  return static_cast<std::uint64_t>(total);
}

MultChar::MultChar(std::shared_ptr<const ff::FieldTower> tower, std::int64_t e)
    : tower_(std::move(tower)), group_(tower_->q(), tower_->n()), e_(group_.normalize(e)) {}

std::uint64_t MultChar::value_exponent(ff::Element x) const {
  const std::uint64_t m = conductor();
  return arith::mulmod(arith::mulmod(tower_->p(), e_, m), tower_->log(x), m);
}

cyclo::CycloElement MultChar::value(ff::Element x) const {
  if (x == tower_->zero()) return cyclo::CycloElement::zero(conductor());
  return cyclo::CycloElement::zeta_power(conductor(), value_exponent(x));
}

}  // namespace gaussconv::chars
