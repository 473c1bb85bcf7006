// Brute-force reference computations for the test suites. Nothing here calls
// into the library except to read a tower's pinned modulus and generator.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gaussconv/ff.hpp"

namespace oracle {

using Complex = std::complex<long double>;
using Poly = std::vector<std::uint32_t>;  // lowest degree first, length D

inline Complex root_of_unity(std::int64_t k, std::uint64_t m) {
  const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k % static_cast<std::int64_t>(m)) /
                            static_cast<long double>(m);
  return {std::cos(angle), std::sin(angle)};
}

/// F_p[x]/(modulus) with schoolbook arithmetic.
class NaiveField {
 public:
  NaiveField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
    D_ = static_cast<unsigned>(mod_.size() - 1);
  }
  explicit NaiveField(const gaussconv::ff::FieldTower& t) : NaiveField(t.p(), t.modulus()) {}

  unsigned degree() const { return D_; }
  std::uint32_t p() const { return p_; }

  Poly constant(std::uint32_t c) const {
    Poly r(D_, 0);
    r[0] = c % p_;
    return r;
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r(D_);
    for (unsigned i = 0; i < D_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    std::vector<std::uint64_t> t(2 * D_, 0);
    for (unsigned i = 0; i < D_; ++i)
      for (unsigned j = 0; j < D_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    for (unsigned k = 2 * D_ - 1; k >= D_; --k) {
      const std::uint64_t c = t[k];
      if (c == 0) continue;
      t[k] = 0;
      for (unsigned i = 0; i < D_; ++i) t[k - D_ + i] = (t[k - D_ + i] + (p_ - mod_[i]) * c) % p_;
    }
    Poly r(D_);
    for (unsigned i = 0; i < D_; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
    return r;
  }
  Poly pow(Poly a, std::uint64_t e) const {
    Poly r = constant(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Σ_{i<D} a^{p^i}, an element of F_p.
  std::uint32_t trace(const Poly& a) const {
    Poly acc(D_, 0), x = a;
    for (unsigned i = 0; i < D_; ++i) {
      acc = add(acc, x);
      x = pow(x, p_);
    }
    for (unsigned i = 1; i < D_; ++i)
      if (acc[i] != 0) return UINT32_MAX;  // not in F_p: signals a broken modulus
    return acc[0];
  }
  /// Every power g^0, …, g^{N−1} of g.
  std::vector<Poly> powers(const Poly& g, std::uint64_t N) const {
    std::vector<Poly> out;
    out.reserve(N);
    Poly x = constant(1);
    for (std::uint64_t j = 0; j < N; ++j) {
      out.push_back(x);
      x = mul(x, g);
    }
    return out;
  }

 private:
  std::uint32_t p_;
  unsigned D_;
  std::vector<std::uint32_t> mod_;
};

/// Σ_j ζ_N^{e j} ζ_p^{Tr(g^j)} in C, with g the tower's generator.
inline Complex gauss_sum(const gaussconv::ff::FieldTower& t, std::int64_t e) {
  NaiveField F(t);
  const std::uint64_t N = t.group_order();
  const std::uint64_t em = static_cast<std::uint64_t>(((e % static_cast<std::int64_t>(N)) + static_cast<std::int64_t>(N)) %
                                                       static_cast<std::int64_t>(N));
  Poly g = t.coefficients(t.generator());
  Complex acc = 0;
  Poly x = F.constant(1);
  for (std::uint64_t j = 0; j < N; ++j) {
    acc += root_of_unity(static_cast<std::int64_t>(em * j % N), N) * root_of_unity(F.trace(x), t.p());
    x = F.mul(x, g);
  }
  return acc;
}

/// Smallest primitive root modulo a prime p, by brute force.
inline std::uint32_t primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 1; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint32_t order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 0;
}

inline bool close(Complex a, Complex b, long double tol = 1e-9L) { return std::abs(a - b) < tol; }

}  // namespace oracle
