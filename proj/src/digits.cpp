#include "gaussconv/digits.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "gaussconv/arith.hpp"

namespace gaussconv::digits {

DigitVector::DigitVector(std::uint32_t p, std::vector<std::uint32_t> digits) : p_(p), digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("DigitVector: n must be positive");
  for (auto d : digits_)
    if (d >= p_) throw std::invalid_argument("DigitVector: digit " + std::to_string(d) + " not below p");
}

std::uint32_t DigitVector::at(std::int64_t j) const {
  const auto n = static_cast<std::int64_t>(digits_.size());
  return digits_[static_cast<std::size_t>(((j - 1) % n + n) % n)];
}

std::uint64_t DigitVector::value() const {
  std::uint64_t v = 0;
  for (std::size_t i = digits_.size(); i-- > 0;) v = v * p_ + digits_[i];
  return v;
}

DigitVector expand(std::uint32_t p, unsigned n, std::int64_t e) {
  const std::uint64_t N = arith::ipow(p, n) - 1;
  std::uint64_t x = arith::mod(e, N);
  std::vector<std::uint32_t> d(n);
  for (auto& di : d) {
    di = static_cast<std::uint32_t>(x % p);
    x /= p;
  }
  return DigitVector(p, std::move(d));
}

unsigned s(const DigitVector& v) {
  unsigned total = 0;
  for (auto d : v.digits()) total += d;
  return total;
}

std::uint32_t t_mod_p(const DigitVector& v) {
  const std::uint32_t p = v.p();
  std::uint64_t t = 1 % p;
  for (auto d : v.digits())
    for (std::uint32_t i = 2; i <= d; ++i) t = t * i % p;
  return static_cast<std::uint32_t>(t);
}

std::uint64_t prime_free_factorial(std::uint64_t N, std::uint32_t p, std::uint64_t modulus) {
  std::uint64_t r = 1 % modulus;
  for (std::uint64_t i = 1; i <= N; ++i)
    if (i % p != 0) r = arith::mulmod(r, i, modulus);
  return r;
}

std::uint64_t window(const DigitVector& v, unsigned i, unsigned m) {
  std::uint64_t w = 0, place = 1;
  for (unsigned j = 0; j <= m; ++j) {
    w += v.at(static_cast<std::int64_t>(i) + j) * place;
    place *= v.p();
  }
  return w;
}

std::uint64_t V_m(const DigitVector& v, unsigned m) {
  const std::uint64_t M = arith::ipow(v.p(), m + 1);
  std::uint64_t r = 1 % M;
  for (unsigned i = 1; i <= v.n(); ++i) r = arith::mulmod(r, prime_free_factorial(window(v, i, m), v.p(), M), M);
  return r;
}

std::uint64_t gamma_p_truncated(unsigned i, const DigitVector& v, unsigned m) {
  if (i < 1 || i > v.n()) throw std::invalid_argument("gamma_p_truncated: position out of range");
  const std::uint64_t M = arith::ipow(v.p(), m + 1);
  // −p^{i−1}e/(p^n−1) has p-adic digits α_{2−i}, α_{3−i}, … since p·α rotates digits up
  const unsigned start = static_cast<unsigned>((2 * v.n() + 1 - i) % v.n()) + 1;
  const std::uint64_t w = window(v, start, m);
  const std::uint64_t f = prime_free_factorial(w, v.p(), M);
  return (1 + w) % 2 == 0 ? f : (M - f) % M;
}

std::uint64_t gamma_p_integer(std::uint64_t x, std::uint32_t p, std::uint64_t modulus) {
  if (x == 0) throw std::invalid_argument("gamma_p_integer: x must be positive");
  const std::uint64_t f = prime_free_factorial(x - 1, p, modulus);
  return x % 2 == 0 ? f : (modulus - f) % modulus;
}

std::uint64_t gamma_p_direct(unsigned i, std::uint32_t p, unsigned n, std::int64_t e, unsigned m) {
  const std::uint64_t N = arith::ipow(p, n) - 1;
  const std::uint64_t M = arith::ipow(p, m + 1);
  const std::uint64_t r = arith::mulmod(arith::powmod(p, i - 1, N), arith::mod(e, N), N);
  // 1 − r/N as an element of Z/p^{m+1}
  const std::uint64_t frac = arith::mulmod(r % M, arith::invmod(N % M, M), M);
  std::uint64_t x = (1 + M - frac) % M;
  if (x == 0) x = M;
  return gamma_p_integer(x, p, M);
}

unsigned DigitGraph::core_size() const {
  return static_cast<unsigned>(std::count(in_core.begin(), in_core.end(), true));
}

DigitGraph build_graph(const DigitVector& v, unsigned a, CycleRule rule) {
  if (a < 1 || a > v.p() - 1) throw std::invalid_argument("build_graph: threshold a outside [1, p−1]");
  const unsigned n = v.n();
  DigitGraph g;
  g.a = a;
  g.edge.assign(n, false);
  g.in_core.assign(n, false);
  auto digit = [&](unsigned k0) { return v.digits()[k0 % n]; };  // 0-based

  bool all_low = true;
  for (auto d : v.digits())
    if (d != a - 1) all_low = false;
  if (all_low) {
    if (rule == CycleRule::kCarry) {
      g.edge.assign(n, true);
      g.in_core.assign(n, true);
    }
    return g;
  }

  for (unsigned k = 0; k < n; ++k)
    if (digit(k) >= a && digit(k + 1) + 1 >= a) g.edge[k] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (unsigned k = 0; k < n; ++k) {
      if (g.edge[k]) continue;
      if (digit(k) == a - 1 && digit(k + 1) == a - 1 && g.edge[(k + n - 1) % n]) {
        g.edge[k] = true;
        changed = true;
      }
    }
  }

  // union-find over edges
  std::vector<unsigned> parent(n);
  for (unsigned k = 0; k < n; ++k) parent[k] = k;
  std::function<unsigned(unsigned)> find = [&](unsigned x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (unsigned k = 0; k < n; ++k)
    if (g.edge[k]) parent[find(k)] = find((k + 1) % n);
  std::vector<bool> good_root(n, false);
  for (unsigned k = 0; k < n; ++k)
    if (digit(k) >= a) good_root[find(k)] = true;
  for (unsigned k = 0; k < n; ++k) g.in_core[k] = good_root[find(k)];
  return g;
}

unsigned v_a(const DigitVector& v, unsigned a, CycleRule rule) { return build_graph(v, a, rule).core_size(); }

Profile profile(const DigitVector& v) {
  std::vector<std::uint32_t> d = v.digits();
  std::sort(d.begin(), d.end(), std::greater<>());
  Profile pr;
  for (auto x : d) {
    if (pr.norms.empty() || pr.norms.back() != x) {
      pr.norms.push_back(x);
      pr.multiplicities.push_back(0);
    }
    ++pr.multiplicities.back();
  }
  return pr;
}

namespace {

// Start (0-based) of the cyclic block holding every position with value x,
// or −1 when those positions are not one cyclic interval.
int block_start(const DigitVector& v, std::uint32_t x) {
  const unsigned n = v.n();
  const auto& d = v.digits();
  unsigned count = 0;
  for (auto y : d) count += (y == x);
  if (count == n) return 0;
  for (unsigned start = 0; start < n; ++start) {
    if (d[start] != x || d[(start + n - 1) % n] == x) continue;
    for (unsigned j = 0; j < count; ++j)
      if (d[(start + j) % n] != x) return -1;
    return static_cast<int>(start);
  }
  return -1;
}

}  // namespace

bool is_max_consecutive(const DigitVector& v) { return block_start(v, profile(v).norms.front()) >= 0; }

bool is_mini_consecutive(const DigitVector& v) { return block_start(v, profile(v).norms.back()) >= 0; }

std::uint32_t after_max_block(const DigitVector& v) {
  const auto pr = profile(v);
  const int start = block_start(v, pr.norms.front());
  if (start < 0) throw std::invalid_argument("after_max_block: digits are not max-consecutive");
  return v.at(start + 1 + static_cast<std::int64_t>(pr.multiplicities.front()));
}

std::uint32_t after_min_block(const DigitVector& v) {
  const auto pr = profile(v);
  const int start = block_start(v, pr.norms.back());
  if (start < 0) throw std::invalid_argument("after_min_block: digits are not mini-consecutive");
  return v.at(start + 1 + static_cast<std::int64_t>(pr.multiplicities.back()));
}

std::vector<std::uint32_t> twisted_multiset(std::uint32_t p, unsigned n, std::int64_t e, unsigned k) {
  const std::uint64_t N = arith::ipow(p, n) - 1;
  const std::uint64_t shifted = (arith::mod(e, N) + arith::mulmod(k, N / (p - 1), N)) % N;
  auto d = expand(p, n, static_cast<std::int64_t>(shifted)).digits();
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace gaussconv::digits
