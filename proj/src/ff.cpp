#include "gaussconv/ff.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gaussconv/arith.hpp"
#include "gaussconv/errors.hpp"

namespace gaussconv::ff {
namespace {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
FpPoly poly_mod(FpPoly a, const FpPoly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i < df; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * f[i]) % p);
    a.pop_back();
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  FpPoly out(acc.begin(), acc.end());
  return poly_mod(std::move(out), f, p);
}

FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::uint32_t p) {
  FpPoly r{1};
  r = poly_mod(r, f, p);
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, f, p);
  }
  return r;
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic then reduce a mod b
    const std::uint64_t inv = arith::invmod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(c * inv % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^{p^k} mod f
FpPoly frobenius_power_of_x(const FpPoly& f, std::uint32_t p, unsigned k) {
  FpPoly h = poly_mod(FpPoly{0, 1}, f, p);
  for (unsigned i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

}  // namespace

bool is_irreducible(const FpPoly& f, std::uint32_t p) {
  if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("is_irreducible: expects a monic polynomial");
  const unsigned degree = static_cast<unsigned>(f.size() - 1);
  if (degree == 1) return true;
  const FpPoly x = poly_mod(FpPoly{0, 1}, f, p);
  if (poly_sub(frobenius_power_of_x(f, p, degree), x, p).size() != 0) return false;
  for (auto d : arith::divisors(degree)) {
    if (d == degree) continue;
    const FpPoly g = poly_gcd(f, poly_sub(frobenius_power_of_x(f, p, static_cast<unsigned>(d)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FpPoly smallest_irreducible(std::uint32_t p, unsigned degree) {
  const std::uint64_t count = arith::ipow(p, degree);
  for (std::uint64_t v = 0; v < count; ++v) {
    FpPoly f(degree + 1, 0);
    std::uint64_t t = v;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[degree] = 1;
    if (degree > 1 && f[0] == 0) continue;
    if (is_irreducible(f, p)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

std::uint64_t FieldTower::log(Element x) const {
  if (x.index == 0 || x.index >= size_) throw std::invalid_argument("log: zero or out-of-range element");
  return log_[x.index];
}

std::vector<std::uint32_t> FieldTower::coefficients(Element x) const {
  std::vector<std::uint32_t> c(degree());
  std::uint32_t t = x.index;
  for (auto& ci : c) {
    ci = t % p_;
    t /= p_;
  }
  return c;
}

Element FieldTower::add(Element a, Element b) const {
  std::uint64_t out = 0;
  std::uint32_t x = a.index, y = b.index;
  for (unsigned i = 0; i < degree(); ++i) {
    out += ((x % p_ + y % p_) % p_) * place_[i];
    x /= p_;
    y /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

Element FieldTower::neg(Element a) const {
  std::uint64_t out = 0;
  std::uint32_t x = a.index;
  for (unsigned i = 0; i < degree(); ++i) {
    out += ((p_ - x % p_) % p_) * place_[i];
    x /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

Element FieldTower::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldTower::mul(Element a, Element b) const {
  if (a.index == 0 || b.index == 0) return zero();
  return from_log(std::uint64_t{log_[a.index]} + log_[b.index]);
}

Element FieldTower::inv(Element a) const {
  if (a.index == 0) throw std::invalid_argument("inv: zero element");
  return from_log(group_order() - log_[a.index]);
}

Element FieldTower::pow(Element a, std::uint64_t e) const {
  if (a.index == 0) return e == 0 ? one() : zero();
  return from_log(arith::mulmod(log_[a.index], e, group_order()));
}

Element FieldTower::trace_rel(Element x) const {
  if (x.index == 0) return zero();
  Element acc = zero();
  const std::uint64_t j = log_[x.index];
  std::uint64_t qi = 1;
  for (unsigned i = 0; i < n_; ++i) {
    acc = add(acc, from_log(arith::mulmod(j, qi, group_order())));
    qi = arith::mulmod(qi, q_, group_order());
  }
  return acc;
}

std::uint32_t FieldTower::trace_abs(Element x) const {
  if (x.index == 0) return 0;
  return trace_[log_[x.index]];
}

std::uint32_t FieldTower::subfield_trace(Element x, unsigned d) const {
  if (d == 0 || degree() % d != 0) throw std::invalid_argument("subfield_trace: degree must divide the field degree");
  if (x.index == 0) return 0;
  if (!in_subfield(x, d)) throw std::invalid_argument("subfield_trace: element not in subfield");
  Element acc = zero();
  const std::uint64_t j = log_[x.index];
  std::uint64_t pi = 1;
  for (unsigned i = 0; i < d; ++i) {
    acc = add(acc, from_log(arith::mulmod(j, pi, group_order())));
    pi = arith::mulmod(pi, p_, group_order());
  }
  if (acc.index >= p_) throw InternalError("subfield trace left F_p");
  return acc.index;
}

Element FieldTower::norm_rel(Element x, unsigned d) const {
  if (d == 0 || n_ % d != 0) throw std::invalid_argument("norm_rel: d must divide n");
  if (x.index == 0) return zero();
  const std::uint64_t exponent = group_order() / (arith::ipow(q_, d) - 1);
  return pow(x, exponent);
}

bool FieldTower::in_subfield(Element x, unsigned d) const {
  if (d == 0 || degree() % d != 0) throw std::invalid_argument("in_subfield: degree must divide the field degree");
  if (x.index == 0) return true;
  const std::uint64_t sub_order = arith::ipow(p_, d) - 1;
  return log_[x.index] % (group_order() / sub_order) == 0;
}

void FieldTower::build_tables() {
  const std::uint64_t order = group_order();
  const unsigned D = degree();
  exp_.assign(order, 0);
  log_.assign(size_, 0);
  trace_.assign(order, 0);

  auto to_index = [&](const FpPoly& a) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i) idx += a[i] * place_[i];
    return static_cast<std::uint32_t>(idx);
  };
  const FpPoly g = coefficients(generator_);
  FpPoly x{1};
  for (std::uint64_t j = 0; j < order; ++j) {
    const std::uint32_t idx = to_index(x);
    exp_[j] = idx;
    log_[idx] = static_cast<std::uint32_t>(j);
    x = poly_mulmod(x, g, modulus_, p_);
  }
  if (to_index(x) != 1) throw InternalError("generator order mismatch while building tables");

  // Tr is F_p-linear: precompute Tr(x^i) for the basis monomials.
  std::vector<std::uint32_t> basis_trace(D, 0);
  for (unsigned i = 0; i < D; ++i) {
    FpPoly mono(i + 1, 0);
    mono[i] = 1;
    FpPoly y = poly_mod(mono, modulus_, p_);
    FpPoly acc;
    for (unsigned k = 0; k < D; ++k) {
      if (acc.size() < y.size()) acc.resize(y.size(), 0);
      for (std::size_t c = 0; c < y.size(); ++c) acc[c] = (acc[c] + y[c]) % p_;
      y = poly_powmod(y, p_, modulus_, p_);
    }
    trim(acc);
    if (acc.size() > 1) throw InternalError("trace of basis element not in F_p");
    basis_trace[i] = acc.empty() ? 0 : acc[0];
  }
  for (std::uint64_t j = 0; j < order; ++j) {
    std::uint32_t t = exp_[j];
    std::uint64_t tr = 0;
    for (unsigned i = 0; i < D; ++i) {
      tr += std::uint64_t{t % p_} * basis_trace[i];
      t /= p_;
    }
    trace_[j] = static_cast<std::uint32_t>(tr % p_);
  }
}

// Cache layout (little-endian host order):
//   magic "GCFT", version, p, f, n, D, modulus[D+1], generator, order,
//   exp[order], trace[order].
namespace {
constexpr char kMagic[4] = {'G', 'C', 'F', 'T'};

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}
}  // namespace

bool FieldTower::load_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) return false;
  std::uint32_t version = 0, p = 0, f = 0, n = 0, D = 0;
  if (!get(in, version) || version != kCacheVersion) return false;
  if (!get(in, p) || !get(in, f) || !get(in, n) || !get(in, D)) return false;
  if (p != p_ || f != f_ || n != n_ || D != degree()) return false;
  for (unsigned i = 0; i <= D; ++i) {
    std::uint32_t c = 0;
    if (!get(in, c) || c != modulus_[i]) return false;
  }
  std::uint32_t gen = 0;
  std::uint64_t order = 0;
  if (!get(in, gen) || gen != generator_.index) return false;
  if (!get(in, order) || order != group_order()) return false;
  std::vector<std::uint32_t> exp(order), trace(order);
  if (!in.read(reinterpret_cast<char*>(exp.data()), static_cast<std::streamsize>(order * 4))) return false;
  if (!in.read(reinterpret_cast<char*>(trace.data()), static_cast<std::streamsize>(order * 4))) return false;
  // Structural validation: exp must be a bijection onto the nonzero indices.
  std::vector<std::uint32_t> log(size_, 0);
  std::vector<bool> seen(size_, false);
  for (std::uint64_t j = 0; j < order; ++j) {
    const auto idx = exp[j];
    if (idx == 0 || idx >= size_ || seen[idx] || trace[j] >= p_) return false;
    seen[idx] = true;
    log[idx] = static_cast<std::uint32_t>(j);
  }
  if (order > 1 && exp[1] != generator_.index) return false;
  exp_ = std::move(exp);
  trace_ = std::move(trace);
  log_ = std::move(log);
  return true;
}

void FieldTower::save_cache(const std::filesystem::path& file) const {
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(kMagic, 4);
    put(out, kCacheVersion);
    put(out, p_);
    put(out, static_cast<std::uint32_t>(f_));
    put(out, static_cast<std::uint32_t>(n_));
    put(out, static_cast<std::uint32_t>(degree()));
    for (auto c : modulus_) put(out, c);
    put(out, generator_.index);
    put(out, group_order());
    out.write(reinterpret_cast<const char*>(exp_.data()), static_cast<std::streamsize>(exp_.size() * 4));
    out.write(reinterpret_cast<const char*>(trace_.data()), static_cast<std::streamsize>(trace_.size() * 4));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
}

std::filesystem::path cache_file_name(std::uint32_t p, unsigned f, unsigned n) {
  return "tower_p" + std::to_string(p) + "_f" + std::to_string(f) + "_n" + std::to_string(n) + ".bin";
}

std::shared_ptr<const FieldTower> build_tower(std::uint32_t p, unsigned f, unsigned n, const TowerOptions& options) {
  if (!arith::is_prime(p)) throw std::invalid_argument("build_tower: p = " + std::to_string(p) + " is not prime");
  if (f == 0 || n == 0) throw std::invalid_argument("build_tower: degrees f and n must be positive");
  const unsigned D = f * n;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < D; ++i) {
    size *= p;
    if (size > options.size_cap)
      throw ResourceError("build_tower: field size " + std::to_string(p) + "^" + std::to_string(D) +
                              " exceeds size cap " + std::to_string(options.size_cap),
                          options.size_cap);
  }

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->f_ = f;
  t->n_ = n;
  t->q_ = arith::ipow(p, f);
  t->size_ = size;
  t->place_.resize(D + 1);
  t->place_[0] = 1;
  for (unsigned i = 1; i <= D; ++i) t->place_[i] = t->place_[i - 1] * p;
  t->modulus_ = smallest_irreducible(p, D);

  const std::uint64_t order = size - 1;
  const auto factors = arith::prime_factors(order);
  for (std::uint64_t v = 1; v < size; ++v) {
    FpPoly a = t->coefficients(Element{static_cast<std::uint32_t>(v)});
    trim(a);
    bool full = true;
    for (auto r : factors) {
      FpPoly y = poly_powmod(a, order / r, t->modulus_, p);
      if (y.size() == 1 && y[0] == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      t->generator_ = Element{static_cast<std::uint32_t>(v)};
      break;
    }
  }
  if (order == 1) t->generator_ = Element{1};
  if (t->generator_.index == 0) throw InternalError("build_tower: no generator found");

  bool loaded = false;
  std::filesystem::path file;
  if (options.cache_dir) {
    file = *options.cache_dir / cache_file_name(p, f, n);
    if (std::filesystem::exists(file)) {
      loaded = t->load_cache(file);
      if (!loaded) std::cerr << "warning: stale or corrupt table cache " << file << " rebuilt\n";
    }
  }
  if (!loaded) {
    t->build_tables();
    if (options.cache_dir) t->save_cache(file);
  }
  return t;
}

// ---------------------------------------------------------------------------

std::uint64_t EtaleAlgebra::factor_order(std::size_t i) const {
  return arith::ipow(ambient->q(), degrees.at(i)) - 1;
}

std::uint64_t EtaleAlgebra::factor_generator_log(std::size_t i) const {
  return ambient->group_order() / factor_order(i);
}

EtaleAlgebra build_etale(std::uint32_t p, unsigned f, std::vector<unsigned> degrees, const TowerOptions& options) {
  if (degrees.empty()) throw std::invalid_argument("build_etale: empty factor list");
  unsigned L = 1;
  unsigned total = 0;
  for (auto d : degrees) {
    if (d == 0) throw std::invalid_argument("build_etale: factor degrees must be positive");
    L = std::lcm(L, d);
    total += d;
  }
  EtaleAlgebra a;
  a.p = p;
  a.f = f;
  a.n = total;
  a.r = static_cast<unsigned>(degrees.size());
  a.sign = ((a.n - a.r) % 2 == 0) ? 1 : -1;
  a.degrees = std::move(degrees);
  a.ambient = build_tower(p, f, L, options);
  return a;
}

}  // namespace gaussconv::ff
