#include "gaussconv/converse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gaussconv/arith.hpp"
#include "gaussconv/chars.hpp"
#include "gaussconv/digits.hpp"
#include "gaussconv/errors.hpp"
#include "gaussconv/parallel.hpp"

namespace gaussconv::converse {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t twist_exponent(const gauss::GaussTable& table, std::uint64_t e, std::uint64_t k) {
  const std::uint64_t N = table.group_order();
  const std::uint64_t unit = N / (table.tower().q() - 1);
  return (e % N + arith::mulmod(k, unit, N)) % N;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Groups items by hash, then splits each bucket on exact equality of the
// encodings produced by `encode`. Returns groups of item indices.
template <class Encode>
std::vector<std::vector<std::size_t>> exact_groups(const std::vector<std::uint64_t>& hashes, Encode&& encode,
                                                   std::uint64_t* false_positives) {
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < hashes.size(); ++i) buckets[hashes[i]].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [h, items] : buckets) {
    if (items.size() == 1) {
      out.push_back(items);
      continue;
    }
    std::map<decltype(encode(items[0])), std::vector<std::size_t>> exact;
    for (auto i : items) exact[encode(i)].push_back(i);
    if (exact.size() > 1 && false_positives) ++*false_positives;
    for (auto& [key, members] : exact) out.push_back(std::move(members));
  }
  return out;
}

ScanReport run_scan(const std::shared_ptr<const ff::FieldTower>& tower, const std::vector<std::uint64_t>& reps,
                    const std::string& population, const ScanOptions& options) {
  const auto start = Clock::now();
  const gauss::GaussTable table(tower);
  ScanReport rep;
  rep.p = tower->p();
  rep.f = tower->f();
  rep.n = tower->n();
  rep.q = tower->q();
  rep.population = population;
  rep.orbits_scanned = reps.size();
  rep.stamp = stamp(*tower);

  std::vector<std::uint64_t> hashes(reps.size());
  parallel_chunks(reps.size(), options.jobs, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hashes[i] = signature_hash(table, reps[i]);
  });
  auto groups = exact_groups(
      hashes, [&](std::size_t i) { return signature_encoding(table, reps[i]); }, &rep.hash_false_positives);

  for (auto& g : groups) {
    std::vector<std::uint64_t> cls;
    for (auto i : g) cls.push_back(reps[i]);
    std::sort(cls.begin(), cls.end());
    rep.classes.push_back(std::move(cls));
  }
  std::sort(rep.classes.begin(), rep.classes.end());
  for (const auto& cls : rep.classes)
    if (cls.size() > 1) rep.collisions.push_back(cls);

  // equal Gauss sums force equal restriction to F_p^× and, over a prime base, equal s and t
  const std::uint32_t p = tower->p();
  for (const auto& cls : rep.collisions) {
    const std::uint64_t a = cls.front();
    for (std::size_t i = 1; i < cls.size() && rep.central_character_ok; ++i) {
      const std::uint64_t b = cls[i];
      bool ok = a % (p - 1) == b % (p - 1);
      if (ok && tower->f() == 1 && p > 2) {
        const auto da = digits::expand(p, tower->n(), -static_cast<std::int64_t>(a));
        const auto db = digits::expand(p, tower->n(), -static_cast<std::int64_t>(b));
        ok = digits::s(da) == digits::s(db) && digits::t_mod_p(da) == digits::t_mod_p(db);
      }
      if (!ok) {
        rep.central_character_ok = false;
        rep.central_character_witness = std::to_string(a) + " vs " + std::to_string(b);
      }
    }
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace

std::vector<std::int64_t> signature_encoding(const gauss::GaussTable& table, std::uint64_t e) {
  std::vector<std::int64_t> out;
  const std::uint64_t q = table.tower().q();
  for (std::uint64_t k = 0; k + 1 < q; ++k) {
    const auto c = table.canonical_S(-static_cast<std::int64_t>(twist_exponent(table, e, k)));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::uint64_t signature_hash(const gauss::GaussTable& table, std::uint64_t e) {
  std::uint64_t h = 0;
  const std::uint64_t q = table.tower().q();
  for (std::uint64_t k = 0; k + 1 < q; ++k)
    h = mix(h, cyclo::hash_coeffs(table.canonical_S(-static_cast<std::int64_t>(twist_exponent(table, e, k)))));
  return h;
}

TwistSignature signature(const gauss::GaussTable& table, std::uint64_t e) {
  TwistSignature sig;
  sig.q = table.tower().q();
  for (std::uint64_t k = 0; k + 1 < sig.q; ++k)
    sig.entries.push_back(table.S(-static_cast<std::int64_t>(twist_exponent(table, e, k))));
  return sig;
}

bool distinguishable(const gauss::GaussTable& table, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t q = table.tower().q();
  for (std::uint64_t k = 0; k + 1 < q; ++k)
    if (table.canonical_S(-static_cast<std::int64_t>(twist_exponent(table, a, k))) !=
        table.canonical_S(-static_cast<std::int64_t>(twist_exponent(table, b, k))))
      return true;
  return false;
}

ConventionStamp stamp(const ff::FieldTower& tower) {
  ConventionStamp s;
  s.p = tower.p();
  s.f = tower.f();
  s.n = tower.n();
  s.modulus = tower.modulus();
  s.generator = tower.coefficients(tower.generator());
  s.psi = "psi(x) = zeta_p^Tr(x), Tr absolute to F_p";
  s.omega = "omega(g) = zeta_{q^n-1}";
  return s;
}

const char* to_string(Population population) {
  return population == Population::kRegular ? "regular" : "all";
}

ScanReport scan_converse(std::uint32_t p, unsigned f, unsigned n, Population population,
                         const ScanOptions& options) {
  auto tower = ff::build_tower(p, f, n, options.tower);
  const chars::CharGroup grp(tower->q(), n);
  return run_scan(tower, grp.orbit_reps(population == Population::kRegular), to_string(population), options);
}

ScanReport scan_primitive(std::uint32_t p, unsigned f, unsigned n, unsigned r, const ScanOptions& options) {
  if (r == 0 || n % r != 0 || !arith::is_prime(r))
    throw std::invalid_argument("scan_primitive: r = " + std::to_string(r) + " must be a prime divisor of n = " +
                                std::to_string(n));
  auto tower = ff::build_tower(p, f * (n / r), r, options.tower);
  const chars::CharGroup full(arith::ipow(p, f), n);
  const chars::CharGroup base(tower->q(), r);
  std::vector<std::uint64_t> reps;
  for (auto e : base.orbit_reps(false))
    if (full.is_regular(e)) reps.push_back(e);
  return run_scan(tower, reps, "regular-over-F_" + std::to_string(arith::ipow(p, f)), options);
}

CounterexampleReport counterexample(std::uint32_t p, unsigned t, const ScanOptions& options) {
  if (t == 0) throw std::invalid_argument("counterexample: t must be positive");
  const auto start = Clock::now();
  CounterexampleReport rep;
  rep.p = p;
  rep.t = t;
  rep.n = 2 * t;
  rep.order = arith::ipow(p, t) + 1;
  rep.phi = arith::euler_phi(rep.order);
  rep.feasible = rep.phi >= 4 * static_cast<std::uint64_t>(t);
  rep.expected_value = -static_cast<std::int64_t>(arith::ipow(p, t));

  auto tower = ff::build_tower(p, 1, rep.n, options.tower);
  const gauss::GaussTable table(tower);
  const chars::CharGroup grp(p, rep.n);
  const std::uint64_t N = grp.order(), step = N / rep.order;

  std::vector<std::uint64_t> exps;
  for (std::uint64_t u = 1; u < rep.order; ++u)
    if (std::gcd(u, rep.order) == 1) exps.push_back(u * step);
  rep.characters_checked = exps.size();
  std::vector<char> match(exps.size(), 0);
  parallel_chunks(exps.size(), options.jobs, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      cyclo::Integer v;
      match[i] = table.S(static_cast<std::int64_t>(exps[i])).is_integer(&v) && v == rep.expected_value;
    }
  });
  rep.values_match = true;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (!match[i]) {
      rep.values_match = false;
      rep.value_witness = exps[i];
      break;
    }

  std::set<std::uint64_t> reps;
  for (auto e : exps)
    if (grp.is_regular(e)) reps.insert(grp.orbit_rep(e));
  rep.orbit_reps.assign(reps.begin(), reps.end());
  std::map<std::vector<std::int64_t>, std::vector<std::uint64_t>> classes;
  for (auto e : rep.orbit_reps) classes[signature_encoding(table, e)].push_back(e);
  for (auto& [key, members] : classes)
    if (members.size() > 1) rep.collisions.push_back(members);
  std::sort(rep.collisions.begin(), rep.collisions.end());
  rep.wall_seconds = seconds_since(start);
  return rep;
}

std::vector<std::uint64_t> coset_representatives(std::uint32_t p, unsigned n) {
  const std::uint64_t N = arith::ipow(p, n) - 1;
  std::vector<char> seen(N, 0);
  std::vector<std::uint64_t> reps;
  for (std::uint64_t c = 1; c < N; ++c) {
    if (seen[c] || std::gcd(c, N) != 1) continue;
    reps.push_back(c);
    std::uint64_t x = c;
    do {
      seen[x] = 1;
      x = arith::mulmod(x, p, N);
    } while (x != c);
  }
  if (N == 1) reps.push_back(0);
  return reps;
}

StickelbergerSpectrum mersenne_spectrum(unsigned n, std::uint64_t e) {
  const std::uint64_t N = arith::ipow(2, n) - 1;
  StickelbergerSpectrum sp;
  for (auto j : coset_representatives(2, n))
    sp.values.emplace_back(j, digits::s(digits::expand(2, n, static_cast<std::int64_t>(arith::mulmod(e % N, j, N)))));
  return sp;
}

MersenneReport mersenne_check(unsigned n, const ScanOptions& options) {
  const auto start = Clock::now();
  if (n < 2 || n > 30) throw std::invalid_argument("mersenne_check: n must lie in [2, 30]");
  MersenneReport rep;
  rep.n = n;
  rep.N = arith::ipow(2, n) - 1;
  if (!arith::is_prime(rep.N))
    throw std::invalid_argument("mersenne_check: 2^" + std::to_string(n) + " - 1 = " + std::to_string(rep.N) +
                                " is divisible by " + std::to_string(arith::smallest_factor(rep.N)));
  rep.coset_count = coset_representatives(2, n).size();

  rep.single_bit_ok = true;
  for (std::uint64_t c = 1; c < rep.N; ++c) {
    const bool single = digits::s(digits::expand(2, n, static_cast<std::int64_t>(c))) == 1;
    if (single != ((c & (c - 1)) == 0)) rep.single_bit_ok = false;
  }

  const chars::CharGroup grp(2, n);
  std::vector<std::uint64_t> reps;
  for (auto e : grp.orbit_reps(false))
    if (e != 0) reps.push_back(e);
  rep.orbits = reps.size();
  std::vector<StickelbergerSpectrum> spectra(reps.size());
  parallel_chunks(reps.size(), options.jobs, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) spectra[i] = mersenne_spectrum(n, reps[i]);
  });
  std::map<std::vector<std::pair<std::uint64_t, unsigned>>, std::uint64_t> seen;
  rep.injective = true;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto [it, fresh] = seen.emplace(spectra[i].values, reps[i]);
    if (!fresh && rep.injective) {
      rep.injective = false;
      rep.witness = std::make_pair(it->second, reps[i]);
    }
  }

  auto tower = ff::build_tower(2, 1, n, options.tower);
  const gauss::GaussTable table(tower);
  std::set<std::vector<std::int64_t>> sums;
  for (auto e : reps) sums.insert(table.canonical_S(-static_cast<std::int64_t>(e)));
  rep.gauss_separates = sums.size() == reps.size();
  rep.wall_seconds = seconds_since(start);
  return rep;
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kInconclusive:
      return "inconclusive";
    case CheckStatus::kNotApplicable:
      return "not-applicable";
  }
  return "unknown";
}

bool LemmaReport::ok() const {
  for (const auto& c : checks)
    if (c.asserted && (c.status == CheckStatus::kFail || c.status == CheckStatus::kInconclusive)) return false;
  return true;
}

namespace {

class PairCheck {
 public:
  PairCheck(std::string name, std::string hypothesis) {
    check_.name = std::move(name);
    check_.hypothesis = std::move(hypothesis);
  }
  void record(bool ok, bool cross_orbit, const std::string& witness) {
    ++check_.pairs_tested;
    if (cross_orbit) ++check_.cross_orbit_pairs;
    if (!ok) {
      if (check_.violations == 0) check_.witness = witness;
      ++check_.violations;
    }
  }
  LemmaCheck finish() {
    if (check_.violations > 0)
      check_.status = CheckStatus::kFail;
    else
      check_.status = check_.pairs_tested > 0 ? CheckStatus::kPass : CheckStatus::kInconclusive;
    return check_;
  }

 private:
  LemmaCheck check_;
};

std::string pair_label(std::uint64_t a, std::uint64_t b) { return "alpha=" + std::to_string(a) + " beta=" + std::to_string(b); }

// Classes (size ≥ 2) of exponents with equal S(ω^{sign·e}).
std::vector<std::vector<std::uint64_t>> single_sum_classes(const gauss::GaussTable& table,
                                                           const std::vector<std::uint64_t>& exps, int sign,
                                                           unsigned jobs) {
  std::vector<std::uint64_t> hashes(exps.size());
  parallel_chunks(exps.size(), jobs, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      hashes[i] = cyclo::hash_coeffs(table.canonical_S(sign * static_cast<std::int64_t>(exps[i])));
  });
  auto groups = exact_groups(
      hashes, [&](std::size_t i) { return table.canonical_S(sign * static_cast<std::int64_t>(exps[i])); }, nullptr);
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    std::vector<std::uint64_t> cls;
    for (auto i : g) cls.push_back(exps[i]);
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> twisted_multisets(std::uint32_t p, unsigned n, std::uint64_t e) {
  std::vector<std::vector<std::uint32_t>> out;
  for (unsigned k = 0; k + 1 < p; ++k) out.push_back(digits::twisted_multiset(p, n, static_cast<std::int64_t>(e), k));
  return out;
}

}  // namespace

LemmaReport lemma_suite(std::uint32_t p, unsigned n, const ScanOptions& options) {
  const auto start = Clock::now();
  auto tower = ff::build_tower(p, 1, n, options.tower);
  const gauss::GaussTable table(tower);
  const chars::CharGroup grp(p, n);
  const std::uint64_t N = grp.order();
  const std::uint64_t footprint = N * arith::euler_phi(table.conductor());
  if (footprint > (std::uint64_t{1} << 27))
    throw ResourceError("lemma_suite: field too large for exact pair enumeration", std::uint64_t{1} << 27);

  std::vector<std::uint64_t> regular;
  for (std::uint64_t e = 0; e < N; ++e)
    if (grp.is_regular(e)) regular.push_back(e);
  auto dv = [&](std::uint64_t e) { return digits::expand(p, n, static_cast<std::int64_t>(e)); };
  auto cross = [&](std::uint64_t a, std::uint64_t b) { return grp.orbit_rep(a) != grp.orbit_rep(b); };

  LemmaReport rep;
  rep.p = p;
  rep.n = n;

  // equal S(ω^{−α}) ⇒ equal restriction to F_p^×
  {
    PairCheck c("restriction", "S(w^-a) = S(w^-b)");
    for (const auto& cls : single_sum_classes(table, regular, -1, options.jobs))
      for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = i + 1; j < cls.size(); ++j)
          c.record(cls[i] % (p - 1) == cls[j] % (p - 1), cross(cls[i], cls[j]), pair_label(cls[i], cls[j]));
    rep.checks.push_back(c.finish());
  }

  // equal S(ω^{α}) ⇒ s, t mod p, S(ω^{−α}), and every V_m agree
  {
    PairCheck st("digit-sum-and-factorial", "S(w^a) = S(w^b)");
    PairCheck sym("inverse-sums", "S(w^a) = S(w^b)");
    PairCheck win("window-factorials", "S(w^a) = S(w^b)");
    for (const auto& cls : single_sum_classes(table, regular, 1, options.jobs))
      for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          const std::uint64_t a = cls[i], b = cls[j];
          const auto da = dv(a), db = dv(b);
          const bool x = cross(a, b);
          st.record(digits::s(da) == digits::s(db) && digits::t_mod_p(da) == digits::t_mod_p(db), x,
                    pair_label(a, b));
          sym.record(table.canonical_S(-static_cast<std::int64_t>(a)) == table.canonical_S(-static_cast<std::int64_t>(b)),
                     x, pair_label(a, b));
          bool same = true;
          std::string bad;
          for (unsigned m = 0; m <= n && same; ++m)
            if (digits::V_m(da, m) != digits::V_m(db, m)) {
              same = false;
              bad = pair_label(a, b) + " m=" + std::to_string(m);
            }
          win.record(same, x, bad);
        }
    rep.checks.push_back(st.finish());
    rep.checks.push_back(sym.finish());
    rep.checks.push_back(win.finish());
  }

  // equal twist signatures ⇒ equal extreme digits, and for n ≤ 5 equal twisted multisets
  const auto scan = run_scan(tower, grp.orbit_reps(true), "regular", options);
  {
    PairCheck ext("extreme-digits", "equal twist signatures");
    PairCheck ms("twisted-multisets", "equal twist signatures, n <= 5");
    for (const auto& cls : scan.classes) {
      std::vector<std::uint64_t> members;
      for (auto r : cls)
        for (auto e : grp.frobenius_orbit(r)) members.push_back(e);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const std::uint64_t a = members[i], b = members[j];
          const auto pa = digits::profile(dv(a)), pb = digits::profile(dv(b));
          const bool x = cross(a, b);
          ext.record(pa.norms.front() == pb.norms.front() && pa.norms.back() == pb.norms.back(), x, pair_label(a, b));
          if (n <= 5) ms.record(twisted_multisets(p, n, a) == twisted_multisets(p, n, b), x, pair_label(a, b));
        }
    }
    rep.checks.push_back(ext.finish());
    auto m = ms.finish();
    if (n > 5) m.status = CheckStatus::kNotApplicable;
    rep.checks.push_back(m);
  }

  // consecutive blocks transfer between pairs with equal twist signatures, same
  // restriction, equal twisted multisets, and max − min digit > 1
  auto consecutive_ok = [&](std::uint64_t a, std::uint64_t b) {
    const auto da = dv(a), db = dv(b);
    const auto pa = digits::profile(da), pb = digits::profile(db);
    bool ok = true;
    if (digits::is_max_consecutive(da))
      ok = ok && digits::is_max_consecutive(db) && pa.multiplicities.front() == pb.multiplicities.front() &&
           digits::after_max_block(da) == digits::after_max_block(db);
    if (digits::is_mini_consecutive(da))
      ok = ok && digits::is_mini_consecutive(db) && pa.multiplicities.back() == pb.multiplicities.back() &&
           digits::after_min_block(da) == digits::after_min_block(db);
    return ok;
  };
  auto consecutive_applies = [&](std::uint64_t a, std::uint64_t b) {
    const auto da = dv(a);
    const auto pa = digits::profile(da);
    if (pa.norms.front() - pa.norms.back() <= 1) return false;
    if (!digits::is_max_consecutive(da) && !digits::is_mini_consecutive(da)) return false;
    return a % (p - 1) == b % (p - 1) && twisted_multisets(p, n, a) == twisted_multisets(p, n, b);
  };
  {
    PairCheck c("consecutive-blocks", "equal twist signatures, same restriction, equal twisted multisets, max - min digit > 1");
    for (const auto& cls : scan.classes) {
      std::vector<std::uint64_t> members;
      for (auto r : cls)
        for (auto e : grp.frobenius_orbit(r)) members.push_back(e);
      for (auto a : members)
        for (auto b : members)
          if (a != b && consecutive_applies(a, b)) c.record(consecutive_ok(a, b), cross(a, b), pair_label(a, b));
    }
    rep.checks.push_back(c.finish());
  }
  // the same conclusion without the signature hypothesis; reported, not asserted
  {
    PairCheck c("consecutive-blocks-without-signatures", "same restriction, equal twisted multisets, max - min digit > 1");
    std::map<std::pair<std::uint64_t, std::vector<std::vector<std::uint32_t>>>, std::vector<std::uint64_t>> groups;
    for (auto e : regular) groups[{e % (p - 1), twisted_multisets(p, n, e)}].push_back(e);
    for (const auto& [key, members] : groups)
      for (auto a : members)
        for (auto b : members)
          if (a != b && consecutive_applies(a, b)) c.record(consecutive_ok(a, b), cross(a, b), pair_label(a, b));
    auto check = c.finish();
    check.asserted = false;
    rep.checks.push_back(check);
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

std::vector<std::vector<unsigned>> partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned left, unsigned max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  if (n > 0) rec(rec, n, n);
  return out;
}

EtaleScanReport etale_signature_scan(std::uint32_t p, unsigned f, unsigned n, const ScanOptions& options) {
  const auto start = Clock::now();
  if (n == 0) throw std::invalid_argument("etale_signature_scan: n must be positive");
  unsigned L = 1;
  for (unsigned d = 2; d <= n; ++d) L = std::lcm(L, d);
  auto ambient = ff::build_tower(p, f, L, options.tower);
  const std::uint64_t q = ambient->q();
  const std::uint64_t NL = ambient->group_order();
  const std::uint64_t M = p * NL;

  EtaleScanReport rep;
  rep.q = q;
  rep.n = n;
  rep.bound_satisfied = static_cast<double>(n) < (static_cast<double>(q) - 1) / (2 * std::sqrt(static_cast<double>(q))) + 1;

  struct Item {
    std::size_t algebra;
    std::vector<std::uint64_t> exps;
    std::vector<std::uint64_t> divisor;
  };
  const auto parts = partitions(n);
  rep.algebras = parts.size();
  std::vector<ff::EtaleAlgebra> algebras;
  std::vector<Item> items;
  for (std::size_t ai = 0; ai < parts.size(); ++ai) {
    ff::EtaleAlgebra A;
    A.p = p;
    A.f = f;
    A.degrees = parts[ai];
    A.n = n;
    A.r = static_cast<unsigned>(parts[ai].size());
    A.sign = (n - A.r) % 2 == 0 ? 1 : -1;
    A.ambient = ambient;
    algebras.push_back(A);

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < A.r; ++i) {
      total *= A.factor_order(i);
      if (total > 200000) throw ResourceError("etale_signature_scan: too many characters", 200000);
    }
    std::vector<std::uint64_t> cur(A.r, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (std::size_t i = 0; i < A.r; ++i) {
        cur[i] = x % A.factor_order(i);
        x /= A.factor_order(i);
      }
      // factors of equal degree are interchangeable: keep non-decreasing exponents
      bool canonical = true;
      for (std::size_t i = 1; i < A.r; ++i)
        if (A.degrees[i] == A.degrees[i - 1] && cur[i] < cur[i - 1]) canonical = false;
      if (!canonical) continue;
      Item it{ai, cur, {}};
      for (std::size_t i = 0; i < A.r; ++i) {
        const std::uint64_t stride = A.factor_generator_log(i);
        std::uint64_t y = arith::mulmod(cur[i], stride, NL);
        for (unsigned j = 0; j < A.degrees[i]; ++j) {
          it.divisor.push_back(y);
          y = arith::mulmod(y, q, NL);
        }
      }
      std::sort(it.divisor.begin(), it.divisor.end());
      items.push_back(std::move(it));
    }
  }
  rep.characters = items.size();

  std::vector<std::vector<cyclo::CycloElement>> sigs(items.size());
  parallel_chunks(items.size(), options.jobs, [&](unsigned, std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      const auto& it = items[t];
      const auto& A = algebras[it.algebra];
      for (std::uint64_t k = 0; k + 1 < q; ++k) {
        auto acc = cyclo::CycloElement::integer(M, A.sign);
        for (std::size_t i = 0; i < A.r; ++i) {
          const std::uint64_t Nd = A.factor_order(i);
          const std::uint64_t ek = (it.exps[i] + arith::mulmod(k, Nd / (q - 1), Nd)) % Nd;
          acc = acc * gauss::subfield_gauss_S(*ambient, A.degrees[i], static_cast<std::int64_t>(ek)).lift(M);
        }
        sigs[t].push_back(std::move(acc));
      }
    }
  });

  auto label = [&](std::size_t t) {
    std::ostringstream os;
    os << "A=(";
    const auto& A = algebras[items[t].algebra];
    for (std::size_t i = 0; i < A.r; ++i) os << (i ? "," : "") << A.degrees[i];
    os << ") chi=(" << join(items[t].exps) << ")";
    return os.str();
  };

  std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> by_divisor;
  for (std::size_t t = 0; t < items.size(); ++t) by_divisor[items[t].divisor].push_back(t);
  rep.divisors = by_divisor.size();
  for (const auto& [div, members] : by_divisor)
    for (std::size_t i = 1; i < members.size(); ++i)
      if (!(sigs[members[i]] == sigs[members[0]]))
        rep.forward_failures.push_back(label(members[0]) + " vs " + label(members[i]));

  std::vector<std::uint64_t> hashes(items.size());
  for (std::size_t t = 0; t < items.size(); ++t) {
    std::uint64_t h = 0;
    for (const auto& x : sigs[t]) h = mix(h, x.hash());
    hashes[t] = h;
  }
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t t = 0; t < items.size(); ++t) buckets[hashes[t]].push_back(t);
  for (const auto& [h, members] : buckets) {
    std::vector<std::vector<std::size_t>> exact;
    for (auto t : members) {
      bool placed = false;
      for (auto& g : exact)
        if (sigs[g.front()] == sigs[t]) {
          g.push_back(t);
          placed = true;
          break;
        }
      if (!placed) exact.push_back({t});
    }
    for (const auto& g : exact) {
      ++rep.classes;
      for (auto t : g)
        if (items[t].divisor != items[g.front()].divisor) {
          rep.converse_failures.push_back(label(g.front()) + " vs " + label(t));
          break;
        }
    }
  }
  rep.wall_seconds = seconds_since(start);
  return rep;
}

}  // namespace gaussconv::converse
