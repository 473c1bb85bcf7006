// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 when every criterion matches its recorded expectation.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussconv/arith.hpp"
#include "gaussconv/converse.hpp"
#include "gaussconv/digits.hpp"
#include "gaussconv/gauss.hpp"
#include "gaussconv/gl2.hpp"
#include "gaussconv/padic.hpp"

using namespace gaussconv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
  bool expected_pass = true;
  std::string expectation;  // why a failure is expected
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

Outcome converse_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<unsigned, unsigned>> cases = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {3, 4},
                                                            {3, 5}, {5, 2}, {5, 3}, {5, 4}, {7, 2}, {7, 3}};
  std::uint64_t orbits = 0;
  std::ostringstream bad;
  for (auto [p, n] : cases) {
    const auto rep = converse::scan_converse(p, 1, n, converse::Population::kRegular);
    orbits += rep.orbits_scanned;
    if (!rep.clean() || rep.orbits_scanned == 0) bad << " (" << p << "," << n << ")";
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = bad.str().empty() && t <= 600;
  o.detail = std::to_string(cases.size()) + " fields, " + std::to_string(orbits) + " regular orbits, " +
             (bad.str().empty() ? "zero collisions" : "collisions at" + bad.str()) + ", " + fmt_seconds(t);
  return o;
}

Outcome counterexample() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto scan = converse::scan_converse(3, 1, 6, converse::Population::kRegular);
  bool paired = false;
  for (const auto& cls : scan.collisions) {
    bool has26 = false, has130 = false;
    for (auto e : cls) {
      has26 |= e == 26;
      has130 |= e == 130;
    }
    paired |= has26 && has130;
  }
  const auto ce = converse::counterexample(3, 3);
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = !scan.collisions.empty() && paired && ce.values_match && ce.characters_checked == 12 && t <= 30;
  o.detail = std::to_string(scan.collisions.size()) + " collision class(es), {26, 130} " +
             (paired ? "together" : "separated") + ", S = " + std::to_string(ce.expected_value) + " on " +
             std::to_string(ce.characters_checked) + " order-28 characters " + (ce.values_match ? "(all)" : "(NOT all)") +
             ", " + fmt_seconds(t);
  return o;
}

Outcome stickelberger() {
  std::uint64_t checked = 0, failures = 0;
  for (auto [p, nmax] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {3, 4}, {5, 3}})
    for (unsigned n = 1; n <= nmax; ++n) {
      auto t = ff::build_tower(p, 1, n);
      const padic::Ring R(t, n + 2);
      const padic::Embedding emb(R);
      for (std::uint64_t k = 1; k < t->group_order(); ++k) {
        ++checked;
        failures += !padic::stickelberger_check(emb, k).ok();
      }
    }
  return {failures == 0 && checked > 0,
          std::to_string(checked) + " exponents, " + std::to_string(failures) + " failures (valuation and congruence)"};
}

Outcome gross_koblitz() {
  std::uint64_t checked = 0, gamma_disagree = 0, plus = 0, minus = 0, neither = 0;
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {3, 3}, {5, 2}})
    for (unsigned m : {1u, 2u}) {
      auto t = ff::build_tower(p, 1, n);
      const padic::Ring R(t, padic::required_K(n, m));
      const padic::Embedding emb(R);
      for (std::uint64_t a = 1; a < t->group_order(); ++a) {
        const auto r = padic::gross_koblitz_check(emb, a, m);
        ++checked;
        gamma_disagree += !r.gamma_agree;
        plus += r.sign == 1;
        minus += r.sign == -1;
        neither += r.sign == 0;
      }
    }
  Outcome o;
  o.pass = gamma_disagree == 0 && plus == checked;
  o.detail = std::to_string(checked) + " cases; digit and product Gamma_p agree on " +
             std::to_string(checked - gamma_disagree) + "; literal sign holds on " + std::to_string(plus) +
             ", sign -1 on " + std::to_string(minus) + ", neither on " + std::to_string(neither);
  return o;
}

Outcome digit_identity() {
  std::uint64_t cases = 0, failures = 0;
  for (auto [p, nmax] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 5}, {5, 4}, {7, 3}})
    for (unsigned n = 1; n <= nmax; ++n) {
      const std::uint64_t N = arith::ipow(p, n) - 1;
      for (std::uint64_t e = 0; e < N; ++e) {
        const auto v = digits::expand(p, n, static_cast<std::int64_t>(e));
        for (unsigned a = 1; a < p; ++a) {
          const std::uint64_t shift = (p - a) * (N / (p - 1));
          const auto w = digits::expand(p, n, static_cast<std::int64_t>((e + shift) % N));
          const std::int64_t rhs = static_cast<std::int64_t>(digits::s(v) + (p - a) * n) -
                                   static_cast<std::int64_t>(digits::v_a(v, a) * (p - 1));
          ++cases;
          failures += static_cast<std::int64_t>(digits::s(w)) != rhs;
        }
      }
    }
  return {failures == 0, std::to_string(cases) + " (alpha, a) cases, " + std::to_string(failures) + " failures"};
}

Outcome lemma_suites() {
  std::ostringstream d;
  bool ok = true;
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{3, 4}, {3, 5}, {5, 3}, {5, 4}}) {
    const auto rep = converse::lemma_suite(p, n);
    ok = ok && rep.ok();
    d << "(" << p << "," << n << "):";
    for (const auto& c : rep.checks) {
      if (!c.asserted) continue;
      if (c.status == converse::CheckStatus::kInconclusive) ok = false;
      d << " " << c.name << "=" << c.pairs_tested;
    }
    d << "; ";
  }
  std::string detail = d.str();
  detail.resize(detail.size() - 2);
  return {ok, "pairs tested " + detail};
}

Outcome mersenne() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool ok = true;
  for (unsigned n : {3u, 5u, 7u}) {
    const auto r = converse::mersenne_check(n);
    ok = ok && r.injective && r.single_bit_ok && r.gauss_separates;
    d << "n=" << n << ": " << r.coset_count << " cosets " << (r.injective ? "injective" : "NOT injective") << "; ";
  }
  const double t = seconds_since(t0);
  return {ok && t <= 5, d.str() + fmt_seconds(t)};
}

Outcome appendix_scan() {
  std::ostringstream d;
  bool ok = true;
  for (auto [p, f] : std::vector<std::pair<unsigned, unsigned>>{{13, 1}, {17, 1}, {5, 2}}) {
    const auto rep = converse::scan_converse(p, f, 2, converse::Population::kAll);
    const double bound = (static_cast<double>(rep.q) - 1) / (2 * std::sqrt(static_cast<double>(rep.q))) + 1;
    ok = ok && rep.clean() && 2 < bound;
    d << "q=" << rep.q << ": " << rep.orbits_scanned << " orbits, " << rep.collisions.size() << " collisions; ";
  }
  std::string detail = d.str();
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome gl2_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool ok = true;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto r = gl2::gl2_check(q);
    ok = ok && r.ok();
    d << "q=" << q << ": " << r.comparisons << " comparisons, " << r.gamma_mismatches << " mismatches, gates "
      << (r.gates_ok ? "ok" : "FAILED") << "; ";
  }
  const double t = seconds_since(t0);
  return {ok && t <= 60, d.str() + fmt_seconds(t)};
}

Outcome modulus_and_hd() {
  std::uint64_t fields = 0, characters = 0, failures = 0, direct_checked = 0, hd_checked = 0, hd_failures = 0;
  for (std::uint32_t p = 2; p <= 1024; ++p) {
    if (!arith::is_prime(p)) continue;
    for (unsigned D = 1; arith::ipow(p, D) <= 1024; ++D) {
      auto t = ff::build_tower(p, 1, D);
      const gauss::GaussTable table(t);
      ++fields;
      for (const auto& r : gauss::modulus_identity_batch(table)) {
        ++characters;
        failures += !r.holds;
      }
      if (table.conductor() <= 1000)
        for (std::int64_t e = 1; e < static_cast<std::int64_t>(t->group_order()); ++e) {
          ++direct_checked;
          failures += !gauss::modulus_identity_direct(table, e);
        }
    }
  }
  for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {3, 3}, {5, 2}})
    for (std::uint64_t e = 0; e + 1 < q; ++e) {
      ++hd_checked;
      hd_failures += !gauss::hasse_davenport_check(q, 1, e, m).holds;
    }
  return {failures == 0 && hd_failures == 0,
          std::to_string(fields) + " fields, " + std::to_string(characters) + " characters (" +
              std::to_string(direct_checked) + " also by dense product), " + std::to_string(failures) +
              " failures; Hasse-Davenport " + std::to_string(hd_checked) + " characters, " +
              std::to_string(hd_failures) + " failures"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "converse sweep", converse_sweep},
      {2, "counterexample at (3,6)", counterexample},
      {3, "Stickelberger", stickelberger},
      {4, "Gross-Koblitz", gross_koblitz, false,
       "literal identity off by a uniform factor -1 (Gauss-sum sign convention); see README"},
      {5, "digit-graph identity", digit_identity},
      {6, "lemma suites", lemma_suites},
      {7, "Mersenne spectra", mersenne},
      {8, "appendix scan over all characters", appendix_scan},
      {9, "GL2 Bessel oracle", gl2_oracle},
      {10, "modulus identity and Hasse-Davenport", modulus_and_hd},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c.id << " [" << c.title << "]: " << (o.pass ? "PASS" : "FAIL") << " -- " << o.detail;
    if (o.pass != c.expected_pass) {
      ++unexpected;
      std::cout << " (UNEXPECTED)";
    } else if (!o.pass) {
      std::cout << " (expected: " << c.expectation << ")";
    }
    std::cout << std::endl;
  }
  std::cout << (unexpected == 0 ? "all criteria match expectations" : std::to_string(unexpected) + " unexpected outcome(s)")
            << std::endl;
  return unexpected == 0 ? 0 : 1;
}
