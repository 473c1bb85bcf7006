#include "gaussconv/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "gaussconv/arith.hpp"
#include "gaussconv/chars.hpp"
#include "gaussconv/converse.hpp"
#include "gaussconv/digits.hpp"
#include "gaussconv/errors.hpp"
#include "gaussconv/gauss.hpp"
#include "gaussconv/gl2.hpp"
#include "gaussconv/padic.hpp"

namespace gaussconv::report {

using json = nlohmann::json;

namespace {

// Dense products for the gauss subcommand's modulus check stay below this conductor.
constexpr std::uint64_t kDirectProductConductor = 20000;

class Builder {
 public:
  json result = json::object();
  std::string csv;

  void check(const std::string& name, bool ok, const std::string& witness = {}, bool asserted = true) {
    add(name, ok ? "PASS" : "FAIL", witness, asserted);
    if (asserted && !ok) violated_ = true;
  }
  void status(const std::string& name, const std::string& status, const std::string& witness, bool asserted,
              bool violation) {
    add(name, status, witness, asserted);
    if (asserted && violation) violated_ = true;
  }
  /// Collision assertion, flipped by --expect-collisions.
  void collisions(const std::string& name, std::size_t count, const std::string& witness, bool expect,
                  bool asserted = true) {
    if (expect) {
      status(name, count > 0 ? "EXPECTED" : "FAIL", count > 0 ? witness : "no collision found", true, count == 0);
    } else {
      check(name, count == 0, witness, asserted);
    }
  }

  json assertions() const { return assertions_; }
  bool violated() const { return violated_; }

 private:
  void add(const std::string& name, const std::string& status, const std::string& witness, bool asserted) {
    json a = {{"name", name}, {"status", status}};
    if (!asserted) a["asserted"] = false;
    if (!witness.empty()) a["witness"] = witness;
    assertions_.push_back(std::move(a));
  }
  json assertions_ = json::array();
  bool violated_ = false;
};

ff::TowerOptions tower_options(const RunConfig& c) {
  ff::TowerOptions o;
  o.size_cap = c.size_cap;
  o.cache_dir = c.cache_dir;
  return o;
}

converse::ScanOptions scan_options(const RunConfig& c) {
  converse::ScanOptions o;
  o.jobs = c.jobs;
  o.tower = tower_options(c);
  return o;
}

json stamp_json(const converse::ConventionStamp& s) {
  return {{"p", s.p}, {"f", s.f}, {"n", s.n}, {"modulus", s.modulus}, {"generator", s.generator},
          {"psi", s.psi}, {"omega", s.omega}};
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "}";
}

std::string classes_csv(const std::vector<std::vector<std::uint64_t>>& classes) {
  std::string out = "orbit_rep,class,class_size\n";
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (auto rep : classes[i])
      out += std::to_string(rep) + "," + std::to_string(i) + "," + std::to_string(classes[i].size()) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

void field_info(const RunConfig& c, Builder& b, json& meta) {
  const auto tower = ff::build_tower(c.p, c.f, c.n, tower_options(c));
  meta["convention"] = stamp_json(converse::stamp(*tower));
  const chars::CharGroup grp(tower->q(), c.n);
  std::uint64_t regular = 0;
  for (std::uint64_t e = 0; e < grp.order(); ++e) regular += grp.is_regular(e);
  b.result = {{"q", tower->q()},
              {"degree_over_p", tower->degree()},
              {"size", tower->size()},
              {"group_order", tower->group_order()},
              {"generator_index", tower->generator().index},
              {"orbits", grp.orbit_reps(false).size()},
              {"regular_orbits", grp.orbit_reps(true).size()},
              {"regular_characters", regular}};
  b.check("regular-count", regular == grp.regular_count_formula(),
          regular == grp.regular_count_formula() ? "" : "formula gives " + std::to_string(grp.regular_count_formula()));
}

void gauss_single(const RunConfig& c, Builder& b, json& meta) {
  const auto tower = ff::build_tower(c.p, c.f, c.n, tower_options(c));
  meta["convention"] = stamp_json(converse::stamp(*tower));
  const chars::MultChar chi(tower, *c.e);
  const auto S = gauss::gauss_S(chi);
  b.result = {{"exponent", chi.exponent()},
              {"order", chi.order()},
              {"regular", chi.is_regular()},
              {"orbit", chi.frobenius_orbit()},
              {"restriction_to_base", chi.restrict_to_base()},
              {"value_at_minus_one", chi.group().value_at_minus_one(chi.exponent())},
              {"conductor", chi.conductor()},
              {"S", gauss::to_string(S)}};
  b.check("G-by-substitution-matches-direct-sum", gauss::gauss_G(chi) == gauss::gauss_G_direct(chi));
  if (chi.exponent() == 0) {
    b.status("modulus-identity", "NOT-APPLICABLE", "trivial character", true, false);
  } else if (chi.conductor() <= kDirectProductConductor) {
    const gauss::GaussTable table(tower);
    b.check("modulus-identity", gauss::modulus_identity_direct(table, static_cast<std::int64_t>(chi.exponent())));
  } else {
    b.status("modulus-identity", "NOT-APPLICABLE", "conductor above the dense-product limit", true, false);
  }
}

void scan(const RunConfig& c, Builder& b, json& meta, bool primitive) {
  const auto rep = primitive ? converse::scan_primitive(c.p, c.f, c.n, c.r, scan_options(c))
                             : converse::scan_converse(c.p, c.f, c.n,
                                                       c.all_characters ? converse::Population::kAll
                                                                        : converse::Population::kRegular,
                                                       scan_options(c));
  meta["convention"] = stamp_json(rep.stamp);
  if (c.timing) meta["wall_seconds"] = rep.wall_seconds;
  b.result = {{"q", rep.q},
              {"n", rep.n},
              {"population", rep.population},
              {"orbits_scanned", rep.orbits_scanned},
              {"classes", rep.classes.size()},
              {"collisions", rep.collisions},
              {"hash_false_positives", rep.hash_false_positives}};
  if (primitive) b.result["r"] = c.r;
  std::string witness;
  if (!rep.collisions.empty()) witness = "orbits " + join(rep.collisions.front()) + " share a twist signature";
  // the primitive case is open, so a collision there is data, not a violation
  b.collisions("zero-collisions", rep.collisions.size(), witness, c.expect_collisions, !primitive);
  b.check("central-character", rep.central_character_ok, rep.central_character_witness);
  b.csv = classes_csv(rep.classes);
}

void lemmas(const RunConfig& c, Builder& b, json&) {
  const auto rep = converse::lemma_suite(c.p, c.n, scan_options(c));
  json checks = json::array();
  for (const auto& ch : rep.checks) {
    checks.push_back({{"name", ch.name},
                      {"hypothesis", ch.hypothesis},
                      {"pairs_tested", ch.pairs_tested},
                      {"cross_orbit_pairs", ch.cross_orbit_pairs},
                      {"violations", ch.violations}});
    std::string label = converse::to_string(ch.status);
    std::transform(label.begin(), label.end(), label.begin(), [](unsigned char x) { return std::toupper(x); });
    b.status(ch.name, label, ch.witness, ch.asserted,
             ch.status == converse::CheckStatus::kFail);
  }
  b.result = {{"p", rep.p}, {"n", rep.n}, {"checks", checks}};
}

unsigned stickelberger_K(const RunConfig& c) { return c.precision ? c.precision : c.n + 2; }

void stickelberger(const RunConfig& c, Builder& b, json& meta) {
  const auto tower = ff::build_tower(c.p, 1, c.n, tower_options(c));
  meta["convention"] = stamp_json(converse::stamp(*tower));
  const padic::Ring ring(tower, stickelberger_K(c));
  const padic::Embedding emb(ring);
  std::uint64_t checked = 0, valuation_failures = 0, congruence_failures = 0;
  std::string vw, cw;
  for (std::uint64_t k = 1; k < tower->group_order(); ++k) {
    const auto r = padic::stickelberger_check(emb, k);
    ++checked;
    if (!r.valuation_ok && valuation_failures++ == 0) vw = "k=" + std::to_string(k) + " s=" + std::to_string(r.s);
    if (!r.congruence_ok && congruence_failures++ == 0) cw = "k=" + std::to_string(k);
  }
  b.result = {{"exponents_checked", checked},
              {"ring_K", ring.K()},
              {"valuation_failures", valuation_failures},
              {"congruence_failures", congruence_failures}};
  b.check("valuation-equals-digit-sum", valuation_failures == 0, vw);
  b.check("unit-congruence", congruence_failures == 0, cw);
}

void gross_koblitz(const RunConfig& c, Builder& b, json& meta) {
  const auto tower = ff::build_tower(c.p, 1, c.n, tower_options(c));
  meta["convention"] = stamp_json(converse::stamp(*tower));
  const unsigned K = c.precision ? c.precision : padic::required_K(c.n, c.m);
  const padic::Ring ring(tower, K);
  const padic::Embedding emb(ring);
  std::uint64_t checked = 0, gamma_disagree = 0, plus = 0, minus = 0, neither = 0;
  std::string gw, nw;
  for (std::uint64_t a = 1; a < tower->group_order(); ++a) {
    const auto r = padic::gross_koblitz_check(emb, a, c.m);
    ++checked;
    if (!r.gamma_agree && gamma_disagree++ == 0) gw = "a=" + std::to_string(a);
    if (r.sign == 1) ++plus;
    else if (r.sign == -1) ++minus;
    else if (neither++ == 0) nw = "a=" + std::to_string(a);
  }
  b.result = {{"exponents_checked", checked}, {"window", c.m},          {"ring_K", K},
              {"sign_plus", plus},            {"sign_minus", minus},    {"sign_neither", neither}};
  b.check("gamma-digit-formula-matches-product", gamma_disagree == 0, gw);
  b.check("identity-up-to-uniform-sign", neither == 0 && (plus == 0 || minus == 0), nw);
  b.check("identity-literal-sign", plus == checked,
          plus == checked ? "" : std::to_string(minus) + " of " + std::to_string(checked) + " hold with sign -1",
          false);
}

void counterexample(const RunConfig& c, Builder& b, json&) {
  const auto rep = converse::counterexample(c.p, c.t, scan_options(c));
  b.result = {{"p", rep.p},
              {"t", rep.t},
              {"n", rep.n},
              {"order", rep.order},
              {"phi", rep.phi},
              {"feasible", rep.feasible},
              {"expected_value", rep.expected_value},
              {"characters_checked", rep.characters_checked},
              {"orbit_reps", rep.orbit_reps},
              {"collisions", rep.collisions}};
  b.check("gauss-sum-equals-minus-p-power", rep.values_match,
          rep.value_witness ? "e=" + std::to_string(*rep.value_witness) : "");
  std::string witness;
  if (!rep.collisions.empty()) witness = "orbits " + join(rep.collisions.front()) + " share a twist signature";
  b.collisions("zero-collisions", rep.collisions.size(), witness, c.expect_collisions);
  std::vector<std::vector<std::uint64_t>> classes;
  std::set<std::uint64_t> in_collision;
  for (const auto& cl : rep.collisions) {
    classes.push_back(cl);
    in_collision.insert(cl.begin(), cl.end());
  }
  for (auto rep_e : rep.orbit_reps)
    if (!in_collision.count(rep_e)) classes.push_back({rep_e});
  std::sort(classes.begin(), classes.end());
  b.csv = classes_csv(classes);
}

void mersenne(const RunConfig& c, Builder& b, json&) {
  const auto rep = converse::mersenne_check(c.n, scan_options(c));
  b.result = {{"n", rep.n}, {"N", rep.N}, {"coset_count", rep.coset_count}, {"orbits", rep.orbits}};
  b.check("spectrum-injective", rep.injective,
          rep.witness ? "orbits " + std::to_string(rep.witness->first) + " and " + std::to_string(rep.witness->second)
                      : "");
  b.check("single-bit-digit-sum", rep.single_bit_ok);
  b.check("gauss-sums-separate-orbits", rep.gauss_separates);
}

void gl2_check(const RunConfig& c, Builder& b, json&) {
  const auto rep = gl2::gl2_check(c.p, c.max_q, c.jobs);
  b.result = {{"q", rep.q},
              {"characters", rep.characters},
              {"comparisons", rep.comparisons},
              {"gamma_mismatches", rep.gamma_mismatches},
              {"gamma_mismatches_against_inverse", rep.gamma_inverse_mismatches}};
  b.check("class-count", rep.class_count_ok);
  b.check("character-gates", rep.gates_ok, rep.witness);
  b.check("gamma-bessel-equals-gauss-formula", rep.gamma_mismatches == 0, rep.witness);
  b.check("bessel-identity", rep.bessel_identity_ok);
  b.check("bessel-equivariance", rep.equivariance_ok);
  b.check("mirabolic-support", rep.mirabolic_support_ok);
  b.check("fourier-inversion", rep.fourier_ok);
  b.check("bessel-vectors-separate", rep.separation_ok, rep.witness);
  b.check("conjugate-invariance", rep.conjugate_invariance_ok);
}

void tensor_rhs(const RunConfig& c, Builder& b, json& meta) {
  const auto rhs = gauss::tensor_gamma_rhs(c.p, c.f, static_cast<std::uint64_t>(*c.e),
                                           static_cast<std::uint64_t>(*c.eta), c.n, c.m, tower_options(c));
  meta["convention"] = stamp_json(converse::stamp(*rhs.tower));
  b.result = {{"composed_exponent", rhs.composed_exponent},
              {"conductor", rhs.value.numerator().conductor().m()},
              {"value", gauss::to_string(rhs.value)}};
  if (c.m != 1) {
    b.status("m1-consistency", "NOT-APPLICABLE", "only m = 1 has an independent anchor", true, false);
    return;
  }
  const chars::MultChar chi(rhs.tower, *c.e);
  if (!chi.is_regular()) {
    b.status("m1-consistency", "NOT-APPLICABLE", "chi is not regular", true, false);
    return;
  }
  const auto gamma = gauss::gamma_n_by_1(chi, static_cast<std::uint64_t>(*c.eta) % (rhs.tower->q() - 1));
  b.check("m1-consistency", rhs.value.lift(gamma.numerator().conductor().m()) == gamma);
}

void hasse_davenport(const RunConfig& c, Builder& b, json&) {
  const std::uint64_t q = arith::ipow(c.p, c.f);
  std::vector<std::uint64_t> exps;
  if (c.e) exps.push_back(arith::mod(*c.e, q - 1));
  else
    for (std::uint64_t e = 0; e + 1 < q; ++e) exps.push_back(e);
  std::uint64_t failures = 0;
  std::string witness;
  for (auto e : exps) {
    const auto r = gauss::hasse_davenport_check(c.p, c.f, e, c.m, tower_options(c));
    if (!r.holds && failures++ == 0) witness = "e=" + std::to_string(e);
  }
  b.result = {{"q", q}, {"m", c.m}, {"characters_checked", exps.size()}, {"failures", failures}};
  b.check("hasse-davenport", failures == 0, witness);
}

void etale(const RunConfig& c, Builder& b, json&) {
  const auto rep = converse::etale_signature_scan(c.p, c.f, c.n, scan_options(c));
  b.result = {{"q", rep.q},
              {"n", rep.n},
              {"bound_satisfied", rep.bound_satisfied},
              {"algebras", rep.algebras},
              {"characters", rep.characters},
              {"divisors", rep.divisors},
              {"classes", rep.classes},
              {"forward_failures", rep.forward_failures.size()},
              {"converse_failures", rep.converse_failures.size()}};
  b.check("same-divisor-same-signature", rep.forward_failures.empty(),
          rep.forward_failures.empty() ? "" : rep.forward_failures.front());
  b.check("signature-determines-divisor", rep.converse_failures.empty(),
          rep.converse_failures.empty() ? "" : rep.converse_failures.front(), rep.bound_satisfied);
}

using Handler = std::function<void(const RunConfig&, Builder&, json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"field-info", field_info},
      {"gauss", gauss_single},
      {"scan", [](const RunConfig& c, Builder& b, json& m) { scan(c, b, m, false); }},
      {"primitive-scan", [](const RunConfig& c, Builder& b, json& m) { scan(c, b, m, true); }},
      {"lemmas", lemmas},
      {"stickelberger", stickelberger},
      {"gross-koblitz", gross_koblitz},
      {"counterexample", counterexample},
      {"mersenne", mersenne},
      {"gl2-check", gl2_check},
      {"tensor-rhs", tensor_rhs},
      {"hasse-davenport", hasse_davenport},
      {"etale-scan", etale},
  };
  return h;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_prime(std::uint32_t p, const char* flag = "--p") {
  require(p >= 2 && arith::is_prime(p), std::string(flag) + " must be a prime, got " + std::to_string(p));
}

json config_json(const RunConfig& c) {
  json j = json::object();
  if (c.p) j["p"] = c.p;
  if (c.p && c.command != "gl2-check") j["f"] = c.f;
  if (c.n) j["n"] = c.n;
  if (c.r) j["r"] = c.r;
  if (c.t) j["t"] = c.t;
  if (c.m) j["m"] = c.m;
  if (c.e) j["e"] = *c.e;
  if (c.eta) j["eta"] = *c.eta;
  if (c.all_characters) j["population"] = "all";
  if (c.precision) j["precision"] = c.precision;
  if (c.expect_collisions) j["expect_collisions"] = true;
  return j;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "field-info",     "gauss",    "scan",      "primitive-scan", "lemmas",          "stickelberger", "gross-koblitz",
      "counterexample", "mersenne", "gl2-check", "tensor-rhs",     "hasse-davenport", "etale-scan"};
  return names;
}

void validate(const RunConfig& c) {
  const std::string& cmd = c.command;
  require(handlers().count(cmd) == 1, "unknown subcommand '" + cmd + "'");
  require(c.jobs >= 1, "--jobs must be at least 1");
  require(c.f >= 1, "--f must be at least 1");
  if (c.format == Format::kCsv)
    require(cmd == "scan" || cmd == "primitive-scan" || cmd == "counterexample",
            "--format csv is available for scan, primitive-scan and counterexample only");
  if (c.all_characters) require(cmd == "scan", "--all applies to scan only");
  if (c.expect_collisions)
    require(cmd == "scan" || cmd == "primitive-scan" || cmd == "counterexample",
            "--expect-collisions applies to scan, primitive-scan and counterexample only");

  if (cmd == "mersenne") {
    require(c.n >= 2, "mersenne needs --n >= 2");
    return;
  }
  if (cmd == "gl2-check") {
    require_prime(c.p, "--q");
    require(c.p <= c.max_q, "--q " + std::to_string(c.p) + " exceeds --max-q " + std::to_string(c.max_q));
    return;
  }
  require_prime(c.p);
  if (cmd == "counterexample") {
    require(c.t >= 1, "counterexample needs --t >= 1");
    return;
  }
  if (cmd == "hasse-davenport") {
    require(c.m >= 1, "hasse-davenport needs --m >= 1 (the lift degree)");
    return;
  }
  require(c.n >= 1, cmd + " needs --n >= 1");
  if (cmd == "gauss") require(c.e.has_value(), "gauss needs --e (the character exponent)");
  if (cmd == "scan" || cmd == "lemmas") require(c.n >= 2 || c.all_characters, cmd + " needs --n >= 2");
  if (cmd == "primitive-scan") {
    require(c.r >= 2 && arith::is_prime(c.r) && c.n % c.r == 0, "primitive-scan needs --r a prime divisor of --n");
  }
  if (cmd == "lemmas" || cmd == "stickelberger" || cmd == "gross-koblitz")
    require(c.f == 1, cmd + " works over a prime base; use --f 1");
  if (cmd == "gross-koblitz") {
    require(c.m >= 1, "gross-koblitz needs --m >= 1 (comparison modulo p^{m+1})");
    require(c.p != 2 || c.m >= 2, "gross-koblitz at p = 2 needs --m >= 2");
  }
  if (cmd == "tensor-rhs") {
    require(c.e.has_value() && c.eta.has_value(), "tensor-rhs needs --e and --eta");
    require(c.m >= 1 && c.n > c.m, "tensor-rhs needs n > m >= 1");
  }
}

Outcome execute(const RunConfig& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  Builder b;
  json meta = {{"artifact", "gaussconv"}, {"version", kArtifactVersion}, {"command", c.command},
               {"config", config_json(c)}};
  handlers().at(c.command)(c, b, meta);
  if (c.timing && !meta.contains("wall_seconds"))
    meta["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Outcome out;
  out.document = {{"meta", meta}, {"result", b.result}, {"assertions", b.assertions()}};
  out.status = b.violated() ? kViolation : kOk;
  if (c.format == Format::kCsv) out.csv = b.csv;
  return out;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  Outcome outcome;
  try {
    outcome = execute(c);
  } catch (const ResourceError& e) {
    diag << "error: " << e.what() << " (cap " << e.cap() << ")\n";
    return kResourceError;
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InternalError& e) {
    diag << "internal error: " << e.what() << "\n";
    return kViolation;
  }
  const std::string text = c.format == Format::kCsv ? outcome.csv : outcome.document.dump(2) + "\n";
  if (c.output) {
    std::ofstream file(*c.output);
    if (!file) {
      diag << "error: cannot write " << c.output->string() << "\n";
      return kConfigError;
    }
    file << text;
  } else {
    out << text;
  }
  for (const auto& a : outcome.document["assertions"])
    if (a["status"] == "FAIL" && a.value("asserted", true))
      diag << "violation: " << a["name"].get<std::string>()
           << (a.contains("witness") ? " (" + a["witness"].get<std::string>() + ")" : "") << "\n";
  return outcome.status;
}

}  // namespace gaussconv::report
