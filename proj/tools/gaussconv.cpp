// gaussconv: exact Gauss-sum experiments from the command line.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "gaussconv/report.hpp"

namespace {

using gaussconv::report::Format;
using gaussconv::report::RunConfig;

struct Flags {
  bool p = false, f = false, n = false, r = false, t = false, m = false, e = false, eta = false, all = false,
       precision = false, expect = false, max_q = false;
};

const std::map<std::string, std::pair<std::string, Flags>>& catalogue() {
  static const std::map<std::string, std::pair<std::string, Flags>> c = {
      {"field-info", {"Pinned modulus, generator and orbit counts of F_{p^{fn}}", {.p = true, .f = true, .n = true}}},
      {"gauss", {"Gauss sum of one character", {.p = true, .f = true, .n = true, .e = true}}},
      {"scan", {"Twist-signature scan over Frobenius orbits",
                {.p = true, .f = true, .n = true, .all = true, .expect = true}}},
      {"primitive-scan", {"Scan over a subfield base F_{q^{n/r}} of degree r",
                          {.p = true, .f = true, .n = true, .r = true, .expect = true}}},
      {"lemmas", {"Digit-calculus consequences of equal Gauss sums", {.p = true, .n = true}}},
      {"stickelberger", {"pi-adic valuation and unit congruence of every Gauss sum",
                         {.p = true, .n = true, .precision = true}}},
      {"gross-koblitz", {"Gauss sums against products of p-adic Gamma values",
                         {.p = true, .n = true, .m = true, .precision = true}}},
      {"counterexample", {"Characters of order p^t + 1 on F_{p^{2t}}", {.p = true, .t = true, .expect = true}}},
      {"mersenne", {"Stickelberger spectrum injectivity for p = 2", {.n = true}}},
      {"gl2-check", {"Bessel-function gamma factors of cuspidal GL_2(F_q) representations", {.max_q = true}}},
      {"tensor-rhs", {"Right side of the tensor-product gamma identity",
                      {.p = true, .f = true, .n = true, .m = true, .e = true, .eta = true}}},
      {"hasse-davenport", {"Lifting relation for characters of F_q", {.p = true, .f = true, .m = true, .e = true}}},
      {"etale-scan", {"Signed signatures over every etale algebra of degree n", {.p = true, .f = true, .n = true}}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Gauss sums, twist signatures and their digit calculus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gaussconv::report::kArtifactVersion);

  RunConfig config;
  std::string format = "json";
  std::string output;
  std::string cache_dir;
  std::int64_t e = 0, eta = 0;

  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::pair<CLI::Option*, CLI::Option*>> optional_exponents;
  for (const auto& name : gaussconv::report::commands()) {
    const auto& [help, flags] = catalogue().at(name);
    CLI::App* sub = app.add_subcommand(name, help);
    subs[name] = sub;
    if (flags.p) sub->add_option("--p", config.p, "Characteristic")->required();
    if (name == "gl2-check") sub->add_option("--q,--p", config.p, "Prime field size q")->required();
    if (flags.f) sub->add_option("--f", config.f, "Base field degree over F_p")->capture_default_str();
    if (flags.n) sub->add_option("--n", config.n, "Degree over the base field")->required();
    if (flags.r) sub->add_option("--r", config.r, "Degree over the subfield base")->required();
    if (flags.t) sub->add_option("--t", config.t, "Exponent t in p^t + 1")->required();
    if (flags.m) {
      auto* opt = sub->add_option("--m", config.m,
                                  name == "gross-koblitz" ? "Window: compare modulo p^{m+1} (default 1)"
                                  : name == "tensor-rhs"  ? "Degree of the second character's field"
                                                          : "Lift degree");
      if (name != "gross-koblitz") opt->required();
    }
    CLI::Option* e_opt = nullptr;
    CLI::Option* eta_opt = nullptr;
    if (flags.e) {
      e_opt = sub->add_option("--e", e, "Character exponent: chi_e(g) = zeta^e");
      if (name != "hasse-davenport") e_opt->required();
    }
    if (flags.eta) eta_opt = sub->add_option("--eta", eta, "Exponent of the second character")->required();
    optional_exponents[name] = {e_opt, eta_opt};
    if (flags.all) sub->add_flag("--all", config.all_characters, "Scan every orbit, not only regular ones");
    if (flags.precision) sub->add_option("--precision", config.precision, "p-adic precision K (ring mod p^K)");
    if (flags.expect)
      sub->add_flag("--expect-collisions", config.expect_collisions, "Collisions are the expected outcome");
    if (flags.max_q) sub->add_option("--max-q", config.max_q, "Largest q accepted")->capture_default_str();

    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--output,-o", output, "Write the report here instead of standard output");
    sub->add_option("--cache-dir", cache_dir,
                    std::string("Table cache directory (default: $") + gaussconv::report::kCacheEnv + ")");
    sub->add_option("--jobs,-j", config.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--size-cap", config.size_cap, "Largest field size accepted")->capture_default_str();
    sub->add_flag("--timing", config.timing, "Record wall time in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : gaussconv::report::kConfigError;
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) config.command = name;
  const auto [e_opt, eta_opt] = optional_exponents.at(config.command);
  if (e_opt && e_opt->count()) config.e = e;
  if (eta_opt && eta_opt->count()) config.eta = eta;
  if (config.command == "gross-koblitz" && config.m == 0) config.m = 1;
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  if (!output.empty()) config.output = output;
  if (!cache_dir.empty()) {
    config.cache_dir = cache_dir;
  } else if (const char* env = std::getenv(gaussconv::report::kCacheEnv); env && *env) {
    config.cache_dir = env;
  }
  return gaussconv::report::run(config, std::cout, std::cerr);
}
