// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inbl/collapse.hpp"
#include "inbl/dsl.hpp"
#include "inbl/errors.hpp"
#include "inbl/evaluator.hpp"
#include "inbl/experiments.hpp"
#include "inbl/mix.hpp"
#include "inbl/oracle.hpp"
#include "inbl/phonebook.hpp"
#include "random_exprs.hpp"

using namespace inbl;

namespace {

const char* kThreeStrings = "bits 4; R1_1*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_1*R4_0 + R1_0*R2_1*R3_1*R4_0";
const char* kFourStrings =
    "bits 4; R1_1*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_1*R4_0 + R1_0*R2_0*R3_0*R4_0 + R1_0*R2_1*R3_1*R4_0";

struct Check {
  bool ok = true;
  std::string failure;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      failure = what;
    }
  }
};

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(INBL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(INBL_DATA_DIR) + "/" + name; }

SwitchState random_switches(std::mt19937_64& rng, std::uint32_t m) {
  SwitchState s(m);
  for (std::uint32_t k = 1; k <= m; ++k) {
    for (std::uint8_t v = 0; v <= 1; ++v) {
      if (rng() % 4 == 0) s.ground({k, v});
    }
  }
  return s;
}

std::set<std::string> strings_of(const Expansion& e) {
  std::set<std::string> out;
  for (const auto& x : e.entries()) out.insert(pattern_text(x.monomial, e.num_bits()));
  return out;
}

// 1. Full-string search on the three-string superposition.
void full_string_examples(Check& c) {
  const std::string file = data("three_strings.nbl");
  const CliRun hit = run_cli("search " + file + " --string 1010 --output json");
  c.require(hit.exit_code == 0, "1010: exit " + std::to_string(hit.exit_code));
  if (!c.ok) return;
  const auto j = nlohmann::json::parse(hit.out).at("records")[0];
  c.require(j.at("verdict") == "Present", "1010 not Present");
  c.require(j.at("switch_ops") == 4, "1010 switch_ops != 4");

  // Remaining queries: the verdict must equal term-list membership.
  const Expansion terms = expand(parse_dsl(kThreeStrings).expr, 4);
  for (const char* q : {"0010", "0110", "1111", "0000"}) {
    const CliRun r = run_cli("search " + file + " --string " + q + " --output json");
    const bool member_of_list = member(terms, Pattern::full(q)) != 0;
    c.require(r.exit_code == (member_of_list ? 0 : 1), std::string(q) + ": exit " + std::to_string(r.exit_code));
    if (r.exit_code == 0 || r.exit_code == 1) {
      const auto rec = nlohmann::json::parse(r.out).at("records")[0];
      c.require(rec.at("switch_ops") == 4, std::string(q) + ": switch_ops != 4");
    }
  }
  c.detail << "1010/0010/0110 Present, 1111/0000 Absent, 4 switch ops each";
}

// 2. Fragment search and survivor set.
void fragment_examples(Check& c) {
  const Pattern frag = Pattern::fragments("1=0,2=0,4=0", 4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ReferenceSystem sys(4, RtwScheme::Asymmetric, seed);
    const SearchOutcome o = fragment_search(parse_dsl(kThreeStrings).expr, sys, frag, kDefaultTau);
    c.require(o.verdict == Verdict::Present && o.switch_ops == 3, "three-string fragment not Present");
  }
  const std::set<std::string> kept = strings_of(surviving(expand(parse_dsl(kFourStrings).expr, 4), frag));
  c.require(kept == std::set<std::string>{"0010", "0000"}, "survivor set mismatch");
  c.detail << "fragment Present over 100 seeds; survivors {0000, 0010}";
}

// 3. DAG evaluation equals expansion evaluation.
void oracle_equivalence(Check& c) {
  fixtures::ExprGenerator gen(3);
  std::mt19937_64 rng(33);
  std::uint64_t cases = 0;
  for (int i = 0; i < 500 && c.ok; ++i) {
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 12);
    const Expr e = gen.factored(m);
    const Expansion x = expand(e, m);
    c.require(!x.non_canonical(), "generator produced non-canonical expr");
    ReferenceSystem sys(m, i % 2 ? RtwScheme::Asymmetric : RtwScheme::Symmetric, rng());
    Evaluator ev(e, sys);
    for (int k = 0; k < 100; ++k) {
      const std::uint64_t t = rng();
      const SwitchState s = random_switches(rng, m);
      c.require(ev.eval(s, t) == eval_via_expansion(x, sys, s, t), "mismatch at expr " + std::to_string(i));
      ++cases;
    }
  }
  c.detail << cases << " (expr, clock, switches) cases bit-exact";
}

// 4. Full-string verdicts equal oracle membership.
void zero_error_search(Check& c) {
  fixtures::ExprGenerator gen(4);
  std::mt19937_64 rng(44);
  int pairs = 0, present = 0;
  while (pairs < 10000 && c.ok) {
    const std::uint32_t m = 4 + static_cast<std::uint32_t>(rng() % 9);
    const Expr e = (pairs % 2) ? gen.factored(m) : gen.sparse_sum(m, 1 + rng() % 16);
    const Expansion x = expand(e, m);
    if (x.empty()) continue;
    const Pattern q =
        rng() % 2 ? pattern_of(x.entries()[rng() % x.size()].monomial, m) : gen.random_pattern(m);
    ReferenceSystem sys(m, RtwScheme::Asymmetric, rng());
    const SearchOutcome o = full_string_search(e, sys, q, {rng() % 100000, kDefaultMaxWait});
    const bool expected = member(x, q) != 0;
    c.require((o.verdict == Verdict::Present) == expected, "verdict mismatch for " + q.to_string());
    present += expected;
    ++pairs;
  }
  c.detail << pairs << " pairs, " << present << " members, all verdicts match";
}

// 5. Two-bit entangled class discrimination.
void bell_discrimination(Check& c) {
  const std::pair<const char*, BellClass> cases[] = {
      {"bits 2; R1_0*R2_1 + R1_1*R2_0", BellClass::S01_10}, {"bits 2; R1_0*R2_0 + R1_1*R2_1", BellClass::S00_11},
      {"bits 2; R1_0*R2_0", BellClass::S00},                {"bits 2; R1_0*R2_1", BellClass::S01},
      {"bits 2; R1_1*R2_0", BellClass::S10},                {"bits 2; R1_1*R2_1", BellClass::S11}};
  int runs = 0;
  for (const auto& [text, expected] : cases) {
    const Expr e = parse_dsl(text).expr;
    for (auto probe : {PartnerProbe::GroundZero, PartnerProbe::GroundOne}) {
      for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        ReferenceSystem sys(2, RtwScheme::Asymmetric, split_seed(seed, 5));
        EntangleOptions opts;
        opts.probe = probe;
        opts.t_start = seed;
        c.require(entangle_discriminate(e, sys, opts).bell_class == expected, std::string("wrong class for ") + text);
        ++runs;
      }
    }
  }
  c.detail << runs << " runs, 6 classes x 2 probe orders, all correct";
}

// 6. Fragment false-negative rate on two equal-magnitude survivors.
void error_scaling(Check& c) {
  const Expr e = parse_dsl("bits 4; R1_0*R2_0*R3_1*R4_1 + R1_0*R2_1*R3_0*R4_1 + R1_0*R2_0*R3_0*R4_0").expr;
  const Expansion x = expand(e, 4);
  const Pattern frag = Pattern::fragments("4=1", 4);
  const Pattern empty_frag = Pattern::fragments("1=1", 4);
  const Expansion kept = surviving(x, frag);
  const int trials = 100000;
  std::ostringstream rates;
  for (std::uint32_t tau = 1; tau <= 8; ++tau) {
    int misses = 0;
    for (int i = 0; i < trials; ++i) {
      ReferenceSystem sys(4, RtwScheme::Asymmetric, split_seed(1000 + tau, i));
      const SearchOutcome o = fragment_search(e, sys, frag, tau);
      if (o.verdict == Verdict::Present) {
        const Dyadic exact = eval_via_expansion(kept, sys, SwitchState(4), *o.witness_clock);
        c.require(!o.witness_amplitude.is_zero() && o.witness_amplitude == exact, "Present witness is wrong");
      } else {
        ++misses;
      }
      if (i % 10 == 0) {
        c.require(fragment_search(e, sys, empty_frag, tau).verdict != Verdict::Present,
                  "Present on a fragment with no survivors");
      }
    }
    const double p = std::ldexp(1.0, -static_cast<int>(tau));
    const double sigma = std::sqrt(p * (1 - p) / trials);
    const double rate = static_cast<double>(misses) / trials;
    c.require(std::abs(rate - p) <= 3 * sigma, "tau=" + std::to_string(tau) + " rate " + std::to_string(rate));
    rates << (tau > 1 ? " " : "") << std::abs(rate - p) / sigma;
  }
  c.detail << "|rate-2^-tau|/sigma for tau=1..8:" << " " << rates.str();
}

// 7. Asymmetric universe liveness, bound and all-Low magnitude.
void universe_properties(Check& c) {
  const std::uint32_t m = 10;
  ReferenceSystem sys(m, RtwScheme::Asymmetric, 7);
  Evaluator u(build_universe(m), sys);
  Evaluator low(build_product_string(Pattern::full(std::string(m, '0'))), sys);
  Dyadic bound(1);
  for (std::uint32_t i = 0; i < m; ++i) bound *= Dyadic(3, -1);
  Dyadic largest(0);
  for (std::uint64_t t = 0; t < 100000 && c.ok; ++t) {
    const Dyadic v = u.eval(t);
    c.require(!v.is_zero(), "zero universe at t=" + std::to_string(t));
    c.require(v.abs() <= bound, "bound exceeded at t=" + std::to_string(t));
    c.require(low.eval(t).abs() == Dyadic::pow2(-static_cast<std::int64_t>(m)), "all-Low magnitude wrong");
    if (largest < v.abs()) largest = v.abs();
  }
  c.detail << "1e5 clocks live; max |U| = " << largest.to_double() << " <= " << bound.to_double();
}

// 8. Even/odd partition of the universe.
void even_odd_identity(Check& c) {
  for (std::uint32_t m = 1; m <= 10; ++m) {
    const Expansion odd = expand(build_universe(m) - build_even(m), m);
    bool ok = odd.size() == (1u << (m - 1)) && !odd.has_non_unit_coefficients();
    for (const auto& x : odd.entries()) ok = ok && x.monomial.mask == (1ULL << m) - 1 && (x.monomial.values & 1);
    c.require(ok, "odd expansion wrong at M=" + std::to_string(m));
    ReferenceSystem sys(m, RtwScheme::Asymmetric, 80 + m);
    Evaluator u(build_universe(m), sys), even(build_even(m), sys), oddev(build_odd(m), sys);
    for (std::uint64_t t = 0; t < 10000; ++t) {
      c.require(even.eval(t) + oddev.eval(t) == u.eval(t), "identity fails at M=" + std::to_string(m));
    }
  }
  c.detail << "M=1..10 expansions exact; 1e4 clocks per M bit-exact";
}

// 9. Phonebook lookups.
void phonebook(Check& c) {
  std::mt19937_64 rng(9);
  PhonebookSpec fwd{8, 8, {}};
  for (std::uint64_t n = 0; n < 256; ++n) fwd.entries.push_back({n, rng() & 0xff});
  std::shuffle(fwd.entries.begin(), fwd.entries.end(), rng);
  const PhonebookExpr fpb = build_phonebook(fwd);
  ReferenceSystem fsys(16, RtwScheme::Asymmetric, 90);
  Evaluator fev(fpb.expr, fsys);
  SwitchState board(16);
  for (int i = 0; i < 1000; ++i) {
    const auto& entry = fwd.entries[rng() % fwd.entries.size()];
    const LookupResult r = lookup(fev, board, fwd, entry.name, {rng() % 100000, kDefaultMaxWait});
    c.require(r.value == entry.number && r.switch_ops == 24, "forward lookup wrong");
  }

  std::vector<std::uint64_t> names(256), numbers(256);
  for (std::uint64_t i = 0; i < 256; ++i) names[i] = numbers[i] = i;
  std::shuffle(names.begin(), names.end(), rng);
  std::shuffle(numbers.begin(), numbers.end(), rng);
  PhonebookSpec inv{8, 8, {}};
  for (int i = 0; i < 64; ++i) inv.entries.push_back({names[i], numbers[i]});
  const PhonebookExpr ipb = build_phonebook(inv);
  ReferenceSystem isys(16, RtwScheme::Asymmetric, 91);
  Evaluator iev(ipb.expr, isys);
  const std::uint32_t inverse_cost = switching_cost(8, 8, LookupDirection::Inverse);
  for (const auto& entry : inv.entries) {
    const LookupResult r = inverse_lookup(iev, board, inv, entry.number, {rng() % 100000, kDefaultMaxWait});
    c.require(r.value == entry.name && r.switch_ops == inverse_cost, "inverse lookup wrong");
  }
  c.detail << "1000 forward lookups at 24 ops, 64 inverse lookups at " << inverse_cost << " ops";
}

// 10. Zero-amplitude fraction and waiting-time decay.
void zero_statistics(Check& c) {
  const std::uint64_t clocks = 1000000;
  std::ostringstream out;
  for (std::uint32_t m : {1u, 2u, 4u}) {
    ReferenceSystem sys(m, RtwScheme::Symmetric, 100 + m);
    const ZeroStats z = run_zero_stats(build_universe(m), sys, clocks);
    const double p = 1.0 - std::ldexp(1.0, -static_cast<int>(m));
    const double sigma = std::sqrt(p * (1 - p) / clocks);
    c.require(std::abs(z.zero_fraction - p) <= 3 * sigma, "zero fraction off at M=" + std::to_string(m));
    out << "M=" << m << " " << z.zero_fraction << " ";
    if (m == 1) {
      const double slope = fit_log_slope(z.run_lengths, 100);
      c.require(std::abs(slope + std::log(2.0)) <= 0.1 * std::log(2.0), "slope " + std::to_string(slope));
      out << "(slope " << slope << ") ";
    }
    ReferenceSystem asym(m, RtwScheme::Asymmetric, 200 + m);
    c.require(run_zero_stats(build_universe(m), asym, clocks).zero_clocks == 0, "asymmetric zero clock");
  }
  c.detail << out.str() << "asym 0";
}

// 11. Cross-correlation of distinct product strings.
void cross_correlation(Check& c) {
  std::mt19937_64 rng(11);
  fixtures::ExprGenerator gen(11);
  const std::uint64_t clocks = 1000000;
  const double bound = 5.0 / std::sqrt(static_cast<double>(clocks));
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % 7);
    const Pattern a = gen.random_pattern(m);
    Pattern b = gen.random_pattern(m);
    while (b == a) b = gen.random_pattern(m);
    ReferenceSystem sys(m, i % 2 ? RtwScheme::Asymmetric : RtwScheme::Symmetric, rng());
    const double r = run_crosscorr(build_product_string(a), build_product_string(b), sys, clocks);
    worst = std::max(worst, std::abs(r));
    c.require(std::abs(r) <= bound, a.to_string() + " vs " + b.to_string() + ": " + std::to_string(r));
  }
  c.detail << "max |rho| = " << worst << " <= " << bound;
}

// 12. Speedup report through the CLI.
void speedup(Check& c) {
  for (std::uint32_t m : {4u, 10u, 20u}) {
    const CliRun r = run_cli("speedup --M " + std::to_string(m) + " --output json");
    c.require(r.exit_code == 0, "speedup exit " + std::to_string(r.exit_code));
    if (!c.ok) return;
    const auto rec = nlohmann::json::parse(r.out).at("records")[0];
    c.require(rec.at("classical_ratio").at("formula") == "2^M/M", "classical formula");
    c.require(rec.at("grover_ratio").at("formula") == "2^M/M^1.5", "grover formula");
    c.require(rec.at("photon_bound").at("formula") == "M*2^M", "photon formula");
    const double size = std::ldexp(1.0, static_cast<int>(m));
    c.require(rec.at("classical_ratio").at("value").get<double>() == size / m, "classical value");
    c.require(rec.at("photon_bound").at("value").get<double>() == m * size, "photon value");
    if (m == 4) c.require(rec.at("classical_ratio").at("value").get<double>() == 4.0, "M=4 ratio != 4");
  }
  c.detail << "M=4 classical ratio 4; formulas echoed for M=4,10,20";
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "full-string search examples", 1, full_string_examples},
      {2, "fragment search examples", 1, fragment_examples},
      {3, "oracle equivalence", 120, oracle_equivalence},
      {4, "zero-error full-string search", 120, zero_error_search},
      {5, "entangled class discrimination", 60, bell_discrimination},
      {6, "fragment error scaling", 300, error_scaling},
      {7, "asymmetric universe properties", 30, universe_properties},
      {8, "even/odd identity", 30, even_odd_identity},
      {9, "phonebook lookups", 60, phonebook},
      {10, "zero-amplitude statistics", 60, zero_statistics},
      {11, "cross-correlation", 60, cross_correlation},
      {12, "speedup report", 1, speedup},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(secs <= cr.budget_s, "over time budget");
    failed += !c.ok;
    std::printf("[%s] %2d %-32s %8.2fs (budget %gs)  %s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.budget_s, (c.ok ? c.detail.str() : c.failure).c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
