// Command-line front end: runs search protocols on .nbl superposition files
// and phonebook files, and the statistical experiments, emitting JSON reports.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inbl/collapse.hpp"
#include "inbl/dsl.hpp"
#include "inbl/errors.hpp"
#include "inbl/experiments.hpp"
#include "inbl/mix.hpp"
#include "inbl/oracle.hpp"
#include "inbl/phonebook.hpp"
#include "inbl/report.hpp"

using nlohmann::json;
using namespace inbl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAbsent = 1;
constexpr int kExitError = 2;

struct Common {
  std::optional<std::uint32_t> bits;
  std::uint64_t seed = 1;
  std::string scheme = "asym";
  std::string flip_prob = "1/2";
  std::uint32_t tau = kDefaultTau;
  std::uint64_t max_wait = kDefaultMaxWait;
  std::uint64_t t_start = 0;
  std::uint32_t trials = 1;
  bool oracle_check = false;
  std::string output = "json";
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RtwScheme parse_scheme(const std::string& s) {
  if (s == "asym") return RtwScheme::Asymmetric;
  if (s == "sym") return RtwScheme::Symmetric;
  throw std::invalid_argument("scheme must be asym or sym");
}

std::uint64_t trial_seed(const Common& c, std::uint32_t trial) { return trial == 0 ? c.seed : split_seed(c.seed, trial); }

ReferenceSystem make_system(const Common& c, std::uint32_t bits, std::uint32_t trial) {
  return ReferenceSystem(bits, parse_scheme(c.scheme), trial_seed(c, trial), FlipProb::parse(c.flip_prob));
}

ExperimentReport start_report(const std::string& command, const Common& c) {
  ExperimentReport r;
  r.command = command;
  r.seed = c.seed;
  r.parameters = json{{"scheme", c.scheme},   {"flip_prob", FlipProb::parse(c.flip_prob).to_string()},
                      {"tau", c.tau},         {"max_wait", c.max_wait},
                      {"t_start", c.t_start}, {"trials", c.trials},
                      {"oracle_check", c.oracle_check}};
  return r;
}

void print_table(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_table(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) print_table(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(ExperimentReport& report, const Common& c, std::chrono::steady_clock::time_point started) {
  report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  std::ostringstream os;
  if (c.output == "table") {
    print_table(report.to_json(), "", os);
  } else {
    os << report.to_json().dump(2) << "\n";
  }
  if (c.out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(c.out_path);
    if (!out) throw std::runtime_error("cannot write '" + c.out_path + "'");
    out << os.str();
  }
}

int run_search(const Common& c, const std::string& file, const std::string& string_query,
               const std::string& fragments) {
  const auto started = std::chrono::steady_clock::now();
  const DslDocument doc = parse_dsl(read_file(file), c.bits);
  if (string_query.empty() == fragments.empty()) {
    throw std::invalid_argument("search needs exactly one of --string or --fragments");
  }
  const bool full = !string_query.empty();
  const Pattern pattern = full ? Pattern::full(string_query) : Pattern::fragments(fragments, doc.num_bits);
  if (pattern.num_bits() != doc.num_bits) {
    throw std::invalid_argument("query has " + std::to_string(pattern.num_bits()) + " bits, superposition has " +
                                std::to_string(doc.num_bits));
  }

  ExperimentReport report = start_report("search", c);
  report.parameters["file"] = file;
  report.parameters["bits"] = doc.num_bits;
  report.parameters["query"] = pattern.to_string();
  report.parameters["mode"] = full ? "string" : "fragments";

  std::optional<Expansion> oracle;
  if (c.oracle_check) oracle = expand(doc.expr, doc.num_bits);

  bool all_present = true;
  std::uint64_t present = 0;
  for (std::uint32_t trial = 0; trial < c.trials; ++trial) {
    const ReferenceSystem system = make_system(c, doc.num_bits, trial);
    const SearchOptions opts{c.t_start, c.max_wait};
    SearchOutcome o = full ? full_string_search(doc.expr, system, pattern, opts)
                           : fragment_search(doc.expr, system, pattern, c.tau, opts);
    json rec = to_json(o);
    rec["trial"] = trial;
    rec["seed"] = trial_seed(c, trial);
    if (oracle) {
      const Expansion survivors = surviving(*oracle, pattern);
      const bool oracle_present = !survivors.empty();
      if (o.verdict == Verdict::AbsentWithBound && !oracle_present) {
        o.verdict = Verdict::Absent;
        rec["verdict"] = to_string(o.verdict);
      }
      rec["oracle"] = json{{"present", oracle_present},
                           {"survivors", survivors.size()},
                           {"non_canonical", oracle->non_canonical()},
                           {"agrees", oracle_present == (o.verdict == Verdict::Present)}};
    }
    if (o.verdict == Verdict::Present) {
      ++present;
    } else {
      all_present = false;
    }
    report.records.push_back(rec);
  }
  report.summary = json{{"present", present}, {"trials", c.trials}};
  emit(report, c, started);
  return all_present ? kExitOk : kExitAbsent;
}

int run_entangle(const Common& c, const std::string& file, const std::string& probe) {
  const auto started = std::chrono::steady_clock::now();
  const DslDocument doc = parse_dsl(read_file(file), c.bits);
  ExperimentReport report = start_report("entangle", c);
  report.parameters["file"] = file;
  report.parameters["probe"] = probe;
  EntangleOptions opts{c.t_start, c.max_wait, probe == "one" ? PartnerProbe::GroundOne : PartnerProbe::GroundZero};
  std::optional<BellClass> oracle_class;
  if (c.oracle_check) oracle_class = legal_bell_class(expand(doc.expr, doc.num_bits));
  std::map<std::string, std::uint64_t> counts;
  for (std::uint32_t trial = 0; trial < c.trials; ++trial) {
    const ReferenceSystem system = make_system(c, doc.num_bits, trial);
    const EntangleResult r = entangle_discriminate(doc.expr, system, opts);
    json rec = to_json(r);
    rec["trial"] = trial;
    rec["seed"] = trial_seed(c, trial);
    if (c.oracle_check) {
      rec["oracle"] = json{{"class", oracle_class ? to_string(*oracle_class) : "Illegal"},
                           {"agrees", oracle_class && *oracle_class == r.bell_class}};
    }
    ++counts[to_string(r.bell_class)];
    report.records.push_back(rec);
  }
  report.summary = json{{"classes", counts}};
  emit(report, c, started);
  return kExitOk;
}

int run_lookup(const Common& c, const std::string& file, const std::string& key, bool forward) {
  const auto started = std::chrono::steady_clock::now();
  const PhonebookSpec spec = parse_phonebook(read_file(file));
  const PhonebookExpr pb = build_phonebook(spec);
  ExperimentReport report = start_report(forward ? "lookup" : "inverse", c);
  report.parameters["file"] = file;
  report.parameters[forward ? "name" : "number"] = key;
  report.parameters["N"] = spec.name_bits;
  report.parameters["S"] = spec.number_bits;
  const std::uint32_t key_width = forward ? spec.name_bits : spec.number_bits;
  const std::uint32_t value_width = forward ? spec.number_bits : spec.name_bits;
  const std::uint64_t key_value = parse_bits(key, key_width);
  const SearchOptions opts{c.t_start, c.max_wait};
  for (std::uint32_t trial = 0; trial < c.trials; ++trial) {
    const ReferenceSystem system = make_system(c, spec.total_bits(), trial);
    const LookupResult r =
        forward ? lookup(pb, system, key_value, opts) : inverse_lookup(pb, system, key_value, opts);
    json rec = to_json(r, value_width);
    rec["trial"] = trial;
    rec["seed"] = trial_seed(c, trial);
    if (c.oracle_check) {
      std::optional<std::uint64_t> expected;
      for (const auto& e : spec.entries) {
        if ((forward ? e.name : e.number) == key_value) expected = forward ? e.number : e.name;
      }
      rec["oracle"] = json{{"value", expected ? json(format_bits(*expected, value_width)) : json(nullptr)},
                           {"agrees", expected && *expected == r.value}};
    }
    report.records.push_back(rec);
  }
  report.summary = json{{"expected_switch_ops", switching_cost(spec.name_bits, spec.number_bits,
                                                               forward ? LookupDirection::Forward
                                                                       : LookupDirection::Inverse)}};
  emit(report, c, started);
  return kExitOk;
}

int run_zero(const Common& c, const std::string& file, std::uint64_t clocks, std::uint64_t min_count) {
  const auto started = std::chrono::steady_clock::now();
  const DslDocument doc = parse_dsl(read_file(file), c.bits);
  ExperimentReport report = start_report("zero-stats", c);
  report.parameters["file"] = file;
  report.parameters["clocks"] = clocks;
  double zero_total = 0;
  for (std::uint32_t trial = 0; trial < c.trials; ++trial) {
    const ReferenceSystem system = make_system(c, doc.num_bits, trial);
    const ZeroStats z = run_zero_stats(doc.expr, system, clocks, c.t_start);
    json rec = to_json(z);
    rec["trial"] = trial;
    rec["seed"] = trial_seed(c, trial);
    try {
      rec["log_slope"] = fit_log_slope(z.run_lengths, min_count);
    } catch (const std::domain_error&) {
      rec["log_slope"] = nullptr;
    }
    zero_total += z.zero_fraction;
    report.records.push_back(rec);
  }
  report.summary = json{{"mean_zero_fraction", zero_total / c.trials}};
  emit(report, c, started);
  return kExitOk;
}

int run_cross(const Common& c, const std::string& file_a, const std::string& file_b, std::uint64_t clocks) {
  const auto started = std::chrono::steady_clock::now();
  const DslDocument a = parse_dsl(read_file(file_a), c.bits);
  const DslDocument b = parse_dsl(read_file(file_b), c.bits);
  const std::uint32_t bits = std::max(a.num_bits, b.num_bits);
  ExperimentReport report = start_report("crosscorr", c);
  report.parameters["files"] = {file_a, file_b};
  report.parameters["clocks"] = clocks;
  const double bound = 5.0 / std::sqrt(static_cast<double>(clocks));
  for (std::uint32_t trial = 0; trial < c.trials; ++trial) {
    const ReferenceSystem system = make_system(c, bits, trial);
    const double rho = run_crosscorr(a.expr, b.expr, system, clocks, c.t_start);
    report.records.push_back(json{{"trial", trial}, {"seed", trial_seed(c, trial)}, {"estimate", rho}});
  }
  report.summary = json{{"bound_5_over_sqrt_T", bound}};
  emit(report, c, started);
  return kExitOk;
}

int run_speedup(const Common& c, std::uint32_t bits, std::uint32_t names, std::uint32_t numbers) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentReport report = start_report("speedup", c);
  report.parameters["M"] = bits;
  report.parameters["N"] = names;
  report.parameters["S"] = numbers;
  report.records.push_back(to_json(speedup_report(bits, names, numbers)));
  emit(report, c, started);
  return kExitOk;
}

int run_expand(const Common& c, const std::string& file, std::uint32_t limit) {
  const auto started = std::chrono::steady_clock::now();
  const DslDocument doc = parse_dsl(read_file(file), c.bits);
  const Expansion e = expand(doc.expr, doc.num_bits, limit);
  if (c.output == "text") {
    std::cout << e.dump();
    return kExitOk;
  }
  ExperimentReport report = start_report("expand", c);
  report.parameters["file"] = file;
  report.parameters["canonical"] = format_expr(doc.expr);
  report.records.push_back(to_json(e));
  report.summary = json{{"strings", e.size()}};
  emit(report, c, started);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instantaneous noise-based logic simulator"};
  app.require_subcommand(1);

  Common c;
  if (const char* env = std::getenv("INBL_SEED")) c.seed = std::strtoull(env, nullptr, 0);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bits", c.bits, "System size when the file has no 'bits M;' header");
    sub->add_option("--seed", c.seed, "Master seed (default 1, or $INBL_SEED)");
    sub->add_option("--scheme", c.scheme, "Telegraph amplitudes: asym or sym")->check(CLI::IsMember({"asym", "sym"}));
    sub->add_option("--flip-prob", c.flip_prob, "Per-clock sign flip probability, e.g. 1/2 or 0.1");
    sub->add_option("--tau", c.tau, "Fragment-search observation clocks")->check(CLI::PositiveNumber);
    sub->add_option("--max-wait", c.max_wait, "Clocks to wait for a nonzero superposition");
    sub->add_option("--t-start", c.t_start, "First clock index");
    sub->add_option("--trials", c.trials, "Independent trials with split seeds")->check(CLI::PositiveNumber);
    sub->add_flag("--oracle-check", c.oracle_check, "Cross-check every verdict against brute-force expansion");
    sub->add_option("--output", c.output, "json, table, or text (expand only)")
        ->check(CLI::IsMember({"json", "table", "text"}));
    sub->add_option("--out", c.out_path, "Write the report to a file instead of stdout");
  };

  std::string file, file_b, string_query, fragments, probe = "zero", key;
  std::uint64_t clocks = 100000, min_count = 100;
  std::uint32_t speed_bits = 4, speed_names = 8, speed_numbers = 8, limit = kDefaultOracleLimit;

  auto* search = app.add_subcommand("search", "Full-string or fragment search on a superposition file");
  search->add_option("file", file, "Superposition (.nbl)")->required();
  search->add_option("--string", string_query, "Full M-bit query, bit 1 first");
  search->add_option("--fragments", fragments, "Partial query, e.g. 1=0,2=0,4=0");
  add_common(search);

  auto* entangle = app.add_subcommand("entangle", "Classify a two-bit entangled superposition");
  entangle->add_option("file", file, "Superposition (.nbl)")->required();
  entangle->add_option("--probe", probe, "Bit-2 wire grounded in the partner step")
      ->check(CLI::IsMember({"zero", "one"}));
  add_common(entangle);

  auto* lookup_cmd = app.add_subcommand("lookup", "Forward phonebook lookup");
  lookup_cmd->add_option("file", file, "Phonebook file")->required();
  lookup_cmd->add_option("--name", key, "Name bit string")->required();
  add_common(lookup_cmd);

  auto* inverse_cmd = app.add_subcommand("inverse", "Inverse phonebook lookup");
  inverse_cmd->add_option("file", file, "Phonebook file")->required();
  inverse_cmd->add_option("--number", key, "Number bit string")->required();
  add_common(inverse_cmd);

  auto* zero = app.add_subcommand("zero-stats", "Zero-amplitude fraction and waiting-time histogram");
  zero->add_option("file", file, "Superposition (.nbl)")->required();
  zero->add_option("--clocks", clocks, "Clocks to observe");
  zero->add_option("--min-count", min_count, "Smallest histogram count used in the slope fit");
  add_common(zero);

  auto* cross = app.add_subcommand("crosscorr", "Normalized cross-correlation of two superpositions");
  cross->add_option("file_a", file, "First superposition")->required();
  cross->add_option("file_b", file_b, "Second superposition")->required();
  cross->add_option("--clocks", clocks, "Clocks to observe");
  add_common(cross);

  auto* speed = app.add_subcommand("speedup", "Complexity comparison figures");
  speed->add_option("--M", speed_bits, "Noise-bits of the searched superposition");
  speed->add_option("--N", speed_names, "Name bits of a phonebook");
  speed->add_option("--S", speed_numbers, "Number bits of a phonebook");
  add_common(speed);

  auto* expand_cmd = app.add_subcommand("expand", "Dump the brute-force expansion of a superposition");
  expand_cmd->add_option("file", file, "Superposition (.nbl)")->required();
  expand_cmd->add_option("--limit", limit, "Largest system size the oracle accepts");
  add_common(expand_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*search) return run_search(c, file, string_query, fragments);
    if (*entangle) return run_entangle(c, file, probe);
    if (*lookup_cmd) return run_lookup(c, file, key, true);
    if (*inverse_cmd) return run_lookup(c, file, key, false);
    if (*zero) return run_zero(c, file, clocks, min_count);
    if (*cross) return run_cross(c, file, file_b, clocks);
    if (*speed) return run_speedup(c, speed_bits, speed_names, speed_numbers);
    if (*expand_cmd) return run_expand(c, file, limit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
