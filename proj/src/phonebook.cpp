#include "inbl/phonebook.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "inbl/errors.hpp"

namespace inbl {

namespace {

struct Field {
  std::uint32_t first_bit;  // 1-based bit index of the most significant digit
  std::uint32_t width;

  WireId wire(std::uint32_t digit, std::uint64_t value) const {
    const auto v = static_cast<std::uint8_t>((value >> (width - 1 - digit)) & 1);
    return {first_bit + digit, v};
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Expr field_string(Field f, std::uint64_t value) {
  std::vector<Expr> refs;
  for (std::uint32_t d = 0; d < f.width; ++d) refs.push_back(Expr::ref(f.wire(d, value)));
  return Expr::product(std::move(refs));
}

// Collapses onto the entry whose `key` field equals `key_value`, then probes
// every wire of the `target` field one at a time within the same clock.
LookupResult collapse_and_probe(Evaluator& ev, SwitchState& board, Field key, std::uint64_t key_value, Field target,
                                const SearchOptions& options, bool forward) {
  if (!board.all_live()) throw std::logic_error("lookup started on a switchboard with grounded wires");
  struct Guard {
    SwitchState& b;
    ~Guard() { b.restore_all(); }
  } guard{board};

  LookupResult out{};
  const std::uint64_t t = wait_for_live_clock(ev, options.t_start, options.max_wait);
  out.clock = t;
  out.trace.push_back({"live", t, ev.eval(board, t)});

  Dyadic survivor;
  for (std::uint32_t d = 0; d < key.width; ++d) {
    const WireId w = key.wire(d, key_value).inverse();
    board.ground(w);
    ++out.switch_ops;
    survivor = ev.eval(board, t);
    out.trace.push_back({"ground " + w.name(), t, survivor});
  }
  if (survivor.is_zero()) {
    const std::string text = format_bits(key_value, key.width);
    if (forward) throw NameAbsent("name " + text + " is not in the phonebook");
    throw NumberAbsent("number " + text + " is not in the phonebook");
  }

  std::uint64_t value = 0;
  for (std::uint32_t d = 0; d < target.width; ++d) {
    bool zeroed[2] = {false, false};
    for (std::uint8_t v = 0; v <= 1; ++v) {
      const WireId w{target.first_bit + d, v};
      board.ground(w);
      ++out.switch_ops;
      const Dyadic a = ev.eval(board, t);
      out.trace.push_back({"probe " + w.name(), t, a});
      zeroed[v] = a.is_zero();
      board.restore(w);
    }
    if (zeroed[0] == zeroed[1]) {
      throw std::logic_error("probe of digit " + std::to_string(d + 1) +
                             " is inconsistent: the collapsed signal is not a single string");
    }
    value = (value << 1) | (zeroed[1] ? 1u : 0u);
  }
  out.value = value;
  return out;
}

}  // namespace

std::string format_bits(std::uint64_t value, std::uint32_t width) {
  std::string s(width, '0');
  for (std::uint32_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1) s[i] = '1';
  }
  return s;
}

std::uint64_t parse_bits(const std::string& bits, std::uint32_t width) {
  if (bits.size() != width) {
    throw std::invalid_argument("'" + bits + "' has " + std::to_string(bits.size()) + " digits, expected " +
                                std::to_string(width));
  }
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("'" + bits + "' is not a bit string");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

void PhonebookSpec::validate() const {
  if (name_bits < 1 || number_bits < 1) throw std::invalid_argument("name and number widths must be at least 1");
  if (name_bits + number_bits > 64) throw std::invalid_argument("combined width exceeds 64 noise-bits");
  if (entries.empty()) throw std::invalid_argument("empty phonebook");
  std::set<std::uint64_t> names;
  for (const auto& e : entries) {
    if (name_bits < 64 && (e.name >> name_bits) != 0) {
      throw std::invalid_argument("name does not fit in " + std::to_string(name_bits) + " bits");
    }
    if (number_bits < 64 && (e.number >> number_bits) != 0) {
      throw std::invalid_argument("number does not fit in " + std::to_string(number_bits) + " bits");
    }
    if (!names.insert(e.name).second) {
      throw std::invalid_argument("duplicate name " + format_bits(e.name, name_bits));
    }
  }
}

bool PhonebookSpec::bijective() const {
  std::set<std::uint64_t> numbers;
  for (const auto& e : entries) numbers.insert(e.number);
  return numbers.size() == entries.size();
}

PhonebookSpec parse_phonebook(const std::string& text) {
  PhonebookSpec spec;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      unsigned n = 0;
      unsigned s = 0;
      char tail = 0;
      if (std::sscanf(line.c_str(), "names %u ; numbers %u %c", &n, &s, &tail) != 3 || tail != ';') {
        throw ParseError("expected header 'names N; numbers S;'", line_no, 1);
      }
      spec.name_bits = n;
      spec.number_bits = s;
      have_header = true;
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'name -> number'", line_no, 1);
    try {
      spec.entries.push_back({parse_bits(trim(line.substr(0, arrow)), spec.name_bits),
                              parse_bits(trim(line.substr(arrow + 2)), spec.number_bits)});
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  if (!have_header) throw ParseError("missing header 'names N; numbers S;'", line_no, 1);
  spec.validate();
  return spec;
}

PhonebookExpr build_phonebook(const PhonebookSpec& spec) {
  spec.validate();
  const Field names{1, spec.name_bits};
  const Field numbers{spec.name_bits + 1, spec.number_bits};
  std::vector<Expr::Term> terms;
  for (const auto& e : spec.entries) {
    terms.push_back({1, Expr::product({field_string(names, e.name), field_string(numbers, e.number)})});
  }
  return {Expr::sum(std::move(terms)), spec};
}

std::uint32_t switching_cost(std::uint32_t name_bits, std::uint32_t number_bits, LookupDirection direction) {
  return direction == LookupDirection::Forward ? name_bits + 2 * number_bits : number_bits + 2 * name_bits;
}

LookupResult lookup(Evaluator& ev, SwitchState& board, const PhonebookSpec& spec, std::uint64_t name,
                    const SearchOptions& options) {
  const Field names{1, spec.name_bits};
  const Field numbers{spec.name_bits + 1, spec.number_bits};
  if (spec.name_bits < 64 && (name >> spec.name_bits) != 0) throw std::invalid_argument("name wider than the book");
  return collapse_and_probe(ev, board, names, name, numbers, options, true);
}

LookupResult inverse_lookup(Evaluator& ev, SwitchState& board, const PhonebookSpec& spec, std::uint64_t number,
                            const SearchOptions& options) {
  if (!spec.bijective()) throw NotBijective("inverse lookup needs a one-to-one phonebook");
  const Field names{1, spec.name_bits};
  const Field numbers{spec.name_bits + 1, spec.number_bits};
  if (spec.number_bits < 64 && (number >> spec.number_bits) != 0) {
    throw std::invalid_argument("number wider than the book");
  }
  return collapse_and_probe(ev, board, numbers, number, names, options, false);
}

LookupResult lookup(const PhonebookExpr& pb, const ReferenceSystem& system, std::uint64_t name,
                    const SearchOptions& options) {
  Evaluator ev(pb.expr, system);
  SwitchState board(system.num_bits());
  return lookup(ev, board, pb.spec, name, options);
}

LookupResult inverse_lookup(const PhonebookExpr& pb, const ReferenceSystem& system, std::uint64_t number,
                            const SearchOptions& options) {
  if (!pb.spec.bijective()) throw NotBijective("inverse lookup needs a one-to-one phonebook");
  Evaluator ev(pb.expr, system);
  SwitchState board(system.num_bits());
  return inverse_lookup(ev, board, pb.spec, number, options);
}

}  // namespace inbl
