#include "inbl/oracle.hpp"

#include <stdexcept>
#include <unordered_map>

#include "inbl/errors.hpp"
#include "inbl/mix.hpp"

namespace inbl {

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return mix64(m.mask * 0x9e3779b97f4a7c15ULL ^ m.values); }
};

using Table = std::unordered_map<Monomial, std::int64_t, MonomialHash>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OracleLimitExceeded("expansion coefficient overflow");
  return r;
}

void accumulate(Table& table, const Monomial& m, std::int64_t c) {
  auto& slot = table[m];
  if (__builtin_add_overflow(slot, c, &slot)) throw OracleLimitExceeded("expansion coefficient overflow");
}

std::vector<ExpansionEntry> finish(const Table& table) {
  std::vector<ExpansionEntry> out;
  out.reserve(table.size());
  for (const auto& [m, c] : table) {
    if (c != 0) out.push_back({m, c});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.monomial < b.monomial; });
  return out;
}

class Expander {
 public:
  const std::vector<ExpansionEntry>& run(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    std::vector<ExpansionEntry> result;
    switch (e.kind()) {
      case Expr::Kind::Ref: {
        const std::uint64_t bit = 1ULL << (e.wire().bit_index - 1);
        result.push_back({{bit, e.wire().bit_value ? bit : 0}, 1});
        break;
      }
      case Expr::Kind::Sum: {
        Table table;
        for (const auto& t : e.terms()) {
          for (const auto& entry : run(t.expr)) accumulate(table, entry.monomial, checked_mul(t.coefficient, entry.coefficient));
        }
        result = finish(table);
        break;
      }
      case Expr::Kind::Product: {
        std::vector<ExpansionEntry> acc{{{0, 0}, 1}};
        for (const auto& f : e.factors()) {
          const auto& rhs = run(f);
          Table table;
          for (const auto& a : acc) {
            for (const auto& b : rhs) {
              const std::uint64_t common = a.monomial.mask & b.monomial.mask;
              if (common != 0) {
                // Repeated bit index: conflicting values give no string,
                // equal values square a wire. Both are dropped and flagged.
                non_canonical_ = true;
                continue;
              }
              accumulate(table, {a.monomial.mask | b.monomial.mask, a.monomial.values | b.monomial.values},
                         checked_mul(a.coefficient, b.coefficient));
            }
          }
          acc = finish(table);
        }
        result = std::move(acc);
        break;
      }
    }
    return memo_.emplace(e.id(), std::move(result)).first->second;
  }

  bool non_canonical() const { return non_canonical_; }

 private:
  std::unordered_map<const Node*, std::vector<ExpansionEntry>> memo_;
  bool non_canonical_ = false;
};

}  // namespace

Expansion::Expansion(std::uint32_t num_bits, std::vector<ExpansionEntry> entries, bool non_canonical)
    : num_bits_(num_bits), entries_(std::move(entries)), non_canonical_(non_canonical) {}

bool Expansion::all_full() const {
  const std::uint64_t full = num_bits_ >= 64 ? ~0ULL : (1ULL << num_bits_) - 1;
  return std::all_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.monomial.mask == full; });
}

bool Expansion::has_non_unit_coefficients() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.coefficient != 1; });
}

std::string Expansion::dump() const {
  std::vector<std::pair<std::string, std::int64_t>> lines;
  for (const auto& e : entries_) lines.emplace_back(pattern_text(e.monomial, num_bits_), e.coefficient);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [p, c] : lines) out += p + " " + std::to_string(c) + "\n";
  return out;
}

Monomial monomial_of(const Pattern& pattern) {
  Monomial m;
  for (const auto& w : pattern.wires()) {
    const std::uint64_t bit = 1ULL << (w.bit_index - 1);
    m.mask |= bit;
    if (w.bit_value) m.values |= bit;
  }
  return m;
}

Pattern pattern_of(const Monomial& m, std::uint32_t num_bits) {
  Pattern p(num_bits);
  for (std::uint32_t k = 1; k <= num_bits; ++k) {
    const std::uint64_t bit = 1ULL << (k - 1);
    if (m.mask & bit) p.assign(k, (m.values & bit) ? 1 : 0);
  }
  return p;
}

std::string pattern_text(const Monomial& m, std::uint32_t num_bits) {
  std::string s(num_bits, 'x');
  for (std::uint32_t k = 0; k < num_bits; ++k) {
    if (m.mask & (1ULL << k)) s[k] = (m.values & (1ULL << k)) ? '1' : '0';
  }
  return s;
}

Expansion expand(const Expr& expr, std::uint32_t num_bits, std::uint32_t limit) {
  if (num_bits > limit || num_bits > 64) {
    throw OracleLimitExceeded("oracle expansion of a " + std::to_string(num_bits) + "-bit system exceeds the limit of " +
                              std::to_string(std::min<std::uint32_t>(limit, 64)) + " bits");
  }
  if (expr.max_bit() > num_bits) {
    throw std::out_of_range("expression references bit " + std::to_string(expr.max_bit()) + " beyond " +
                            std::to_string(num_bits));
  }
  Expander ex;
  auto entries = ex.run(expr);
  return Expansion(num_bits, std::move(entries), ex.non_canonical());
}

std::int64_t member(const Expansion& exp, const Pattern& pattern) {
  const Monomial key = monomial_of(pattern);
  const auto& es = exp.entries();
  auto it = std::lower_bound(es.begin(), es.end(), key, [](const auto& e, const Monomial& k) { return e.monomial < k; });
  return (it != es.end() && it->monomial == key) ? it->coefficient : 0;
}

Expansion surviving(const Expansion& exp, const Pattern& pattern) {
  const Monomial sel = monomial_of(pattern);
  std::vector<ExpansionEntry> kept;
  for (const auto& e : exp.entries()) {
    // A monomial survives grounding of the inverse wires iff it carries every
    // assigned value; a monomial not touching an assigned bit uses no
    // grounded wire of that bit and survives as well.
    const std::uint64_t shared = e.monomial.mask & sel.mask;
    if (((e.monomial.values ^ sel.values) & shared) == 0) kept.push_back(e);
  }
  return Expansion(exp.num_bits(), std::move(kept), exp.non_canonical());
}

Dyadic eval_via_expansion(const Expansion& exp, const ReferenceSystem& system, const SwitchState& switches,
                          std::uint64_t t) {
  const std::uint32_t m = exp.num_bits();
  if (m > system.num_bits()) throw std::out_of_range("expansion wider than the reference system");
  std::vector<Dyadic> values(2 * static_cast<std::size_t>(m));
  for (std::uint32_t k = 1; k <= m; ++k) {
    for (std::uint8_t v = 0; v <= 1; ++v) {
      const WireId w{k, v};
      values[w.slot()] = switches.is_grounded(w) ? Dyadic() : system.wire_value(w, t);
    }
  }
  Dyadic total;
  for (const auto& e : exp.entries()) {
    Dyadic term(e.coefficient);
    for (std::uint32_t k = 1; k <= m && !term.is_zero(); ++k) {
      const std::uint64_t bit = 1ULL << (k - 1);
      if (e.monomial.mask & bit) term *= values[WireId{k, static_cast<std::uint8_t>((e.monomial.values & bit) ? 1 : 0)}.slot()];
    }
    total += term;
  }
  return total;
}

std::string to_string(BellClass c) {
  switch (c) {
    case BellClass::S01_10: return "S01+10";
    case BellClass::S00_11: return "S00+11";
    case BellClass::S00: return "S00";
    case BellClass::S01: return "S01";
    case BellClass::S10: return "S10";
    case BellClass::S11: return "S11";
  }
  return "?";
}

std::optional<BellClass> legal_bell_class(const Expansion& exp) {
  if (exp.num_bits() != 2 || exp.empty() || exp.size() > 2 || !exp.all_full() || exp.has_non_unit_coefficients()) {
    return std::nullopt;
  }
  std::vector<std::string> strings;
  for (const auto& e : exp.entries()) strings.push_back(pattern_text(e.monomial, 2));
  std::sort(strings.begin(), strings.end());
  if (strings.size() == 1) {
    if (strings[0] == "00") return BellClass::S00;
    if (strings[0] == "01") return BellClass::S01;
    if (strings[0] == "10") return BellClass::S10;
    return BellClass::S11;
  }
  if (strings == std::vector<std::string>{"01", "10"}) return BellClass::S01_10;
  if (strings == std::vector<std::string>{"00", "11"}) return BellClass::S00_11;
  return std::nullopt;
}

}  // namespace inbl
