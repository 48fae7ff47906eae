#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inbl/dyadic.hpp"
#include "inbl/expr.hpp"
#include "inbl/reference_system.hpp"
#include "inbl/switch_state.hpp"

namespace inbl {

// A monomial over the reference wires: `mask` holds the bit indices it
// touches (bit k-1 for index k), `values` their bit values. A product-string
// of an M-bit system is a monomial whose mask covers all M bits.
struct Monomial {
  std::uint64_t mask = 0;
  std::uint64_t values = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct ExpansionEntry {
  Monomial monomial;
  std::int64_t coefficient;
};

// Brute-force expanded form of a superposition: monomial -> integer
// coefficient, zero entries removed, sorted by monomial.
class Expansion {
 public:
  Expansion(std::uint32_t num_bits, std::vector<ExpansionEntry> entries, bool non_canonical);

  std::uint32_t num_bits() const { return num_bits_; }
  const std::vector<ExpansionEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Some monomial used one bit index twice during expansion. Such a form has
  // no product-string reading and its DAG value is not matched by
  // eval_via_expansion.
  bool non_canonical() const { return non_canonical_; }
  // Every monomial is a full product-string.
  bool all_full() const;
  // Some coefficient differs from 1.
  bool has_non_unit_coefficients() const;

  // "bitpattern coefficient" per line, sorted by pattern; unassigned bits
  // print as 'x'.
  std::string dump() const;

  friend bool operator==(const Expansion& a, const Expansion& b) {
    return a.num_bits_ == b.num_bits_ && a.entries_.size() == b.entries_.size() &&
           std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                      [](const auto& x, const auto& y) {
                        return x.monomial == y.monomial && x.coefficient == y.coefficient;
                      });
  }

 private:
  std::uint32_t num_bits_;
  std::vector<ExpansionEntry> entries_;
  bool non_canonical_;
};

inline constexpr std::uint32_t kDefaultOracleLimit = 24;

Monomial monomial_of(const Pattern& pattern);
Pattern pattern_of(const Monomial& m, std::uint32_t num_bits);
std::string pattern_text(const Monomial& m, std::uint32_t num_bits);

Expansion expand(const Expr& expr, std::uint32_t num_bits, std::uint32_t limit = kDefaultOracleLimit);
std::int64_t member(const Expansion& exp, const Pattern& pattern);
Expansion surviving(const Expansion& exp, const Pattern& pattern);
Dyadic eval_via_expansion(const Expansion& exp, const ReferenceSystem& system, const SwitchState& switches,
                          std::uint64_t t);

enum class BellClass { S01_10, S00_11, S00, S01, S10, S11 };

std::string to_string(BellClass c);
std::optional<BellClass> legal_bell_class(const Expansion& exp);

}  // namespace inbl
