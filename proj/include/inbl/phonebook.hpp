#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inbl/collapse.hpp"
#include "inbl/expr.hpp"
#include "inbl/reference_system.hpp"

namespace inbl {

// Names occupy bits 1..N of the combined (N+S)-bit reference system and
// numbers bits N+1..N+S. Values are written most significant first, so
// the first character of "01" is bit 1 of the field.
struct PhonebookEntry {
  std::uint64_t name;
  std::uint64_t number;
};

struct PhonebookSpec {
  std::uint32_t name_bits = 0;
  std::uint32_t number_bits = 0;
  std::vector<PhonebookEntry> entries;

  // Throws std::invalid_argument on duplicate names, widths out of range or
  // values that do not fit their field.
  void validate() const;
  bool bijective() const;
  std::uint32_t total_bits() const { return name_bits + number_bits; }
};

// Header `names N; numbers S;` followed by `bitstring -> bitstring` lines;
// '#' starts a comment.
PhonebookSpec parse_phonebook(const std::string& text);
std::string format_bits(std::uint64_t value, std::uint32_t width);
std::uint64_t parse_bits(const std::string& bits, std::uint32_t width);

struct PhonebookExpr {
  Expr expr;
  PhonebookSpec spec;
};

PhonebookExpr build_phonebook(const PhonebookSpec& spec);

enum class LookupDirection { Forward, Inverse };

std::uint32_t switching_cost(std::uint32_t name_bits, std::uint32_t number_bits, LookupDirection direction);

struct LookupResult {
  std::uint64_t value;  // number for forward lookup, name for inverse
  std::uint32_t switch_ops;
  std::uint64_t clock;
  std::vector<TraceRecord> trace;
};

LookupResult lookup(const PhonebookExpr& pb, const ReferenceSystem& system, std::uint64_t name,
                    const SearchOptions& options = {});
LookupResult inverse_lookup(const PhonebookExpr& pb, const ReferenceSystem& system, std::uint64_t number,
                            const SearchOptions& options = {});

// Borrowed-evaluator forms for repeated lookups on one book.
LookupResult lookup(Evaluator& ev, SwitchState& board, const PhonebookSpec& spec, std::uint64_t name,
                    const SearchOptions& options = {});
LookupResult inverse_lookup(Evaluator& ev, SwitchState& board, const PhonebookSpec& spec, std::uint64_t number,
                            const SearchOptions& options = {});

}  // namespace inbl
