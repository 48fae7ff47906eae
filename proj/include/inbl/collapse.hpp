#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inbl/dyadic.hpp"
#include "inbl/evaluator.hpp"
#include "inbl/expr.hpp"
#include "inbl/oracle.hpp"
#include "inbl/reference_system.hpp"
#include "inbl/switch_state.hpp"

namespace inbl {

inline constexpr std::uint64_t kDefaultMaxWait = 10000;
inline constexpr std::uint32_t kDefaultTau = 64;

struct TraceRecord {
  std::string action;
  std::uint64_t clock;
  Dyadic amplitude;
};

enum class Verdict { Present, Absent, AbsentWithBound };

std::string to_string(Verdict v);

struct SearchOutcome {
  Verdict verdict = Verdict::Absent;
  std::optional<Dyadic> epsilon;  // set for AbsentWithBound: 2^-tau
  std::uint32_t switch_ops = 0;
  std::uint64_t clocks_waited = 0;
  std::uint64_t clocks_observed = 0;
  std::optional<std::uint64_t> witness_clock;  // Present only
  Dyadic witness_amplitude;
  std::vector<TraceRecord> trace;
};

struct SearchOptions {
  std::uint64_t t_start = 0;
  std::uint64_t max_wait = kDefaultMaxWait;
};

// Grounds wire (k, 1-v) for every assigned (k, v); every other wire stays live.
SwitchState ground_inverse(const Pattern& pattern, std::uint32_t num_bits);

// Smallest t in [t_start, t_start + max_wait] where the un-grounded
// superposition is nonzero.
std::uint64_t wait_for_live_clock(Evaluator& ev, std::uint64_t t_start, std::uint64_t max_wait);
std::uint64_t wait_for_live_clock(const Expr& expr, const ReferenceSystem& system, std::uint64_t t_start,
                                  std::uint64_t max_wait);

// Reading at live clock t with the inverse wires of a full pattern grounded.
Dyadic collapse_measure(Evaluator& ev, const Pattern& pattern, std::uint64_t t);
Dyadic collapse_measure(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern, std::uint64_t t);

// Protocol runs borrow a switchboard that must be all-live on entry; it is
// all-live again on exit, including when an error escapes.
SearchOutcome full_string_search(Evaluator& ev, SwitchState& board, const Pattern& pattern,
                                 const SearchOptions& options = {});
SearchOutcome full_string_search(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern,
                                 const SearchOptions& options = {});

SearchOutcome fragment_search(Evaluator& ev, SwitchState& board, const Pattern& pattern, std::uint32_t tau,
                              const SearchOptions& options = {});
SearchOutcome fragment_search(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern,
                              std::uint32_t tau, const SearchOptions& options = {});

// Second step of the two-bit discrimination: which bit-2 wire is grounded
// to resolve the partner of the bit-1 value under test.
enum class PartnerProbe { GroundZero, GroundOne };

struct EntangleOptions {
  std::uint64_t t_start = 0;
  std::uint64_t max_wait = kDefaultMaxWait;
  PartnerProbe probe = PartnerProbe::GroundZero;
};

struct EntangleResult {
  BellClass bell_class;
  std::uint64_t clock;
  std::uint32_t switch_ops;
  std::vector<std::string> strings;  // detected two-bit strings, e.g. "01"
  std::vector<TraceRecord> trace;
};

EntangleResult entangle_discriminate(Evaluator& ev, SwitchState& board, const EntangleOptions& options = {});
EntangleResult entangle_discriminate(const Expr& expr, const ReferenceSystem& system,
                                     const EntangleOptions& options = {});

}  // namespace inbl
