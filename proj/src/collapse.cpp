#include "inbl/collapse.hpp"

#include <algorithm>
#include <stdexcept>

#include "inbl/errors.hpp"

namespace inbl {

namespace {

class RestoreOnExit {
 public:
  explicit RestoreOnExit(SwitchState& board) : board_(board) {
    if (!board.all_live()) throw std::logic_error("protocol started on a switchboard with grounded wires");
  }
  ~RestoreOnExit() { board_.restore_all(); }
  RestoreOnExit(const RestoreOnExit&) = delete;
  RestoreOnExit& operator=(const RestoreOnExit&) = delete;

 private:
  SwitchState& board_;
};

void require_width(const Pattern& pattern, const Evaluator& ev) {
  if (pattern.num_bits() != ev.system().num_bits()) {
    throw std::invalid_argument("pattern has " + std::to_string(pattern.num_bits()) + " bits, system has " +
                                std::to_string(ev.system().num_bits()));
  }
}

// Grounds one wire and reads the signal within the same clock.
Dyadic ground_and_read(Evaluator& ev, SwitchState& board, WireId wire, std::uint64_t t,
                       std::vector<TraceRecord>& trace) {
  board.ground(wire);
  Dyadic a = ev.eval(board, t);
  trace.push_back({"ground " + wire.name(), t, a});
  return a;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Present: return "Present";
    case Verdict::Absent: return "Absent";
    case Verdict::AbsentWithBound: return "AbsentWithBound";
  }
  return "?";
}

SwitchState ground_inverse(const Pattern& pattern, std::uint32_t num_bits) {
  if (pattern.num_bits() != num_bits) {
    throw std::invalid_argument("pattern width " + std::to_string(pattern.num_bits()) + " does not match " +
                                std::to_string(num_bits) + " bits");
  }
  SwitchState s(num_bits);
  for (const auto& w : pattern.wires()) s.ground(w.inverse());
  return s;
}

std::uint64_t wait_for_live_clock(Evaluator& ev, std::uint64_t t_start, std::uint64_t max_wait) {
  for (std::uint64_t dt = 0; dt <= max_wait; ++dt) {
    if (!ev.eval(t_start + dt).is_zero()) return t_start + dt;
  }
  throw MaxWaitExceeded(t_start, t_start + max_wait);
}

std::uint64_t wait_for_live_clock(const Expr& expr, const ReferenceSystem& system, std::uint64_t t_start,
                                  std::uint64_t max_wait) {
  Evaluator ev(expr, system);
  return wait_for_live_clock(ev, t_start, max_wait);
}

Dyadic collapse_measure(Evaluator& ev, const Pattern& pattern, std::uint64_t t) {
  require_width(pattern, ev);
  if (!pattern.is_full()) throw std::invalid_argument("collapse measurement needs a full pattern");
  if (ev.eval(t).is_zero()) throw DeadClock(t);
  return ev.eval(ground_inverse(pattern, pattern.num_bits()), t);
}

Dyadic collapse_measure(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern, std::uint64_t t) {
  Evaluator ev(expr, system);
  return collapse_measure(ev, pattern, t);
}

SearchOutcome full_string_search(Evaluator& ev, SwitchState& board, const Pattern& pattern,
                                 const SearchOptions& options) {
  require_width(pattern, ev);
  if (!pattern.is_full()) throw std::invalid_argument("full-string search needs a full pattern");
  RestoreOnExit guard(board);

  SearchOutcome out;
  const std::uint64_t t = wait_for_live_clock(ev, options.t_start, options.max_wait);
  out.clocks_waited = t - options.t_start;
  out.trace.push_back({"live", t, ev.eval(board, t)});

  Dyadic amplitude;
  for (const auto& w : pattern.wires()) {
    amplitude = ground_and_read(ev, board, w.inverse(), t, out.trace);
    ++out.switch_ops;
  }
  out.clocks_observed = 1;
  if (!amplitude.is_zero()) {
    out.verdict = Verdict::Present;
    out.witness_clock = t;
    out.witness_amplitude = amplitude;
  } else {
    out.verdict = Verdict::Absent;
  }
  return out;
}

SearchOutcome full_string_search(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern,
                                 const SearchOptions& options) {
  Evaluator ev(expr, system);
  SwitchState board(system.num_bits());
  return full_string_search(ev, board, pattern, options);
}

SearchOutcome fragment_search(Evaluator& ev, SwitchState& board, const Pattern& pattern, std::uint32_t tau,
                              const SearchOptions& options) {
  require_width(pattern, ev);
  if (tau < 1) throw std::invalid_argument("observation horizon tau must be at least 1");
  RestoreOnExit guard(board);

  SearchOutcome out;
  const std::uint64_t t0 = wait_for_live_clock(ev, options.t_start, options.max_wait);
  out.clocks_waited = t0 - options.t_start;
  out.trace.push_back({"live", t0, ev.eval(board, t0)});
  for (const auto& w : pattern.wires()) {
    ground_and_read(ev, board, w.inverse(), t0, out.trace);
    ++out.switch_ops;
  }

  for (std::uint32_t i = 0; i < tau; ++i) {
    const std::uint64_t t = t0 + i;
    Dyadic a = ev.eval(board, t);
    out.trace.push_back({"read", t, a});
    ++out.clocks_observed;
    if (!a.is_zero()) {
      out.verdict = Verdict::Present;
      out.witness_clock = t;
      out.witness_amplitude = a;
      return out;
    }
  }
  out.verdict = Verdict::AbsentWithBound;
  out.epsilon = Dyadic::pow2(-static_cast<std::int64_t>(tau));
  return out;
}

SearchOutcome fragment_search(const Expr& expr, const ReferenceSystem& system, const Pattern& pattern,
                              std::uint32_t tau, const SearchOptions& options) {
  Evaluator ev(expr, system);
  SwitchState board(system.num_bits());
  return fragment_search(ev, board, pattern, tau, options);
}

EntangleResult entangle_discriminate(Evaluator& ev, SwitchState& board, const EntangleOptions& options) {
  if (ev.system().num_bits() != 2) throw std::invalid_argument("entanglement discrimination needs a 2-bit system");
  RestoreOnExit guard(board);

  EntangleResult out{};
  const std::uint64_t t = wait_for_live_clock(ev, options.t_start, options.max_wait);
  out.clock = t;
  out.trace.push_back({"live", t, ev.eval(board, t)});

  const WireId probe{2, static_cast<std::uint8_t>(options.probe == PartnerProbe::GroundZero ? 0 : 1)};
  // Bit-1 value v is tested by grounding its inverse wire; when it is
  // present, grounding one bit-2 wire on top reveals its partner.
  for (std::uint8_t v : {std::uint8_t{0}, std::uint8_t{1}}) {
    const WireId tested{1, v};
    const Dyadic s2 = ground_and_read(ev, board, tested.inverse(), t, out.trace);
    ++out.switch_ops;
    if (!s2.is_zero()) {
      const Dyadic s3 = ground_and_read(ev, board, probe, t, out.trace);
      ++out.switch_ops;
      // A zero reading means the grounded bit-2 wire carried the partner.
      const std::uint8_t partner = s3.is_zero() ? probe.bit_value : static_cast<std::uint8_t>(1 - probe.bit_value);
      out.strings.push_back(std::string{static_cast<char>('0' + v), static_cast<char>('0' + partner)});
    }
    board.restore_all();
    out.trace.push_back({"restore all", t, ev.eval(board, t)});
  }

  const auto& s = out.strings;
  auto has = [&](const char* x) { return std::find(s.begin(), s.end(), x) != s.end(); };
  if (s.size() == 1) {
    if (has("00")) out.bell_class = BellClass::S00;
    if (has("01")) out.bell_class = BellClass::S01;
    if (has("10")) out.bell_class = BellClass::S10;
    if (has("11")) out.bell_class = BellClass::S11;
    return out;
  }
  if (s.size() == 2 && has("01") && has("10")) {
    out.bell_class = BellClass::S01_10;
    return out;
  }
  if (s.size() == 2 && has("00") && has("11")) {
    out.bell_class = BellClass::S00_11;
    return out;
  }
  std::string seen;
  for (const auto& x : s) seen += (seen.empty() ? "" : ",") + x;
  throw IllegalClass("readings {" + seen + "} match none of the six two-bit classes");
}

EntangleResult entangle_discriminate(const Expr& expr, const ReferenceSystem& system,
                                     const EntangleOptions& options) {
  Evaluator ev(expr, system);
  SwitchState board(system.num_bits());
  return entangle_discriminate(ev, board, options);
}

}  // namespace inbl
