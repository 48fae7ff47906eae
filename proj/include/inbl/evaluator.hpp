#pragma once

#include <cstdint>
#include <vector>

#include "inbl/dyadic.hpp"
#include "inbl/expr.hpp"
#include "inbl/reference_system.hpp"
#include "inbl/switch_state.hpp"

namespace inbl {

// Exact evaluator for one expression against one reference system.
//
// The DAG is flattened once into topological order so each distinct node is
// computed once per reading. The last reading is memoized on (t, grounded
// set); repeated reads inside one clock under an unchanged switchboard are
// free. Not thread-safe; use one Evaluator per protocol run.
class Evaluator {
 public:
  Evaluator(Expr expr, const ReferenceSystem& system);

  const Expr& expr() const { return expr_; }
  const ReferenceSystem& system() const { return *system_; }

  Dyadic eval(const SwitchState& switches, std::uint64_t t);
  Dyadic eval(std::uint64_t t);

 private:
  struct Step {
    Expr::Kind kind;
    WireId wire;
    std::vector<std::pair<std::int64_t, std::uint32_t>> operands;  // (coefficient, step index)
  };

  Expr expr_;
  const ReferenceSystem* system_;
  std::vector<Step> steps_;
  std::vector<std::size_t> used_slots_;
  std::vector<Dyadic> wire_values_;
  std::vector<Dyadic> values_;
  SwitchState live_;

  bool memo_valid_ = false;
  std::uint64_t memo_t_ = 0;
  std::vector<bool> memo_grounded_;
  Dyadic memo_value_;
  bool wires_valid_ = false;
  std::uint64_t wires_t_ = 0;
};

Dyadic eval(const Expr& expr, const ReferenceSystem& system, const SwitchState& switches, std::uint64_t t);

}  // namespace inbl
