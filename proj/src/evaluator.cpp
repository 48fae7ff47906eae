#include "inbl/evaluator.hpp"

#include <stdexcept>
#include <unordered_map>

namespace inbl {

void SwitchState::set(WireId wire, bool grounded) {
  auto ref = grounded_.at(wire.slot());
  if (ref == grounded) return;
  ref = grounded;
  grounded_count_ += grounded ? 1 : -1;
  ++epoch_;
}

void SwitchState::restore_all() {
  if (grounded_count_ == 0) return;
  std::fill(grounded_.begin(), grounded_.end(), false);
  grounded_count_ = 0;
  ++epoch_;
}

Evaluator::Evaluator(Expr expr, const ReferenceSystem& system)
    : expr_(std::move(expr)), system_(&system), live_(system.num_bits()) {
  if (expr_.max_bit() > system.num_bits()) {
    throw std::out_of_range("expression references bit " + std::to_string(expr_.max_bit()) + " of a " +
                            std::to_string(system.num_bits()) + "-bit reference system");
  }
  // Iterative post-order flattening; children get lower step indices.
  std::unordered_map<const Node*, std::uint32_t> index;
  std::vector<bool> slot_used(2 * static_cast<std::size_t>(system.num_bits()), false);
  std::vector<std::pair<Expr, bool>> stack{{expr_, false}};
  while (!stack.empty()) {
    auto [e, expanded] = stack.back();
    stack.pop_back();
    if (index.count(e.id())) continue;
    if (!expanded) {
      stack.emplace_back(e, true);
      for (const auto& t : e.terms()) stack.emplace_back(t.expr, false);
      for (const auto& f : e.factors()) stack.emplace_back(f, false);
      continue;
    }
    Step step{e.kind(), e.wire(), {}};
    for (const auto& t : e.terms()) step.operands.emplace_back(t.coefficient, index.at(t.expr.id()));
    for (const auto& f : e.factors()) step.operands.emplace_back(1, index.at(f.id()));
    if (e.kind() == Expr::Kind::Ref && !slot_used[e.wire().slot()]) {
      slot_used[e.wire().slot()] = true;
      used_slots_.push_back(e.wire().slot());
    }
    index.emplace(e.id(), static_cast<std::uint32_t>(steps_.size()));
    steps_.push_back(std::move(step));
  }
  values_.resize(steps_.size());
  wire_values_.resize(slot_used.size());
}

Dyadic Evaluator::eval(std::uint64_t t) { return eval(live_, t); }

Dyadic Evaluator::eval(const SwitchState& switches, std::uint64_t t) {
  if (switches.num_bits() != system_->num_bits()) {
    throw std::invalid_argument("switch state and reference system differ in size");
  }
  if (memo_valid_ && memo_t_ == t && memo_grounded_ == switches.grounded_slots()) return memo_value_;

  if (!wires_valid_ || wires_t_ != t) {
    for (auto slot : used_slots_) {
      const WireId w{static_cast<std::uint32_t>(slot / 2 + 1), static_cast<std::uint8_t>(slot % 2)};
      wire_values_[slot] = system_->wire_value(w, t);
    }
    wires_valid_ = true;
    wires_t_ = t;
  }

  const auto& grounded = switches.grounded_slots();
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& s = steps_[i];
    switch (s.kind) {
      case Expr::Kind::Ref: {
        const auto slot = s.wire.slot();
        values_[i] = grounded[slot] ? Dyadic() : wire_values_[slot];
        break;
      }
      case Expr::Kind::Sum: {
        Dyadic acc;
        for (const auto& [coef, child] : s.operands) {
          if (coef == 1) {
            acc += values_[child];
          } else if (!values_[child].is_zero()) {
            acc += Dyadic(coef) * values_[child];
          }
        }
        values_[i] = std::move(acc);
        break;
      }
      case Expr::Kind::Product: {
        Dyadic acc = values_[s.operands.front().second];
        for (std::size_t k = 1; k < s.operands.size() && !acc.is_zero(); ++k) acc *= values_[s.operands[k].second];
        values_[i] = std::move(acc);
        break;
      }
    }
  }
  memo_valid_ = true;
  memo_t_ = t;
  memo_grounded_ = grounded;
  memo_value_ = values_.back();
  return memo_value_;
}

Dyadic eval(const Expr& expr, const ReferenceSystem& system, const SwitchState& switches, std::uint64_t t) {
  Evaluator ev(expr, system);
  return ev.eval(switches, t);
}

}  // namespace inbl
