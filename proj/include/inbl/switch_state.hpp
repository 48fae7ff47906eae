#pragma once

#include <cstdint>
#include <vector>

#include "inbl/reference_system.hpp"

namespace inbl {

// Grounded/live status of the 2M reference wires. Grounded wires read as 0.
// The epoch counter advances on every status change.
class SwitchState {
 public:
  explicit SwitchState(std::uint32_t num_bits) : grounded_(2 * static_cast<std::size_t>(num_bits), false) {}

  std::uint32_t num_bits() const { return static_cast<std::uint32_t>(grounded_.size() / 2); }
  bool is_grounded(WireId wire) const { return grounded_.at(wire.slot()); }
  bool all_live() const { return grounded_count_ == 0; }
  std::uint32_t grounded_count() const { return grounded_count_; }
  std::uint64_t epoch() const { return epoch_; }
  const std::vector<bool>& grounded_slots() const { return grounded_; }

  void ground(WireId wire) { set(wire, true); }
  void restore(WireId wire) { set(wire, false); }
  void restore_all();

 private:
  void set(WireId wire, bool grounded);

  std::vector<bool> grounded_;
  std::uint32_t grounded_count_ = 0;
  std::uint64_t epoch_ = 0;
};

}  // namespace inbl
