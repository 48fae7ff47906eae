#pragma once

#include <cstdint>
#include <string>

#include "inbl/dyadic.hpp"

namespace inbl {

// One reference wire: the carrier of value `bit_value` for logical bit
// `bit_index` (1-based). An M-bit system has 2M wires.
struct WireId {
  std::uint32_t bit_index = 1;
  std::uint8_t bit_value = 0;

  WireId inverse() const { return {bit_index, static_cast<std::uint8_t>(1 - bit_value)}; }
  // Dense index 2*(bit_index-1) + bit_value.
  std::size_t slot() const { return 2 * (static_cast<std::size_t>(bit_index) - 1) + bit_value; }
  std::string name() const;

  friend bool operator==(const WireId&, const WireId&) = default;
  friend auto operator<=>(const WireId&, const WireId&) = default;
};

enum class RtwScheme {
  Asymmetric,  // High wires +-1, Low wires +-1/2
  Symmetric,   // +-1 on every wire
};

// Probability that a wire changes sign between consecutive clocks.
struct FlipProb {
  std::uint64_t num = 1;
  std::uint64_t den = 2;

  bool is_half() const { return 2 * static_cast<unsigned __int128>(num) == den; }
  // Accepts "a/b" or a decimal such as "0.25".
  static FlipProb parse(const std::string& text);
  std::string to_string() const;
};

std::uint64_t derive_wire_seed(std::uint64_t master_seed, WireId wire);

// Counter-based generator of the 2M random telegraph reference signals.
// wire_value() is a pure function of (master_seed, wire, t).
class ReferenceSystem {
 public:
  ReferenceSystem(std::uint32_t num_bits, RtwScheme scheme, std::uint64_t master_seed,
                  FlipProb flip_prob = {});

  std::uint32_t num_bits() const { return num_bits_; }
  RtwScheme scheme() const { return scheme_; }
  std::uint64_t master_seed() const { return master_seed_; }
  const FlipProb& flip_prob() const { return flip_prob_; }

  bool valid(WireId wire) const {
    return wire.bit_index >= 1 && wire.bit_index <= num_bits_ && wire.bit_value <= 1;
  }

  // Sign (+1 / -1) of the wire at clock t.
  int wire_sign(WireId wire, std::uint64_t t) const;
  Dyadic wire_value(WireId wire, std::uint64_t t) const;
  Dyadic magnitude(WireId wire) const;

 private:
  int sign_from_seed(std::uint64_t seed, std::uint64_t t) const;

  std::uint32_t num_bits_;
  RtwScheme scheme_;
  std::uint64_t master_seed_;
  FlipProb flip_prob_;
  std::uint64_t flip_threshold_ = 0;  // flip iff draw < threshold (unless always_flip_)
  bool always_flip_ = false;
};

std::string to_string(RtwScheme scheme);

}  // namespace inbl
