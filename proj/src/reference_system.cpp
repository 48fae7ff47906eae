#include "inbl/reference_system.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "inbl/mix.hpp"

namespace inbl {

namespace {

constexpr std::uint64_t kWireKey = 0x6a09e667f3bcc909ULL;
constexpr std::uint64_t kFlipKey = 0xbb67ae8584caa73bULL;

struct Cursor {
  std::uint64_t t = 0;
  int sign = 1;
};

struct CursorKey {
  std::uint64_t seed;
  std::uint64_t threshold;
  friend bool operator==(const CursorKey&, const CursorKey&) = default;
};

struct CursorKeyHash {
  std::size_t operator()(const CursorKey& k) const { return mix64(k.seed ^ mix64(k.threshold)); }
};

std::uint64_t parse_u64(std::string_view text, const std::string& whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid flip probability '" + whole + "'");
  }
  return v;
}

}  // namespace

std::string WireId::name() const {
  return "R" + std::to_string(bit_index) + "_" + std::to_string(bit_value);
}

FlipProb FlipProb::parse(const std::string& text) {
  FlipProb p;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    p.num = parse_u64(std::string_view(text).substr(0, slash), text);
    p.den = parse_u64(std::string_view(text).substr(slash + 1), text);
  } else {
    const auto dot = text.find('.');
    std::string digits = text;
    p.den = 1;
    if (dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.size() > 18) throw std::invalid_argument("flip probability has too many digits");
      digits = text.substr(0, dot) + frac;
      for (std::size_t i = 0; i < frac.size(); ++i) p.den *= 10;
    }
    p.num = parse_u64(digits, text);
  }
  if (p.den == 0 || p.num == 0 || p.num > p.den) {
    throw std::invalid_argument("flip probability must lie in (0, 1], got '" + text + "'");
  }
  const auto g = std::gcd(p.num, p.den);
  p.num /= g;
  p.den /= g;
  return p;
}

std::string FlipProb::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

std::uint64_t derive_wire_seed(std::uint64_t master_seed, WireId wire) {
  // Injective in the wire for a fixed master seed: an odd multiple of the
  // slot offset from a keyed base, followed by a bijective mix.
  const std::uint64_t base = mix64(master_seed ^ kWireKey);
  return mix64(base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(wire.slot()) + 1));
}

ReferenceSystem::ReferenceSystem(std::uint32_t num_bits, RtwScheme scheme, std::uint64_t master_seed,
                                 FlipProb flip_prob)
    : num_bits_(num_bits), scheme_(scheme), master_seed_(master_seed), flip_prob_(flip_prob) {
  if (num_bits == 0) throw std::invalid_argument("reference system needs at least one noise-bit");
  if (flip_prob.den == 0 || flip_prob.num == 0 || flip_prob.num > flip_prob.den) {
    throw std::invalid_argument("flip probability must lie in (0, 1]");
  }
  if (flip_prob.num == flip_prob.den) {
    always_flip_ = true;
  } else {
    const unsigned __int128 scaled = (static_cast<unsigned __int128>(flip_prob.num) << 64) / flip_prob.den;
    flip_threshold_ = static_cast<std::uint64_t>(scaled);
  }
}

int ReferenceSystem::sign_from_seed(std::uint64_t seed, std::uint64_t t) const {
  const int initial = (keyed_draw(seed, 0) >> 63) ? 1 : -1;
  if (flip_prob_.is_half()) {
    if (t == 0) return initial;
    return (keyed_draw(seed, t) >> 63) ? 1 : -1;
  }
  if (always_flip_) return (t & 1) ? -initial : initial;

  // Sign at t is the initial sign times the parity of flips in 1..t. A
  // per-thread cursor per stream makes forward scans O(1) per clock while
  // keeping the result a pure function of (seed, t).
  thread_local std::unordered_map<CursorKey, Cursor, CursorKeyHash> cursors;
  if (cursors.size() > 4096) cursors.clear();
  const CursorKey key{seed, flip_threshold_};
  auto [it, inserted] = cursors.try_emplace(key, Cursor{0, initial});
  Cursor& c = it->second;
  if (c.t > t) c = Cursor{0, initial};
  const std::uint64_t flip_seed = seed ^ kFlipKey;
  while (c.t < t) {
    ++c.t;
    if (keyed_draw(flip_seed, c.t) < flip_threshold_) c.sign = -c.sign;
  }
  return c.sign;
}

int ReferenceSystem::wire_sign(WireId wire, std::uint64_t t) const {
  if (!valid(wire)) {
    throw std::out_of_range("wire " + wire.name() + " outside a " + std::to_string(num_bits_) +
                            "-bit reference system");
  }
  return sign_from_seed(derive_wire_seed(master_seed_, wire), t);
}

Dyadic ReferenceSystem::magnitude(WireId wire) const {
  if (scheme_ == RtwScheme::Asymmetric && wire.bit_value == 0) return Dyadic(1, -1);
  return Dyadic(1);
}

Dyadic ReferenceSystem::wire_value(WireId wire, std::uint64_t t) const {
  const int s = wire_sign(wire, t);
  if (scheme_ == RtwScheme::Asymmetric && wire.bit_value == 0) return Dyadic(s, -1);
  return Dyadic(s);
}

std::string to_string(RtwScheme scheme) {
  return scheme == RtwScheme::Asymmetric ? "asym" : "sym";
}

}  // namespace inbl
