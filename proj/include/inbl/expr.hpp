#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "inbl/reference_system.hpp"

namespace inbl {

struct Node;
struct ExprTerm;

// Immutable expression DAG over reference wires: a superposition signal.
// Copies share the underlying node; subgraphs may be shared freely.
class Expr {
 public:
  enum class Kind { Ref, Sum, Product };

  using Term = ExprTerm;

  static Expr ref(WireId wire);
  // At least one term, every coefficient nonzero.
  static Expr sum(std::vector<Term> terms);
  // At least one factor.
  static Expr product(std::vector<Expr> factors);

  Kind kind() const;
  WireId wire() const;
  std::span<const Term> terms() const;
  std::span<const Expr> factors() const;
  // Largest bit index referenced anywhere below this node.
  std::uint32_t max_bit() const;

  const Node* id() const { return node_.get(); }

  Expr operator+(const Expr& rhs) const;
  Expr operator-(const Expr& rhs) const;
  Expr operator*(const Expr& rhs) const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ExprTerm {
  std::int64_t coefficient;
  Expr expr;
};

struct Node {
  Expr::Kind kind;
  WireId wire;
  std::vector<Expr::Term> terms;
  std::vector<Expr> factors;
  std::uint32_t max_bit;
};

// Partial or full assignment of bit values to bit indices 1..M.
class Pattern {
 public:
  explicit Pattern(std::uint32_t num_bits) : values_(num_bits, -1) {}

  // "1010": character k (0-based) is the value of bit k+1.
  static Pattern full(const std::string& bits);
  // "1=0,2=0,4=0" over an M-bit system.
  static Pattern fragments(const std::string& spec, std::uint32_t num_bits);

  std::uint32_t num_bits() const { return static_cast<std::uint32_t>(values_.size()); }
  void assign(std::uint32_t bit_index, std::uint8_t value);
  bool assigned(std::uint32_t bit_index) const { return values_.at(bit_index - 1) >= 0; }
  std::uint8_t value(std::uint32_t bit_index) const;
  std::uint32_t assigned_count() const;
  bool is_full() const { return assigned_count() == num_bits(); }
  // Wires carrying the assigned values, in bit order.
  std::vector<WireId> wires() const;
  // "10x0" style rendering.
  std::string to_string() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<std::int8_t> values_;
};

Expr build_product_string(const Pattern& pattern);
Expr build_universe(std::uint32_t num_bits);
Expr build_even(std::uint32_t num_bits);
Expr build_odd(std::uint32_t num_bits);

bool structurally_equal(const Expr& a, const Expr& b);
// Distinct nodes reachable from the root.
std::size_t node_count(const Expr& expr);
// Elementary additions and multiplications: arity - 1 per distinct Sum or
// Product node.
std::size_t operation_count(const Expr& expr);

}  // namespace inbl
