#include "inbl/expr.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace inbl {

Expr Expr::ref(WireId wire) {
  if (wire.bit_index == 0 || wire.bit_value > 1) {
    throw std::invalid_argument("invalid wire " + wire.name());
  }
  return Expr(std::make_shared<const Node>(Node{Kind::Ref, wire, {}, {}, wire.bit_index}));
}

Expr Expr::sum(std::vector<Term> terms) {
  if (terms.empty()) throw std::invalid_argument("a sum needs at least one term");
  std::uint32_t max_bit = 0;
  for (const auto& term : terms) {
    if (term.coefficient == 0) throw std::invalid_argument("sum coefficients must be nonzero");
    max_bit = std::max(max_bit, term.expr.max_bit());
  }
  return Expr(std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(terms), {}, max_bit}));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) throw std::invalid_argument("a product needs at least one factor");
  std::uint32_t max_bit = 0;
  for (const auto& f : factors) max_bit = std::max(max_bit, f.max_bit());
  return Expr(std::make_shared<const Node>(Node{Kind::Product, {}, {}, std::move(factors), max_bit}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
WireId Expr::wire() const { return node_->wire; }
std::span<const Expr::Term> Expr::terms() const { return node_->terms; }
std::span<const Expr> Expr::factors() const { return node_->factors; }
std::uint32_t Expr::max_bit() const { return node_->max_bit; }

Expr Expr::operator+(const Expr& rhs) const { return sum({{1, *this}, {1, rhs}}); }
Expr Expr::operator-(const Expr& rhs) const { return sum({{1, *this}, {-1, rhs}}); }
Expr Expr::operator*(const Expr& rhs) const { return product({*this, rhs}); }

Pattern Pattern::full(const std::string& bits) {
  if (bits.empty()) throw std::invalid_argument("empty bit pattern");
  Pattern p(static_cast<std::uint32_t>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw std::invalid_argument("bit pattern '" + bits + "' must contain only 0 and 1");
    }
    p.values_[i] = static_cast<std::int8_t>(bits[i] - '0');
  }
  return p;
}

Pattern Pattern::fragments(const std::string& spec, std::uint32_t num_bits) {
  Pattern p(num_bits);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 2 != item.size() ||
        (item[eq + 1] != '0' && item[eq + 1] != '1')) {
      throw std::invalid_argument("fragment '" + item + "' is not of the form index=0|1");
    }
    std::uint32_t index = 0;
    for (std::size_t i = 0; i < eq; ++i) {
      if (item[i] < '0' || item[i] > '9') throw std::invalid_argument("bad bit index in '" + item + "'");
      index = index * 10 + static_cast<std::uint32_t>(item[i] - '0');
      if (index > num_bits) break;
    }
    if (index == 0 || index > num_bits) {
      throw std::invalid_argument("bit index in '" + item + "' outside 1.." + std::to_string(num_bits));
    }
    if (p.assigned(index)) throw std::invalid_argument("bit " + std::to_string(index) + " assigned twice");
    p.assign(index, static_cast<std::uint8_t>(item[eq + 1] - '0'));
    pos = comma + 1;
  }
  return p;
}

void Pattern::assign(std::uint32_t bit_index, std::uint8_t value) {
  if (bit_index == 0 || bit_index > num_bits() || value > 1) {
    throw std::invalid_argument("invalid assignment of bit " + std::to_string(bit_index));
  }
  values_[bit_index - 1] = static_cast<std::int8_t>(value);
}

std::uint8_t Pattern::value(std::uint32_t bit_index) const {
  const auto v = values_.at(bit_index - 1);
  if (v < 0) throw std::logic_error("bit " + std::to_string(bit_index) + " is unassigned");
  return static_cast<std::uint8_t>(v);
}

std::uint32_t Pattern::assigned_count() const {
  return static_cast<std::uint32_t>(std::count_if(values_.begin(), values_.end(), [](auto v) { return v >= 0; }));
}

std::vector<WireId> Pattern::wires() const {
  std::vector<WireId> out;
  for (std::uint32_t k = 1; k <= num_bits(); ++k) {
    if (assigned(k)) out.push_back({k, value(k)});
  }
  return out;
}

std::string Pattern::to_string() const {
  std::string s;
  for (auto v : values_) s.push_back(v < 0 ? 'x' : static_cast<char>('0' + v));
  return s;
}

Expr build_product_string(const Pattern& pattern) {
  if (!pattern.is_full()) throw std::invalid_argument("product-string needs a full pattern");
  std::vector<Expr> factors;
  for (const auto& w : pattern.wires()) factors.push_back(Expr::ref(w));
  return Expr::product(std::move(factors));
}

namespace {

std::vector<Expr> bit_sums(std::uint32_t num_bits) {
  std::vector<Expr> sums;
  for (std::uint32_t i = 1; i <= num_bits; ++i) {
    sums.push_back(Expr::ref({i, 0}) + Expr::ref({i, 1}));
  }
  return sums;
}

void require_bits(std::uint32_t num_bits) {
  if (num_bits < 1) throw std::invalid_argument("superposition needs at least one noise-bit");
}

Expr universe_from(const std::vector<Expr>& sums) {
  if (sums.size() == 1) return sums.front();
  return Expr::product(sums);
}

Expr even_from(const std::vector<Expr>& sums) {
  std::vector<Expr> factors{Expr::ref({1, 0})};
  factors.insert(factors.end(), sums.begin() + 1, sums.end());
  return Expr::product(std::move(factors));
}

}  // namespace

Expr build_universe(std::uint32_t num_bits) {
  require_bits(num_bits);
  return universe_from(bit_sums(num_bits));
}

Expr build_even(std::uint32_t num_bits) {
  require_bits(num_bits);
  return even_from(bit_sums(num_bits));
}

Expr build_odd(std::uint32_t num_bits) {
  require_bits(num_bits);
  const auto sums = bit_sums(num_bits);
  return universe_from(sums) - even_from(sums);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Ref:
      return a.wire() == b.wire();
    case Expr::Kind::Sum: {
      const auto ta = a.terms();
      const auto tb = b.terms();
      if (ta.size() != tb.size()) return false;
      for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i].coefficient != tb[i].coefficient || !structurally_equal(ta[i].expr, tb[i].expr)) return false;
      }
      return true;
    }
    case Expr::Kind::Product: {
      const auto fa = a.factors();
      const auto fb = b.factors();
      if (fa.size() != fb.size()) return false;
      for (std::size_t i = 0; i < fa.size(); ++i) {
        if (!structurally_equal(fa[i], fb[i])) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

void visit_distinct(const Expr& root, const std::function<void(const Expr&)>& fn) {
  std::unordered_set<const Node*> seen;
  std::vector<Expr> stack{root};
  while (!stack.empty()) {
    Expr e = stack.back();
    stack.pop_back();
    if (!seen.insert(e.id()).second) continue;
    fn(e);
    for (const auto& t : e.terms()) stack.push_back(t.expr);
    for (const auto& f : e.factors()) stack.push_back(f);
  }
}

}  // namespace

std::size_t node_count(const Expr& expr) {
  std::size_t n = 0;
  visit_distinct(expr, [&](const Expr&) { ++n; });
  return n;
}

std::size_t operation_count(const Expr& expr) {
  std::size_t n = 0;
  visit_distinct(expr, [&](const Expr& e) {
    if (e.kind() == Expr::Kind::Sum) n += e.terms().size() - 1;
    if (e.kind() == Expr::Kind::Product) n += e.factors().size() - 1;
  });
  return n;
}

}  // namespace inbl
