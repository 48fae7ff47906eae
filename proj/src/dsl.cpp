#include "inbl/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "inbl/errors.hpp"

namespace inbl {

namespace {

enum class Tok { Int, Ident, Underscore, LParen, RParen, Plus, Minus, Star, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t value = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::End, std::string(1, c), 0, line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        const auto digit = static_cast<std::uint64_t>(text[j] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
          throw ParseError("integer literal too large", line, col);
        }
        v = v * 10 + digit;
        ++j;
      }
      tok.kind = Tok::Int;
      tok.text = text.substr(i, j - i);
      tok.value = v;
      out.push_back(tok);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Tok::Ident;
      tok.text = text.substr(i, j - i);
      out.push_back(tok);
      advance(j - i);
      continue;
    }
    switch (c) {
      case '_': tok.kind = Tok::Underscore; break;
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      case '+': tok.kind = Tok::Plus; break;
      case '-': tok.kind = Tok::Minus; break;
      case '*': tok.kind = Tok::Star; break;
      case ';': tok.kind = Tok::Semicolon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(tok);
    advance(1);
  }
  out.push_back(Token{Tok::End, "end of input", 0, line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::optional<std::uint32_t> default_bits)
      : tokens_(std::move(tokens)), default_bits_(default_bits) {}

  DslDocument document() {
    if (peek().kind == Tok::Ident && peek().text == "bits") {
      next();
      const Token& n = expect(Tok::Int, "system size after 'bits'");
      if (n.value < 1 || n.value > 64) throw ParseError("system size must be in 1..64", n.line, n.column);
      num_bits_ = static_cast<std::uint32_t>(n.value);
      expect(Tok::Semicolon, "';' after the system size");
    } else if (default_bits_) {
      num_bits_ = *default_bits_;
    } else {
      throw ParseError("missing 'bits M;' header", peek().line, peek().column);
    }
    Expr e = superposition();
    if (peek().kind != Tok::End) error("unexpected '" + peek().text + "'");
    return {num_bits_, e};
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) error("expected " + what + ", found '" + peek().text + "'");
    return next();
  }

  Expr superposition() {
    std::vector<Expr::Term> terms;
    std::int64_t sign = 1;
    if (peek().kind == Tok::Minus) {
      next();
      sign = -1;
    }
    terms.push_back(term(sign));
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = next().kind == Tok::Plus ? 1 : -1;
      terms.push_back(term(sign));
    }
    if (terms.size() == 1 && terms.front().coefficient == 1) return terms.front().expr;
    return Expr::sum(std::move(terms));
  }

  Expr::Term term(std::int64_t coefficient) {
    const Token start = peek();
    std::vector<Expr> factors;
    auto factor_into = [&] {
      if (peek().kind == Tok::Int) {
        const Token& k = next();
        if (k.value == 0) throw ParseError("zero coefficient", k.line, k.column);
        if (k.value > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) ||
            __builtin_mul_overflow(coefficient, static_cast<std::int64_t>(k.value), &coefficient)) {
          throw ParseError("coefficient overflow", k.line, k.column);
        }
        return;
      }
      Expr f = factor();
      if (f.kind() == Expr::Kind::Product) {
        for (const auto& g : f.factors()) factors.push_back(g);
      } else {
        factors.push_back(std::move(f));
      }
    };
    factor_into();
    while (peek().kind == Tok::Star) {
      next();
      factor_into();
    }
    if (factors.empty()) throw ParseError("term has no signal factor", start.line, start.column);
    Expr body = factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
    return {coefficient, body};
  }

  Expr factor() {
    const Token& tok = peek();
    if (tok.kind == Tok::LParen) {
      next();
      Expr inner = superposition();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (tok.kind != Tok::Ident) error("expected a reference, builtin or '(', found '" + tok.text + "'");
    if (tok.text == "R") return ref();
    if (tok.text == "U" || tok.text == "EVEN" || tok.text == "ODD") return builtin();
    error("unknown name '" + tok.text + "'");
  }

  Expr ref() {
    next();
    const Token& index = expect(Tok::Int, "bit index after 'R'");
    if (index.value < 1 || index.value > num_bits_) {
      throw ParseError("bit index " + index.text + " outside declared 1.." + std::to_string(num_bits_), index.line,
                       index.column);
    }
    expect(Tok::Underscore, "'_' in reference");
    const Token& value = expect(Tok::Int, "bit value 0 or 1");
    if (value.text != "0" && value.text != "1") throw ParseError("bit value must be 0 or 1", value.line, value.column);
    const WireId w{static_cast<std::uint32_t>(index.value), static_cast<std::uint8_t>(value.value)};
    auto it = refs_.find(w.slot());
    if (it == refs_.end()) it = refs_.emplace(w.slot(), Expr::ref(w)).first;
    return it->second;
  }

  Expr builtin() {
    const Token name = next();
    std::uint32_t n = num_bits_;
    if (peek().kind == Tok::LParen) {
      next();
      const Token& size = expect(Tok::Int, "size of " + name.text);
      if (size.value < 1 || size.value > num_bits_) {
        throw ParseError(name.text + " size " + size.text + " outside declared 1.." + std::to_string(num_bits_),
                         size.line, size.column);
      }
      n = static_cast<std::uint32_t>(size.value);
      expect(Tok::RParen, "')'");
    }
    if (name.text == "U") return build_universe(n);
    if (name.text == "EVEN") return build_even(n);
    return build_odd(n);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::optional<std::uint32_t> default_bits_;
  std::uint32_t num_bits_ = 0;
  std::unordered_map<std::size_t, Expr> refs_;
};

class Formatter {
 public:
  const std::string& text(const Expr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    std::string out;
    switch (e.kind()) {
      case Expr::Kind::Ref:
        out = e.wire().name();
        break;
      case Expr::Kind::Product:
        out = product(e);
        break;
      case Expr::Kind::Sum:
        out = sum(e);
        break;
    }
    return cache_.emplace(e.id(), std::move(out)).first->second;
  }

 private:
  void flatten(const Expr& e, std::vector<WireId>& refs, std::vector<std::string>& others) {
    for (const auto& f : e.factors()) {
      if (f.kind() == Expr::Kind::Ref) {
        refs.push_back(f.wire());
      } else if (f.kind() == Expr::Kind::Product) {
        flatten(f, refs, others);
      } else {
        others.push_back("(" + text(f) + ")");
      }
    }
  }

  std::string product(const Expr& e) {
    std::vector<WireId> refs;
    std::vector<std::string> others;
    flatten(e, refs, others);
    std::sort(refs.begin(), refs.end());
    std::sort(others.begin(), others.end());
    std::string out;
    for (const auto& w : refs) out += (out.empty() ? "" : "*") + w.name();
    for (const auto& o : others) out += (out.empty() ? "" : "*") + o;
    return out;
  }

  std::string sum(const Expr& e) {
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (const auto& t : e.terms()) {
      std::string body = text(t.expr);
      if (t.expr.kind() == Expr::Kind::Sum) body = "(" + body + ")";
      const std::int64_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
      if (mag != 1) body = std::to_string(mag) + "*" + body;
      terms.emplace_back(std::move(body), t.coefficient);
    }
    std::sort(terms.begin(), terms.end());
    std::string out;
    for (const auto& [body, coef] : terms) {
      if (out.empty()) {
        out = (coef < 0 ? "-" : "") + body;
      } else {
        out += (coef < 0 ? " - " : " + ") + body;
      }
    }
    return out;
  }

  std::unordered_map<const Node*, std::string> cache_;
};

}  // namespace

DslDocument parse_dsl(const std::string& text, std::optional<std::uint32_t> default_bits) {
  Parser parser(tokenize(text), default_bits);
  return parser.document();
}

std::string format_expr(const Expr& expr) {
  Formatter f;
  return f.text(expr);
}

std::string format_dsl(const Expr& expr, std::uint32_t num_bits) {
  return "bits " + std::to_string(num_bits) + ";\n" + format_expr(expr) + "\n";
}

}  // namespace inbl
