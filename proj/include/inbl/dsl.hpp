#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "inbl/expr.hpp"

namespace inbl {

// A parsed `.nbl` document: the declared system size and its superposition.
struct DslDocument {
  std::uint32_t num_bits;
  Expr expr;
};

// Grammar (whitespace-insensitive, '#' starts a line comment):
//
//   document      := 'bits' INT ';' superposition
//   superposition := ['-'] term (('+'|'-') term)*
//   term          := factor ('*' factor)*
//   factor        := ref | '(' superposition ')' | builtin | INT
//   ref           := 'R' INT '_' ('0'|'1')
//   builtin       := ('U'|'EVEN'|'ODD') ['(' INT ')']
//
// An INT factor scales the term's coefficient. A bare builtin uses the
// declared size. `default_bits` stands in for a missing header.
DslDocument parse_dsl(const std::string& text, std::optional<std::uint32_t> default_bits = std::nullopt);

// Canonical text of an expression body: refs ascending inside products,
// sum terms and non-ref factors sorted lexicographically.
std::string format_expr(const Expr& expr);
// Header plus canonical body, newline-terminated.
std::string format_dsl(const Expr& expr, std::uint32_t num_bits);

}  // namespace inbl
