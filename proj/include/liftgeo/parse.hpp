#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liftgeo/expr.hpp"

namespace liftgeo {

// A function of exactly one coordinate. Without a definition it is abstract and
// differentiates to its next formal derivative; with one, every application is
// replaced by the body (differentiated as needed).
struct FuncSymbol {
  std::string name;
  std::string argument;
  std::optional<Expr> definition;

  bool is_abstract() const { return !definition.has_value(); }
  // f(arg) as an expression: the body or the abstract application.
  Expr apply() const;
};

// Names in scope for a metric file.
struct Declarations {
  std::vector<std::string> coordinates;
  std::vector<std::string> constants;
  std::map<std::string, FuncSymbol> functions;

  bool is_coordinate(std::string_view name) const;
  bool is_constant(std::string_view name) const;
};

// Parses the expression grammar and returns the simplified expression.
//
//   expr     := term (('+'|'-') term)* ;
//   term     := factor (('*'|'/') factor)* ;
//   factor   := '-' factor | atom ('^' integer)? ;
//   atom     := rational | ident primes? ( '(' expr ')' )? | '(' expr ')' ;
//   rational := integer ('/' integer)? ;
//
// Any unknown name applied to an argument is an abstract function.
Expr parse(std::string_view text);

// As above, but function names must be declared; concrete functions are
// expanded in place.
Expr parse(std::string_view text, const Declarations& decls);

bool is_identifier(std::string_view name);

}  // namespace liftgeo
