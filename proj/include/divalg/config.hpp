#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "divalg/algebra.hpp"
#include "divalg/exactfield.hpp"

namespace divalg {

// One parsed summand of an element expression: coefficient times basis
// symbol.  An empty symbol means a multiple of the algebra unit.
struct ElementTerm {
  mpq_class coeff;
  std::string symbol;
  bool operator==(const ElementTerm&) const = default;
};

// Linear element expression: a sum of scaled basis symbols.  Terms are kept
// in input order and never merged, so print/parse is an exact inverse pair.
struct ElementExpr {
  std::vector<ElementTerm> terms;
  bool operator==(const ElementExpr&) const = default;
};

// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*
//          term := coeff ('*' symbol)? | symbol
//          coeff := int ('/' positive_int)?
//          symbol := 'i' | 'j' | 'k' | '1' | 'e'<digit><digit> | 'b'<digits>
// Whitespace-insensitive.  Errors: SyntaxError (with column).
ElementExpr parse_element_expr(std::string_view text);

// Canonical rendering; parse_element_expr(print_element_expr(e)) == e.
std::string print_element_expr(const ElementExpr& e);

// Resolves symbols against the algebra's basis names and sums the terms.
// Errors: UnknownSymbol; DivisionByZero when a denominator vanishes in the
// coefficient field.
AlgebraElem eval_element_expr(const ElementExpr& e, const AlgebraPtr& alg);

// parse + eval in one step.
AlgebraElem parse_element(std::string_view text, const AlgebraPtr& alg);

// Renders an element as a re-parseable expression in basis names ("0" for
// the zero element).
std::string format_element(const AlgebraElem& x);

// One structure-constant assignment c[i][j][k] = value of a table algebra.
struct TableEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  std::string value;
  bool operator==(const TableEntry&) const = default;
};

// Parsed configuration: the scalar field, the algebra over it, and an
// optional subfield generator.  All strings are canonical (re-rendered
// literals), so parse_config(print_config(c)) == c.
struct Config {
  std::string field_kind = "rational";  // "rational" | "prime"
  std::int64_t modulus = 0;             // prime fields only

  std::string algebra_kind = "quaternion";  // "quaternion" | "matrix" | "table"
  std::string quat_a = "-1";
  std::string quat_b = "-1";
  int matrix_n = 2;
  int table_dim = 0;
  std::vector<TableEntry> table_entries;  // sorted by (i, j, k)

  std::optional<std::string> generator;  // element expression

  bool operator==(const Config&) const = default;

  FieldCtx make_field() const;
  AlgebraPtr make_algebra() const;
};

// The built-in setting used when no config file is given: rational
// quaternions (-1, -1) with subfield generator i.
Config default_config();

// Sectioned key = value format.  Sections [field], [algebra], [subfield];
// comments run from '#' to end of line; unknown keys, duplicate keys, and
// text outside a section are rejected.
// Errors: SyntaxError (with line number); ValidationError (key and reason).
Config parse_config(std::string_view text);

// Canonical rendering; parse_config(print_config(c)) == c for parsed configs.
std::string print_config(const Config& c);

}  // namespace divalg
