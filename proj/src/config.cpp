#include "divalg/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>
#include <tuple>
#include <utility>

namespace divalg {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

[[noreturn]] void syntax_at(std::size_t col, const std::string& what) {
  fail(Err::SyntaxError, what + " at column " + std::to_string(col + 1));
}

// Reduces a rational to an element of the configured field.  Prime fields
// take the residues of numerator and denominator; a vanishing denominator in
// characteristic p has no value.
FieldElem field_from_mpq(const FieldCtx& ctx, const mpq_class& q) {
  if (ctx.is_rational()) return FieldElem::from_mpq(ctx, q);
  if (ctx.kind() != FieldKind::Prime) {
    fail(Err::ValidationError, "rational coefficients only make sense over Q or F_p");
  }
  const std::int64_t p = ctx.prime_modulus();
  const mpz_class pz(static_cast<long>(p));
  mpz_class num = q.get_num() % pz;
  mpz_class den = q.get_den() % pz;
  if (num < 0) num += pz;
  if (den < 0) den += pz;
  if (den == 0) {
    fail(Err::DivisionByZero, "denominator of " + q.get_str() + " vanishes modulo " +
                                  std::to_string(p));
  }
  const FieldElem n = FieldElem::from_int(ctx, num.get_si());
  const FieldElem d = FieldElem::from_int(ctx, den.get_si());
  return n * d.inverse();
}

}  // namespace

ElementExpr parse_element_expr(std::string_view text) {
  ElementExpr out;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  const auto scan_digits = [&]() -> std::string {
    const std::size_t start = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i == start) syntax_at(i, "expected digits");
    return std::string(text.substr(start, i - start));
  };
  // A symbol: i, j, k, 1, e<digit><digit>, b<digits>; must end at a
  // non-identifier character.
  const auto scan_symbol = [&]() -> std::string {
    const std::size_t start = i;
    std::string sym;
    const char c = text[i];
    if (c == 'i' || c == 'j' || c == 'k' || c == '1') {
      sym = std::string(1, c);
      ++i;
    } else if (c == 'e') {
      ++i;
      if (i + 1 >= text.size() || !is_digit(text[i]) || !is_digit(text[i + 1])) {
        syntax_at(start, "matrix symbol needs two digits, like e12");
      }
      sym = std::string("e") + text[i] + text[i + 1];
      i += 2;
    } else if (c == 'b') {
      ++i;
      sym = "b" + scan_digits();
    } else {
      syntax_at(start, std::string("unexpected character '") + c + "'");
    }
    if (i < text.size() && is_word_char(text[i])) {
      syntax_at(i, "trailing characters after symbol " + sym);
    }
    return sym;
  };

  skip_ws();
  if (i == text.size()) fail(Err::SyntaxError, "empty element expression");
  bool negative = false;
  // Optional leading sign.
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  for (;;) {
    skip_ws();
    if (i == text.size()) syntax_at(i, "expected a term");
    ElementTerm term;
    char c = text[i];
    bool coeff_negative = negative;
    if (c == '+' || c == '-') {  // sign belonging to the coefficient itself
      if (c == '-') coeff_negative = !coeff_negative;
      ++i;
      skip_ws();
      if (i == text.size() || !is_digit(text[i])) syntax_at(i, "expected digits after sign");
      c = text[i];
    }
    if (is_digit(c)) {
      const std::string num = scan_digits();
      std::string den = "1";
      if (i < text.size() && text[i] == '/') {
        ++i;
        den = scan_digits();
        if (mpz_class(den) == 0) syntax_at(i, "zero denominator");
      }
      term.coeff = mpq_class(mpz_class(num), mpz_class(den));
      term.coeff.canonicalize();
      if (coeff_negative) term.coeff = -term.coeff;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
        if (i == text.size()) syntax_at(i, "expected a symbol after '*'");
        term.symbol = scan_symbol();
      } else if (i < text.size() && is_word_char(text[i])) {
        syntax_at(i, "expected '*' between coefficient and symbol");
      }
    } else {
      term.symbol = scan_symbol();
      term.coeff = coeff_negative ? -1 : 1;
    }
    if (term.symbol == "1") term.symbol.clear();  // the unit symbol is a scalar
    out.terms.push_back(std::move(term));
    skip_ws();
    if (i == text.size()) return out;
    if (text[i] != '+' && text[i] != '-') {
      syntax_at(i, std::string("expected '+' or '-', found '") + text[i] + "'");
    }
    negative = text[i] == '-';
    ++i;
  }
}

std::string print_element_expr(const ElementExpr& e) {
  std::string out;
  bool first = true;
  for (const auto& term : e.terms) {
    const bool negative = term.coeff < 0;
    mpq_class mag = negative ? mpq_class(-term.coeff) : term.coeff;
    std::string body;
    if (term.symbol.empty()) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = term.symbol;
    } else {
      body = mag.get_str() + "*" + term.symbol;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  if (out.empty()) fail(Err::ValidationError, "cannot print an empty expression");
  return out;
}

AlgebraElem eval_element_expr(const ElementExpr& e, const AlgebraPtr& alg) {
  const FieldCtx& F = alg->ctx();
  const std::vector<std::string>& names = alg->names();
  AlgebraElem acc(alg);
  for (const auto& term : e.terms) {
    const FieldElem c = field_from_mpq(F, term.coeff);
    if (term.symbol.empty()) {
      acc += AlgebraElem::scalar(alg, c);
      continue;
    }
    const auto it = std::find(names.begin(), names.end(), term.symbol);
    if (it == names.end()) {
      fail(Err::UnknownSymbol,
           "symbol \"" + term.symbol + "\" is not a basis name of this algebra");
    }
    const int idx = static_cast<int>(it - names.begin());
    acc += AlgebraElem::scalar(alg, c) * AlgebraElem::basis(alg, idx);
  }
  return acc;
}

AlgebraElem parse_element(std::string_view text, const AlgebraPtr& alg) {
  return eval_element_expr(parse_element_expr(text), alg);
}

std::string format_element(const AlgebraElem& x) {
  const AlgebraPtr& alg = x.alg();
  const FieldCtx& F = alg->ctx();
  const FieldElem one = FieldElem::one(F);
  std::string out;
  bool first = true;
  for (int t = 0; t < alg->dim(); ++t) {
    const FieldElem& c = x.coord(t);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    const bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    const std::string& name = alg->names()[static_cast<std::size_t>(t)];
    std::string body;
    if (name == "1") {
      body = cs;
    } else if (c == one || (negative && -c == one)) {
      body = name;
    } else {
      body = cs + "*" + name;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

std::int64_t parse_int_value(const std::string& key, const std::string& value) {
  std::int64_t n = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, n);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(Err::ValidationError, "key " + key + ": expected an integer, got \"" + value + "\"");
  }
  return n;
}

bool probably_prime(std::int64_t p) {
  if (p < 2) return false;
  mpz_class m(static_cast<long>(p));
  return mpz_probab_prime_p(m.get_mpz_t(), 40) > 0;
}

// Parses a key of the exact shape c[i][j][k].
std::optional<std::array<int, 3>> parse_constant_key(const std::string& key) {
  if (key.empty() || key[0] != 'c') return std::nullopt;
  std::array<int, 3> idx{};
  std::size_t pos = 1;
  for (int slot = 0; slot < 3; ++slot) {
    if (pos >= key.size() || key[pos] != '[') return std::nullopt;
    ++pos;
    std::size_t start = pos;
    while (pos < key.size() && is_digit(key[pos])) ++pos;
    if (pos == start || pos >= key.size() || key[pos] != ']') return std::nullopt;
    int parsed = 0;
    const auto res = std::from_chars(key.data() + start, key.data() + pos, parsed);
    if (res.ec != std::errc() || res.ptr != key.data() + pos) return std::nullopt;
    idx[static_cast<std::size_t>(slot)] = parsed;
    ++pos;
  }
  if (pos != key.size()) return std::nullopt;
  return idx;
}

}  // namespace

FieldCtx Config::make_field() const {
  if (field_kind == "rational") return FieldCtx::rational();
  if (field_kind == "prime") return FieldCtx::prime(modulus);
  fail(Err::ValidationError, "key kind: unknown field kind \"" + field_kind + "\"");
}

AlgebraPtr Config::make_algebra() const {
  const FieldCtx F = make_field();
  if (algebra_kind == "quaternion") {
    return quaternion_algebra(F, FieldElem::parse(F, quat_a), FieldElem::parse(F, quat_b));
  }
  if (algebra_kind == "matrix") {
    return matrix_algebra(F, matrix_n);
  }
  if (algebra_kind == "table") {
    const FieldElem zero = FieldElem::zero(F);
    std::vector<std::vector<std::vector<FieldElem>>> constants(
        static_cast<std::size_t>(table_dim),
        std::vector<std::vector<FieldElem>>(
            static_cast<std::size_t>(table_dim),
            std::vector<FieldElem>(static_cast<std::size_t>(table_dim), zero)));
    for (const auto& ent : table_entries) {
      constants[static_cast<std::size_t>(ent.i)][static_cast<std::size_t>(ent.j)]
               [static_cast<std::size_t>(ent.k)] = FieldElem::parse(F, ent.value);
    }
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(table_dim));
    for (int t = 0; t < table_dim; ++t) names.push_back("b" + std::to_string(t));
    return AlgebraDef::make(F, table_dim, std::move(names), constants);
  }
  fail(Err::ValidationError, "key kind: unknown algebra kind \"" + algebra_kind + "\"");
}

Config default_config() {
  Config c;
  c.generator = "i";
  return c;
}

Config parse_config(std::string_view text) {
  Config c;

  enum class Section { None, Field, Algebra, Subfield };
  Section section = Section::None;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;  // qualified as "section.key"

  bool kind_field_set = false, modulus_set = false;
  bool kind_alg_set = false, a_set = false, b_set = false, n_set = false, dim_set = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos));
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto err_line = [&](const std::string& what) -> std::string {
      return "line " + std::to_string(line_no) + ": " + what;
    };

    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line.back() != ']') fail(Err::SyntaxError, err_line("unterminated section header"));
      const std::string name = line.substr(1, line.size() - 2);
      if (name == "field") {
        section = Section::Field;
      } else if (name == "algebra") {
        section = Section::Algebra;
      } else if (name == "subfield") {
        section = Section::Subfield;
      } else {
        fail(Err::SyntaxError, err_line("unknown section [" + name + "]"));
      }
      if (!seen_sections.insert(name).second) {
        fail(Err::SyntaxError, err_line("duplicate section [" + name + "]"));
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(Err::SyntaxError, err_line("expected key = value"));
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (const auto ke = key.find_last_not_of(" \t"); ke != std::string::npos) {
      key.erase(ke + 1);
    } else {
      key.clear();
    }
    if (const auto vs = value.find_first_not_of(" \t"); vs != std::string::npos) {
      value.erase(0, vs);
    } else {
      value.clear();
    }
    if (key.empty()) fail(Err::SyntaxError, err_line("missing key before '='"));
    if (value.empty()) fail(Err::SyntaxError, err_line("missing value for key " + key));
    if (section == Section::None) {
      fail(Err::SyntaxError, err_line("key " + key + " outside any section"));
    }
    const std::string qualified =
        (section == Section::Field ? "field." : section == Section::Algebra ? "algebra." : "subfield.") +
        key;
    if (!seen_keys.insert(qualified).second) {
      fail(Err::SyntaxError, err_line("duplicate key " + key));
    }

    switch (section) {
      case Section::Field:
        if (key == "kind") {
          c.field_kind = value;
          kind_field_set = true;
        } else if (key == "modulus") {
          c.modulus = parse_int_value(key, value);
          modulus_set = true;
        } else {
          fail(Err::SyntaxError, err_line("unknown key " + key + " in [field]"));
        }
        break;
      case Section::Algebra:
        if (key == "kind") {
          c.algebra_kind = value;
          kind_alg_set = true;
        } else if (key == "a") {
          c.quat_a = value;
          a_set = true;
        } else if (key == "b") {
          c.quat_b = value;
          b_set = true;
        } else if (key == "n") {
          c.matrix_n = static_cast<int>(parse_int_value(key, value));
          n_set = true;
        } else if (key == "dim") {
          c.table_dim = static_cast<int>(parse_int_value(key, value));
          dim_set = true;
        } else if (const auto idx = parse_constant_key(key)) {
          c.table_entries.push_back(TableEntry{(*idx)[0], (*idx)[1], (*idx)[2], value});
        } else {
          fail(Err::SyntaxError, err_line("unknown key " + key + " in [algebra]"));
        }
        break;
      case Section::Subfield:
        if (key == "generator") {
          c.generator = value;
        } else {
          fail(Err::SyntaxError, err_line("unknown key " + key + " in [subfield]"));
        }
        break;
      case Section::None:
        break;
    }
  }
  (void)kind_field_set;
  (void)kind_alg_set;

  // Field validation.
  if (c.field_kind == "rational") {
    if (modulus_set) fail(Err::ValidationError, "key modulus: only valid for prime fields");
  } else if (c.field_kind == "prime") {
    if (!modulus_set) fail(Err::ValidationError, "key modulus: required for prime fields");
    if (!probably_prime(c.modulus)) {
      fail(Err::ValidationError,
           "key modulus: " + std::to_string(c.modulus) + " is not prime");
    }
  } else {
    fail(Err::ValidationError, "key kind: unknown field kind \"" + c.field_kind + "\"");
  }
  const FieldCtx F = c.make_field();

  // Algebra validation; kind-specific keys only, canonical literal forms.
  if (c.algebra_kind == "quaternion") {
    if (n_set) fail(Err::ValidationError, "key n: only valid for matrix algebras");
    if (dim_set || !c.table_entries.empty()) {
      fail(Err::ValidationError, "key dim/c[..]: only valid for table algebras");
    }
    const FieldElem a = FieldElem::parse(F, c.quat_a);
    const FieldElem b = FieldElem::parse(F, c.quat_b);
    if (a.is_zero()) fail(Err::ValidationError, "key a: must be nonzero");
    if (b.is_zero()) fail(Err::ValidationError, "key b: must be nonzero");
    c.quat_a = a.str();
    c.quat_b = b.str();
  } else if (c.algebra_kind == "matrix") {
    if (a_set || b_set) fail(Err::ValidationError, "key a/b: only valid for quaternion algebras");
    if (dim_set || !c.table_entries.empty()) {
      fail(Err::ValidationError, "key dim/c[..]: only valid for table algebras");
    }
    if (c.matrix_n < 1 || c.matrix_n > 9) {
      fail(Err::ValidationError,
           "key n: matrix size must be between 1 and 9 (basis names e<row><col>)");
    }
  } else if (c.algebra_kind == "table") {
    if (a_set || b_set) fail(Err::ValidationError, "key a/b: only valid for quaternion algebras");
    if (n_set) fail(Err::ValidationError, "key n: only valid for matrix algebras");
    if (!dim_set) fail(Err::ValidationError, "key dim: required for table algebras");
    if (c.table_dim < 1 || c.table_dim > 64) {
      fail(Err::ValidationError, "key dim: must be between 1 and 64");
    }
    std::set<std::array<int, 3>> seen_idx;
    for (auto& ent : c.table_entries) {
      const std::string label =
          "c[" + std::to_string(ent.i) + "][" + std::to_string(ent.j) + "][" +
          std::to_string(ent.k) + "]";
      if (ent.i >= c.table_dim || ent.j >= c.table_dim || ent.k >= c.table_dim) {
        fail(Err::ValidationError, "key " + label + ": index outside dimension " +
                                       std::to_string(c.table_dim));
      }
      if (!seen_idx.insert({ent.i, ent.j, ent.k}).second) {
        fail(Err::ValidationError, "key " + label + ": duplicate entry");
      }
      ent.value = FieldElem::parse(F, ent.value).str();
    }
    std::sort(c.table_entries.begin(), c.table_entries.end(),
              [](const TableEntry& x, const TableEntry& y) {
                return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
              });
  } else {
    fail(Err::ValidationError, "key kind: unknown algebra kind \"" + c.algebra_kind + "\"");
  }

  // Subfield generator: validated against the configured algebra, stored in
  // canonical printed form.
  if (c.generator) {
    const AlgebraPtr alg = c.make_algebra();
    const ElementExpr expr = parse_element_expr(*c.generator);
    (void)eval_element_expr(expr, alg);
    c.generator = print_element_expr(expr);
  }
  return c;
}

std::string print_config(const Config& c) {
  std::string out = "[field]\nkind = " + c.field_kind + "\n";
  if (c.field_kind == "prime") out += "modulus = " + std::to_string(c.modulus) + "\n";
  out += "[algebra]\nkind = " + c.algebra_kind + "\n";
  if (c.algebra_kind == "quaternion") {
    out += "a = " + c.quat_a + "\nb = " + c.quat_b + "\n";
  } else if (c.algebra_kind == "matrix") {
    out += "n = " + std::to_string(c.matrix_n) + "\n";
  } else if (c.algebra_kind == "table") {
    out += "dim = " + std::to_string(c.table_dim) + "\n";
    for (const auto& ent : c.table_entries) {
      out += "c[" + std::to_string(ent.i) + "][" + std::to_string(ent.j) + "][" +
             std::to_string(ent.k) + "] = " + ent.value + "\n";
    }
  }
  if (c.generator) out += "[subfield]\ngenerator = " + *c.generator + "\n";
  return out;
}

}  // namespace divalg
