#pragma once

#include <stdexcept>
#include <string>

namespace divalg {

// Every failure mode the library reports deliberately.  Keeping them in one
// enum lets callers (and the CLI) switch on the kind instead of parsing
// message strings.
enum class Err {
  // scalar / polynomial layer
  ContextMismatch,
  DivisionByZero,
  ZeroPolynomial,
  NotMonic,
  UnsupportedDegree,
  // linear algebra
  ShapeMismatch,
  NotSquare,
  NotNonderogatory,
  // algebra layer
  NotAssociative,
  NoUnit,
  AlgebraMismatch,
  CharacteristicTwo,
  ZeroParameter,
  NotInvertible,
  CenterNotField,
  // subfield layer
  CentralGenerator,
  NotIrreducible,
  WrongDegree,
  DimensionNotSquare,
  // identities / searches
  ZeroElement,
  ZeroConstantTerm,
  NotMaximalGenerator,
  SearchExhausted,
  CentralElement,
  NotAField,
  NotGenerating,
  BadBlockStructure,
  // words / rewriting
  AlphabetMismatch,
  DegreeTooLarge,
  StepBudgetExceeded,
  // configuration / parsing
  SyntaxError,
  ValidationError,
  UnknownSymbol,
};

class Error : public std::runtime_error {
public:
  Error(Err kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Err kind() const { return kind_; }

private:
  Err kind_;
};

const char* err_name(Err kind);

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace divalg
