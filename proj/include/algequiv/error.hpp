#pragma once

#include <stdexcept>
#include <string>

namespace algequiv {

// Error codes shared across the library. CLI maps any Error to exit code 2.
enum class Errc {
  syntax,
  nonlinear_expression,
  undeclared_symbol,
  unknown_algorithm,
  cyclic_definition,
  oracle_use,
  oracle_mismatch,
  singular,
  singular_d,
  singular_block,
  singular_denominator,
  improper_entry,
  improper_result,
  free_parameter,
  symbolic_rank,
  not_minimal,
  zero_input,
  dimension_mismatch,
  implicit_nonlinear,
  fixed_point_mismatch,
  unsupported_pair,
  io,
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::syntax: return "SyntaxError";
    case Errc::nonlinear_expression: return "NonlinearExpression";
    case Errc::undeclared_symbol: return "UndeclaredSymbol";
    case Errc::unknown_algorithm: return "UnknownAlgorithm";
    case Errc::cyclic_definition: return "CyclicDefinition";
    case Errc::oracle_use: return "OracleUse";
    case Errc::oracle_mismatch: return "OracleMismatch";
    case Errc::singular: return "Singular";
    case Errc::singular_d: return "SingularD";
    case Errc::singular_block: return "SingularBlock";
    case Errc::singular_denominator: return "SingularDenominator";
    case Errc::improper_entry: return "ImproperEntry";
    case Errc::improper_result: return "ImproperResult";
    case Errc::free_parameter: return "FreeParameter";
    case Errc::symbolic_rank: return "SymbolicRank";
    case Errc::not_minimal: return "NotMinimal";
    case Errc::zero_input: return "ZeroInput";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::implicit_nonlinear: return "ImplicitNonlinear";
    case Errc::fixed_point_mismatch: return "FixedPointMismatch";
    case Errc::unsupported_pair: return "UnsupportedPair";
    case Errc::io: return "IoError";
    case Errc::internal: return "InternalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) raise(code, what);
}

}  // namespace algequiv
