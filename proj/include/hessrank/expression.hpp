#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hessrank/polynomial.hpp"
#include "hessrank/rational_function.hpp"

namespace hessrank {

/// Naming of variable indices: indices below x_count print as x1, x2, ...;
/// index x_count prints as t and x_count + 1 as u.
struct VarNames {
  std::size_t x_count = 0;

  static VarNames for_arity(std::size_t arity) { return VarNames{arity}; }
  std::string name(std::size_t index) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  /// Number of x-variables; when absent, the highest x-index in the text.
  std::optional<std::size_t> x_count;
  /// Total arity; when absent, x_count plus one slot for t and another for u
  /// when they occur.
  std::optional<std::size_t> arity;
  /// Line number reported in errors.
  std::size_t line = 1;
};

Polynomial parse_polynomial(std::string_view text, const ParseOptions& options = {});

/// Like parse_polynomial, but '/' may divide arbitrary subexpressions.
RationalFunction parse_rational_function(std::string_view text, const ParseOptions& options = {});

/// Canonical text: terms in grlex descending order, e.g. "3*x1^2*x4 - 2/3*x2".
std::string to_string(const Polynomial& p, const VarNames& names);
std::string to_string(const Polynomial& p);
/// "num" when the denominator is 1, otherwise "(num)/(den)".
std::string to_string(const RationalFunction& f, const VarNames& names);
std::string to_string(const RationalFunction& f);
std::string to_string(const Rational& q);

}  // namespace hessrank
