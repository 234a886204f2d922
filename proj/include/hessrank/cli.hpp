#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hessrank/matrix.hpp"
#include "hessrank/normform.hpp"

namespace hessrank::cli {

enum class Command { Analyze, Apex, Decompose, Reduce, Smith };
enum class Format { Json, Text };

struct AnalysisRequest {
  Command command = Command::Analyze;
  std::vector<std::string> inputs;
  std::optional<std::size_t> vars;
  std::optional<std::size_t> main_vars;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  unsigned relation_degree = 3;
  bool timing = false;
  // reduce
  std::optional<std::size_t> target;
  // smith
  std::string domain;
  std::optional<std::size_t> rank;
  std::string variant = "plain";
};

/// One polynomial of an input file with the variable split in force for it.
struct PolynomialInput {
  Polynomial h;
  std::size_t main_count = 0;
  std::size_t line = 0;
};

/// Polynomials one per line; '#' starts a comment line; the first other line
/// may be the directive "vars N main M". Command-line overrides win.
std::vector<PolynomialInput> parse_polynomial_file(const std::string& text,
                                                   std::optional<std::size_t> vars,
                                                   std::optional<std::size_t> main_vars);

struct MatrixInput {
  SymMatrix matrix;
  BezoutDomain domain;
  std::string domain_name;
};

/// First line "m n domain" with domain int or polyt, then m rows of n entries.
MatrixInput parse_matrix_file(const std::string& text);

/// Runs the command line and writes the report; returns the exit code: 0 on
/// success, 2 when a verification fails, 1 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hessrank::cli
