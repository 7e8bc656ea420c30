#pragma once

#include <fittkit/morita.hpp>
#include <fittkit/ncfit.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fittkit {

// Problem files are line oriented:
//
//   fittkit 1
//   command fitt-nc
//   order matrix 2 3
//   matrix h 2 1
//   row {0: 4, 1: 1, 2: 1, 3: 4}
//   row {0: 5, 1: 1, 2: 1, 3: 5}
//
// Entries are coefficient maps {basis-index: rational}; the basis is the group for group rings, E_ij at
// i * n + j for matrix orders, and (1, sqrt d) for commutative rings. '#' starts a comment.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

using Coefficients = std::map<std::size_t, Rational>;

struct RingSpec {
  RingKind kind = RingKind::integers;
  long radicand = 0;    // quadratic kinds
  Integer parameter;    // prime for localized, modulus for residues, 0 otherwise
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

enum class OrderSpecKind { group, table, matrix, hereditary };

struct OrderSpec {
  OrderSpecKind kind = OrderSpecKind::group;
  std::string group;                             // builtin descriptor or table name
  std::vector<std::vector<std::size_t>> table;   // table kind only
  std::size_t size = 0;                          // matrix kind only
  Integer prime;
  friend bool operator==(const OrderSpec&, const OrderSpec&) = default;
};

// End(R^n), or End(R + a) when twist lists generators of a.
struct MoritaSpec {
  std::size_t size = 0;
  std::vector<Coefficients> twist;
  friend bool operator==(const MoritaSpec&, const MoritaSpec&) = default;
};

struct ProblemMatrix {
  std::string name;
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<Coefficients>> entries;
  friend bool operator==(const ProblemMatrix&, const ProblemMatrix&) = default;
};

enum class OutputFormat { text, machine };

struct Problem {
  int version = 1;
  std::string command;
  std::vector<std::string> demo;  // demo name and arguments
  std::optional<RingSpec> ring;
  std::optional<OrderSpec> order;
  std::optional<MoritaSpec> morita;
  std::vector<ProblemMatrix> matrices;
  SamplerOptions sampler;
  OutputFormat format = OutputFormat::text;

  const ProblemMatrix* find_matrix(const std::string& name) const;
  friend bool operator==(const Problem& a, const Problem& b);
};

Problem parse_problem(const std::string& text);
std::string print_problem(const Problem& problem);

std::uint64_t fnv1a(const std::string& bytes);

struct ExecutionResult {
  int exit_code = 0;  // 0 success, 2 uncertified bounds, 1 error
  std::string output;
};

ExecutionResult execute(const Problem& problem);

// Demo problems by name; throws MathError for unknown names.
std::vector<std::string> demo_names();
Problem demo_problem(const std::vector<std::string>& demo);

}  // namespace fittkit
