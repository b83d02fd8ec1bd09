#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "opcone/opcone.hpp"

namespace opcone::cli {

using json = nlohmann::ordered_json;

/// Malformed problem file. Maps to exit code 64.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"dim": n, "re": [n*n row-major], "im": [n*n row-major]} with "im" optional, or
/// {"diag": [...]} whose entries are numbers or {"num", "den"}. Hermitian within tol_sym.
HermitianMatrix parse_matrix(const json& j);
std::vector<HermitianMatrix> parse_matrices(const json& j);
json matrix_json(const HermitianMatrix& m);
json matrices_json(const std::vector<HermitianMatrix>& ms);

/// A number, {"num": p, "den": q}, or a string "p/q".
Rational parse_rational(const json& j);
json rational_json(const Rational& q);
json rationals_json(const std::vector<Rational>& qs);

/// {"full": d}, {"diagonal": d}, {"block_diagonal": [d1, ...]} or {"basis": [matrix, ...]}.
OperatorSubsystem parse_system(const json& j);
/// {"k": k, "m": m} or {"null_vector": [rational, ...]}.
QuotientSystem parse_quotient(const json& j);

/// Field access with a ParseError naming the missing key.
const json& field(const json& j, const char* key);
std::size_t size_field(const json& j, const char* key);

json stats_json(const SolveStats& s);

}  // namespace opcone::cli
