#include "opcone_cli/json_io.hpp"

#include <cmath>

namespace opcone::cli {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return to_rational(j.get<double>());
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) throw ParseError("bad rational " + j.dump());
    q.canonicalize();
    return q;
  }
  if (j.is_object()) {
    const json& num = field(j, "num");
    const json& den = field(j, "den");
    auto big = [](const json& v) {
      if (v.is_number_integer()) return mpz_class(v.get<long>());
      if (v.is_string()) return mpz_class(v.get<std::string>());
      throw ParseError("rational parts must be integers or decimal strings");
    };
    const mpz_class d = big(den);
    if (d == 0) throw ParseError("rational with zero denominator");
    Rational q(big(num), d);
    q.canonicalize();
    return q;
  }
  throw ParseError("expected a rational, got " + j.dump());
}

json rational_json(const Rational& q) {
  // Values that fit a 64-bit integer are written as numbers, larger ones as strings.
  auto part = [](const mpz_class& z) -> json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  return json{{"num", part(q.get_num())}, {"den", part(q.get_den())}};
}

json rationals_json(const std::vector<Rational>& qs) {
  json out = json::array();
  for (const auto& q : qs) out.push_back(rational_json(q));
  return out;
}

HermitianMatrix parse_matrix(const json& j) {
  if (!j.is_object()) throw ParseError("expected a matrix object, got " + j.dump());
  if (j.contains("diag")) {
    const json& d = j["diag"];
    if (!d.is_array() || d.empty()) throw ParseError("\"diag\" must be a nonempty array");
    std::vector<double> entries;
    for (const auto& x : d) entries.push_back(to_double(parse_rational(x)));
    return HermitianMatrix::diagonal(entries);
  }
  const std::size_t n = size_field(j, "dim");
  if (n == 0) throw ParseError("matrix dimension must be positive");
  auto read = [&](const char* key, bool required) {
    std::vector<double> v(n * n, 0.0);
    if (!j.contains(key)) {
      if (required) throw ParseError(std::string("matrix is missing \"") + key + "\"");
      return v;
    }
    const json& a = j[key];
    if (!a.is_array() || a.size() != n * n)
      throw ParseError(std::string("matrix field \"") + key + "\" must hold dim*dim numbers");
    for (std::size_t i = 0; i < n * n; ++i) {
      if (!a[i].is_number()) throw ParseError(std::string("matrix field \"") + key + "\" must hold numbers");
      v[i] = a[i].get<double>();
      if (!std::isfinite(v[i])) throw ParseError("non-finite matrix entry");
    }
    return v;
  };
  return hermitian_from_parts(RealMatrix(n, n, read("re", true)), RealMatrix(n, n, read("im", false)));
}

std::vector<HermitianMatrix> parse_matrices(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of matrices");
  std::vector<HermitianMatrix> out;
  for (const auto& m : j) out.push_back(parse_matrix(m));
  return out;
}

json matrix_json(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = m(i, j);
      re.push_back(z.real() + 0.0);
      im.push_back(z.imag() + 0.0);
    }
  return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json matrices_json(const std::vector<HermitianMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

OperatorSubsystem parse_system(const json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("system must be an object with exactly one key");
  if (j.contains("full")) return full_matrix_algebra(size_field(j, "full"));
  if (j.contains("diagonal")) return diagonal_algebra(size_field(j, "diagonal"));
  if (j.contains("block_diagonal")) {
    const json& b = j["block_diagonal"];
    if (!b.is_array() || b.empty()) throw ParseError("\"block_diagonal\" must be a nonempty array of sizes");
    std::vector<std::size_t> sizes;
    for (const auto& s : b) {
      if (!s.is_number_unsigned()) throw ParseError("block sizes must be positive integers");
      sizes.push_back(s.get<std::size_t>());
    }
    return block_diagonal_algebra(sizes);
  }
  if (j.contains("basis")) return make_subsystem(parse_matrices(j["basis"]));
  throw ParseError("unknown system form " + j.dump());
}

QuotientSystem parse_quotient(const json& j) {
  if (j.is_object() && j.contains("null_vector")) {
    const json& v = j["null_vector"];
    if (!v.is_array()) throw ParseError("\"null_vector\" must be an array");
    std::vector<Rational> q;
    for (const auto& x : v) q.push_back(parse_rational(x));
    return QuotientSystem::from_null_vector(std::move(q));
  }
  return QuotientSystem::jkm(size_field(j, "k"), size_field(j, "m"));
}

json stats_json(const SolveStats& s) {
  return json{{"method", to_string(s.method)},
              {"iterations", s.iterations},
              {"residual", s.residual},
              {"max_violation", s.max_violation}};
}

}  // namespace opcone::cli
