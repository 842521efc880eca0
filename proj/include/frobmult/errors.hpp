#ifndef FROBMULT_ERRORS_HPP
#define FROBMULT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frobmult {

// Malformed input at the API level: mismatched rings, ranks,
// inhomogeneous data, non-prime modulus, and the like.
struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem-file or polynomial-text syntax errors.
struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t line = 0, std::size_t col = 0)
      : std::runtime_error(msg), line(line), col(col) {}
  std::size_t line;
  std::size_t col;
};

// Mathematically well-formed input for which the requested invariant is
// undefined: infinite lengths, failed compatibility checks.
struct incompatible_error : std::runtime_error {
  explicit incompatible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource limits: exponent overflow under Frobenius twists, standard
// monomial boxes beyond the enumeration cap.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace frobmult

#endif
