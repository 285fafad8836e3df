#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gcf237 {

using Int = mpz_class;
using Rat = mpq_class;  // canonical: denominator > 0, lowest terms

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Precision policy for certified-numeric sign resolution.  Exact operands
// ignore max_prec (refinement terminates because the value is nonzero);
// numeric-mode operands hit PrecisionExhausted at max_prec.
struct NumericConfig {
  long start_prec = 64;
  long max_prec = 4096;
};

NumericConfig& numeric_config();  // thread-local

struct NumericConfigGuard {
  explicit NumericConfigGuard(const NumericConfig& c) : saved(numeric_config()) {
    numeric_config() = c;
  }
  ~NumericConfigGuard() { numeric_config() = saved; }
  NumericConfig saved;
};

}  // namespace gcf237
