// Exact rational scalars and the error vocabulary shared by the whole engine.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace infty {

using Rat = mpq_class;
using Int = mpz_class;

// Every failure mode surfaces as an InftyError carrying a stable machine
// readable code (e.g. "CompositionNonzero") plus a human readable message.
struct InftyError : std::runtime_error {
  std::string code;
  InftyError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw InftyError(code, msg);
}

inline void require(bool ok, const std::string& code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

// Canonical "p/q" rendering ("p" when q == 1).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parse "p/q" or "p"; rejects q == 0 and junk.
inline Rat rat_parse(const std::string& s) {
  try {
    Rat r(s);
    if (r.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail("ParseError", "bad rational literal '" + s + "'");
  }
}

// Combined bit length of numerator and denominator; the pivoting heuristic.
inline size_t rat_bits(const Rat& r) {
  return mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
}

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace infty
