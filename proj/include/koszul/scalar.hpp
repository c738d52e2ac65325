#ifndef KOSZUL_SCALAR_HPP
#define KOSZUL_SCALAR_HPP

#include <gmpxx.h>

#include <string>

namespace koszul {

/// Exact rational number; mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;

inline Scalar parse_scalar(const std::string &text) {
  Scalar q(text, 10);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Scalar &q) { return q.get_str(); }

inline bool is_zero(const Scalar &q) { return sgn(q) == 0; }

inline Scalar sign_scalar(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

inline Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

inline Scalar binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar(b);
}

} // namespace koszul

#endif // KOSZUL_SCALAR_HPP
