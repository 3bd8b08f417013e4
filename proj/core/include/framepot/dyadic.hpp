#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>

namespace framepot {

inline double log2_mpz(const mpz_class& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

inline double log2_mpq(const mpq_class& q) {
  return log2_mpz(q.get_num()) - log2_mpz(q.get_den());
}

// Non-negative dyadic rational num / 2^exp2, kept unreduced.
struct Dyadic {
  mpz_class num;
  long exp2 = 0;

  double log2() const { return log2_mpz(num) - static_cast<double>(exp2); }
  double to_double() const { return std::exp2(log2()); }
  mpq_class to_rational() const {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(exp2));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
};

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline mpz_class pow2_mpz(unsigned long e) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return p;
}

}  // namespace framepot
