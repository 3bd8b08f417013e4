#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "framepot/architecture.hpp"
#include "framepot/dyadic.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(TESTS_DATA_DIR) + "/" + name;
}

// a/2^x <= b/2^y as exact integers: a*2^y <= b*2^x.
inline bool dyadic_leq(const framepot::Dyadic& a, const framepot::Dyadic& b) {
  mpz_class lhs = a.num, rhs = b.num;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(b.exp2));
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(a.exp2));
  return lhs <= rhs;
}

inline bool dyadic_eq_rational(const framepot::Dyadic& a, const mpq_class& q) {
  return a.to_rational() == q;
}

// Random N distinct nonzero column masks on n qubits.
inline framepot::CircuitArchitecture random_architecture(std::mt19937_64& g, int n, int N) {
  const uint64_t top = (uint64_t{1} << n) - 1;
  std::vector<uint64_t> pool(top);
  for (uint64_t v = 1; v <= top; ++v) pool[v - 1] = v;
  for (int i = 0; i < N; ++i) {
    size_t j = i + static_cast<size_t>(g() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<size_t>(N));
  return framepot::architecture_from_columns(n, std::move(pool));
}

}  // namespace testutil
