#pragma once

#include <gmpxx.h>

#include <vector>

#include "framepot/architecture.hpp"

namespace framepot {

// Full-rank integer lattice in Z^N given by its canonical Hermite normal
// form: rows are the basis, upper triangular with positive diagonal and
// entries above each pivot reduced modulo it.
struct IntegerLattice {
  int N = 0;
  std::vector<std::vector<mpz_class>> hnf;
  mpz_class volume;  // product of the diagonal = |det|
};

// HNF by incremental row insertion with extended-gcd elimination; exact.
// Throws RankDeficient when the generators span less than N dimensions.
IntegerLattice lattice_from_generators(const std::vector<std::vector<mpz_class>>& rows);

struct PauliVolume {
  mpz_class V;  // volume of the walk lattice, spanned by 2 * rowspace(A)
  mpz_class v;  // reduced volume V / 2^N
};
PauliVolume lattice_volume_pauli(const CircuitArchitecture& arch, int rank_guard = kDefaultRankGuard);

struct VolumeBounds {
  mpz_class V_min;     // 2^n
  mpz_class lower;     // 2^N
  mpz_class upper_sq;  // (N+1)^{N+1}; the bound itself is its square root
  double upper_log2;   // log2 (N+1)^{(N+1)/2}
  mpz_class V_max;     // (2^n)^{2^{n-1}}
};
VolumeBounds volume_bounds(int n, int N);

inline constexpr uint64_t kDefaultMinorCap = 200'000;

// Independent volume computation: gcd of all maximal (N x N) minors of the
// generator matrix, a Smith-form identity. Cross-check only; throws
// TooManyCircuits if the number of row subsets exceeds `cap`.
mpz_class volume_minor_gcd(const std::vector<std::vector<mpz_class>>& rows,
                           uint64_t cap = kDefaultMinorCap);

}  // namespace framepot
