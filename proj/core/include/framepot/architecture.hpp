#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

#include "framepot/errors.hpp"

namespace framepot {

// A commuting Pauli-Z rotation circuit: n qubits, one column bitmask per
// rotation giving the qubit subset it acts on (qubit i <-> bit i-1).
// Column order is the input order; identity/equality use the sorted multiset.
struct CircuitArchitecture {
  int n = 0;
  std::vector<uint64_t> columns;

  int N() const { return static_cast<int>(columns.size()); }
  std::vector<uint64_t> sorted_columns() const;
  bool operator==(const CircuitArchitecture& o) const {
    return n == o.n && sorted_columns() == o.sorted_columns();
  }
};

inline constexpr int kMaxQubits = 63;  // columns are 64-bit words
inline constexpr int kDefaultRankGuard = 24;
inline constexpr uint64_t kDefaultCensusCap = 10'000'000;

// rotations are 1-based qubit index lists, one per column
CircuitArchitecture architecture_from_rotations(int n, const std::vector<std::vector<int>>& rotations);
CircuitArchitecture architecture_from_columns(int n, std::vector<uint64_t> columns);
CircuitArchitecture identity_architecture(int n);
// all qubit subsets of size 1..n_prime, in ascending mask order
CircuitArchitecture all_rotations_up_to(int n, int n_prime);

// Throws DuplicateRotation / EmptyRotation / SizeViolation / TooManyQubits
// unless all architecture invariants hold.
void validate(const CircuitArchitecture& arch);

int gf2_rank_words(std::vector<uint64_t> words);
int gf2_rank(const CircuitArchitecture& arch);

// All 2^r distinct GF(2) combinations of the rows of A, each a 0/1 vector of
// length N, enumerated in Gray-code order over a row basis (vectors[0] = 0).
struct Gf2RowSpace {
  int rank = 0;
  std::vector<std::vector<uint8_t>> vectors;
};
Gf2RowSpace gf2_rowspace(const CircuitArchitecture& arch, int rank_guard = kDefaultRankGuard);

mpz_class count_architectures(int n, int N);  // C(2^n - 1, N)

// Streams every N-subset of the 2^n-1 nonzero columns in lexicographic order.
// Throws TooManyCircuits when the subset count exceeds `cap`.
void enumerate_architectures(int n, int N, const std::function<void(const CircuitArchitecture&)>& sink,
                             uint64_t cap = kDefaultCensusCap);

}  // namespace framepot
