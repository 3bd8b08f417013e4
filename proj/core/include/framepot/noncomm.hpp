#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>

namespace framepot {

enum class PauliOp : uint8_t { I, X, Y, Z };
const char* pauli_name(PauliOp p);

// Two 2-qubit Hamiltonians H_j = O1 (x) O2 with Pauli/identity factors.
struct PauliPair {
  std::array<PauliOp, 2> h1{PauliOp::I, PauliOp::I};
  std::array<PauliOp, 2> h2{PauliOp::I, PauliOp::I};
  bool commutes() const;
};

struct Mode {
  int8_t k1, k2, kp1, kp2;
  auto operator<=>(const Mode&) const = default;
};

// Coefficients of f(theta, theta') = <psi0| U(theta)^dag U(theta') |psi0> on
// the modes e^{i theta.k} e^{i theta'.k'}, psi0 = |+>|+>. Entries with
// modulus < 1e-12 are dropped.
struct BiFourierTable {
  std::map<Mode, std::complex<double>> coeff;
};

BiFourierTable bifourier_coefficients(const PauliPair& pair);

enum class Representation { probabilistic, non_probabilistic };

// probabilistic iff every coefficient is real in [0,1] and the sum is 1, all
// within 1e-10.
Representation classify_representation(const BiFourierTable& table);

struct NoncommCensus {
  int total = 0;
  int noncommuting = 0;
  int probabilistic_noncommuting = 0;
  int non_probabilistic = 0;
};

// Iterates all 16 x 16 ordered Hamiltonian pairs.
NoncommCensus census_2q();

}  // namespace framepot
