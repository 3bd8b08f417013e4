#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "framepot/architecture.hpp"

namespace framepot {

enum class SpectrumMode { pauli, general };

// The law of the wave vector K: distinct integer N-vectors with their masses.
// Pauli mode is exact: each mass is 2^-rank (a dyadic value that doubles
// represent exactly for rank <= 24), mean = 0 and covariance = I verified in
// integer arithmetic. General mode carries float masses and moments.
struct Spectrum {
  SpectrumMode mode = SpectrumMode::pauli;
  int n = 0;
  int N = 0;
  int rank = 0;  // pauli: GF(2) rank r; general: 0
  std::vector<std::vector<int>> omega;  // sorted lexicographically
  std::vector<double> masses;           // aligned with omega
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  double det_covariance = 1.0;
};

Spectrum build_spectrum_pauli(const CircuitArchitecture& arch, int rank_guard = kDefaultRankGuard);

Spectrum build_spectrum_general(int n, const std::vector<std::vector<long long>>& diagonals,
                                const std::vector<double>& amplitudes);

inline constexpr int kMaxKMatrixQubits = 14;

// The full 2^n x N sign matrix: row x is 1 - 2(u_x A mod 2) with u_x the
// binary n-tuple of x in ascending order, qubit 1 as the most significant bit.
std::vector<std::vector<int8_t>> full_k_matrix(const CircuitArchitecture& arch);

// Law of D = K - K' for independent copies of K.
struct DifferenceDistribution {
  SpectrumMode mode = SpectrumMode::pauli;
  int N = 0;
  int rank = 0;                          // pauli: masses are counts / 2^{2 rank}
  std::vector<std::vector<int>> deltas;  // sorted lexicographically
  std::vector<double> masses;
  std::vector<uint64_t> counts;  // pauli mode only; empty otherwise
  size_t L() const { return deltas.size(); }
};

DifferenceDistribution difference_distribution(const Spectrum& spec);

}  // namespace framepot
