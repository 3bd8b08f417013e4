#pragma once

#include <cstdint>

#include "framepot/spectrum.hpp"

namespace framepot {

enum class SampleMethod { is_unbiased, is_absorbing, multinomial, quadrature };
const char* method_name(SampleMethod m);

struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  SampleMethod method = SampleMethod::is_unbiased;
};

enum class IsMode { unbiased, absorbing };

// Sequential importance sampling of P(W_t = 0). Each step ranks the increments
// by ascending inner product with the current state (stable lexicographic
// tiebreak) and assigns them the true masses sorted descending as the
// proposal. `absorbing` freezes walks that return to the origin, multiplying
// the weight by the true mass of 0 per frozen step (a lower-biased variant);
// `unbiased` never freezes.
EstimateReport importance_sampling_fp(const DifferenceDistribution& diff, int t, uint64_t M,
                                      uint64_t seed, IsMode mode, int threads = 1);

// All-rotations estimator: F(t) = 2^{-nt} E[multinomial coefficient of t
// uniform draws over 2^n bins], evaluated in log2 space with max-shifted
// averaging.
EstimateReport multinomial_fp(int n, int t, uint64_t M, uint64_t seed, int threads = 1);

// Throws InvalidArchitecture unless arch is the all-rotations circuit.
void require_all_rotations(const CircuitArchitecture& arch);

inline constexpr uint64_t kDefaultGridCap = 100'000'000;

// Exact-by-bandwidth midpoint quadrature of pi^-N Int F(phi)^t over [0,pi]^N
// with G = 4 t max|k| + 2 points per axis; N <= 3.
double quadrature_oracle_fp(const Spectrum& spec, int t, uint64_t grid_cap = kDefaultGridCap);

}  // namespace framepot
