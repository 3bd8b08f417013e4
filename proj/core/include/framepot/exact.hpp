#pragma once

#include <gmpxx.h>

#include <vector>

#include "framepot/dyadic.hpp"
#include "framepot/spectrum.hpp"

namespace framepot {

inline constexpr uint64_t kDefaultSupportCap = 50'000'000;

// Exact frame-potential series: values[t-1] = F(t) with denominator 2^{2*rank*t}.
struct DyadicSeries {
  int t_max = 0;
  int rank = 0;
  std::vector<Dyadic> values;
  const Dyadic& at(int t) const { return values.at(static_cast<size_t>(t) - 1); }
};

// Exact law of S_t = K_1 + ... + K_t (i.i.d. copies of K).
struct SparseDistribution {
  SpectrumMode mode = SpectrumMode::pauli;
  int N = 0;
  long denom_log2 = 0;                    // pauli: rank * t
  std::vector<std::vector<int>> support;  // sorted lexicographically
  std::vector<mpz_class> counts;          // pauli: mass = count / 2^denom_log2
  std::vector<double> masses;             // general mode
};

SparseDistribution convolve_power(const Spectrum& spec, int t,
                                  uint64_t support_cap = kDefaultSupportCap);

// F(t) = sum_s P(S_t = s)^2 for t = 1..t_max, exact. Pauli mode only; the
// work is factorized across independent coordinate blocks of the rowspace.
DyadicSeries frame_potential_exact(const Spectrum& spec, int t_max,
                                   uint64_t support_cap = kDefaultSupportCap);

// Float fallback for general-mode spectra; forward_error is a crude
// support-size * epsilon bound per t_max step.
struct FloatSeries {
  int t_max = 0;
  std::vector<double> values;
  double forward_error = 0.0;
};
FloatSeries frame_potential_general(const Spectrum& spec, int t_max,
                                    uint64_t support_cap = kDefaultSupportCap);

// (C(2t,t)/4^t)^n via the ratio recurrence r(t) = r(t-1)(2t-1)/(2t).
mpq_class closed_form_min_rotations(int n, int t);

mpq_class haar_frame_potential(int n, long t);  // 1 / C(2^n + t - 1, 2^n - 1)

// E(t) = haar(t) / F(t), exact.
mpq_class expressiveness_exact(const Dyadic& F_t, int n, int t);
std::vector<mpq_class> expressiveness(const DyadicSeries& series, int n);

}  // namespace framepot
