#pragma once

#include <gmpxx.h>

#include <vector>

#include "framepot/exact.hpp"
#include "framepot/lattice.hpp"
#include "framepot/spectrum.hpp"

namespace framepot {

// Central-limit approximation model: F~(t) = V / ((4 pi t)^{N/2} sqrt(det Var K)).
// Everything is kept in log2 space; magnitudes underflow doubles quickly.
struct CltApproximation {
  int n = 0;
  int N = 0;
  mpz_class V;
  double det_var_K = 1.0;
  double log2_V = 0.0;

  double log2_F(long t) const;
  double log2_E(long t) const;  // log2 haar(t) - log2_F(t)
};

CltApproximation clt_from_architecture(const CircuitArchitecture& arch,
                                       int rank_guard = kDefaultRankGuard);
CltApproximation clt_from_spectrum(const Spectrum& spec);

double approx_frame_potential_log2(const mpz_class& V, double det_var_K, int N, long t);
double approx_frame_potential(const mpz_class& V, double det_var_K, int N, long t);
double approx_expressiveness_log2(const mpz_class& V, double det_var_K, int n, int N, long t);
double approx_expressiveness(const mpz_class& V, double det_var_K, int n, int N, long t);

double haar_frame_potential_log2(int n, long t);

// log2 |F(t) - F~(t)| computed without leaving log space.
double error_log2(const Dyadic& F_exact, double log2_F_tilde);

// Least-squares fit of ln|F - F~| against ln t over [t_lo, t_hi], always
// excluding t < 3: |F - F~| ~= c * t^exponent. Requires >= 5 usable points.
struct ErrorFit {
  double c = 0.0;
  double exponent = 0.0;
  int points = 0;
};
ErrorFit fit_error_constant(const DyadicSeries& exact, const CltApproximation& clt,
                            int t_lo, int t_hi);

// Expressiveness gain indicator for one added rotation: sqrt(pi t) * v_N / v_N1.
double expressiveness_ratio(const mpz_class& v_N, const mpz_class& v_N1, long t);

}  // namespace framepot
