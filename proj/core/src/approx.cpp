#include "framepot/approx.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "framepot/errors.hpp"

namespace framepot {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double approx_frame_potential_log2(const mpz_class& V, double det_var_K, int N, long t) {
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  if (det_var_K <= 0.0) fail(Errc::DegenerateFit, "covariance determinant must be positive");
  return log2_mpz(V) - 0.5 * N * std::log2(4.0 * kPi * static_cast<double>(t)) -
         0.5 * std::log2(det_var_K);
}

double approx_frame_potential(const mpz_class& V, double det_var_K, int N, long t) {
  return std::exp2(approx_frame_potential_log2(V, det_var_K, N, t));
}

double haar_frame_potential_log2(int n, long t) {
  if (n < 1 || n > kMaxQubits || t < 1) fail(Errc::SizeViolation, "need 1 <= n <= 63, t >= 1");
  // -log2 C(2^n - 1 + t, t), term by term; exact enough for any n up to 63
  const double dim = std::exp2(n);
  double acc = 0.0;
  for (long i = 1; i <= t; ++i)
    acc += std::log2(dim - 1.0 + static_cast<double>(i)) - std::log2(static_cast<double>(i));
  return -acc;
}

double approx_expressiveness_log2(const mpz_class& V, double det_var_K, int n, int N, long t) {
  return haar_frame_potential_log2(n, t) - approx_frame_potential_log2(V, det_var_K, N, t);
}

double approx_expressiveness(const mpz_class& V, double det_var_K, int n, int N, long t) {
  return std::exp2(approx_expressiveness_log2(V, det_var_K, n, N, t));
}

double CltApproximation::log2_F(long t) const {
  return approx_frame_potential_log2(V, det_var_K, N, t);
}

double CltApproximation::log2_E(long t) const {
  return haar_frame_potential_log2(n, t) - log2_F(t);
}

CltApproximation clt_from_architecture(const CircuitArchitecture& arch, int rank_guard) {
  CltApproximation clt;
  clt.n = arch.n;
  clt.N = static_cast<int>(arch.columns.size());
  clt.V = lattice_volume_pauli(arch, rank_guard).V;
  clt.det_var_K = 1.0;  // exact covariance identity
  clt.log2_V = log2_mpz(clt.V);
  return clt;
}

CltApproximation clt_from_spectrum(const Spectrum& spec) {
  if (spec.mode == SpectrumMode::pauli) {
    // rebuild the walk lattice from the sign vectors themselves
    std::vector<std::vector<mpz_class>> gens;
    gens.reserve(spec.omega.size());
    for (const auto& w : spec.omega) {
      std::vector<mpz_class> row(static_cast<size_t>(spec.N));
      for (int j = 0; j < spec.N; ++j) row[static_cast<size_t>(j)] = 1 - w[static_cast<size_t>(j)];
      gens.push_back(std::move(row));
    }
    CltApproximation clt;
    clt.n = spec.n;
    clt.N = spec.N;
    clt.V = lattice_from_generators(gens).volume;
    clt.det_var_K = 1.0;
    clt.log2_V = log2_mpz(clt.V);
    return clt;
  }
  // general mode: lattice spanned by the support differences, float covariance
  std::vector<std::vector<mpz_class>> gens;
  const auto& base = spec.omega.front();
  for (size_t i = 1; i < spec.omega.size(); ++i) {
    std::vector<mpz_class> row(static_cast<size_t>(spec.N));
    for (int j = 0; j < spec.N; ++j)
      row[static_cast<size_t>(j)] =
          spec.omega[i][static_cast<size_t>(j)] - base[static_cast<size_t>(j)];
    gens.push_back(std::move(row));
  }
  CltApproximation clt;
  clt.n = spec.n;
  clt.N = spec.N;
  clt.V = lattice_from_generators(gens).volume;
  clt.det_var_K = spec.det_covariance;
  clt.log2_V = log2_mpz(clt.V);
  return clt;
}

double error_log2(const Dyadic& F_exact, double log2_F_tilde) {
  const double log2_F = F_exact.log2();
  // |F - F~| = F~ * |2^(log2 F - log2 F~) - 1|
  const double ratio = std::exp2(log2_F - log2_F_tilde);
  const double gap = std::fabs(ratio - 1.0);
  if (gap == 0.0) return -std::numeric_limits<double>::infinity();
  return log2_F_tilde + std::log2(gap);
}

ErrorFit fit_error_constant(const DyadicSeries& exact, const CltApproximation& clt, int t_lo,
                            int t_hi) {
  if (t_lo > t_hi) fail(Errc::UsageError, "empty fit range");
  const int lo = std::max(t_lo, 3);  // the first steps are far from the scaling regime
  const int hi = std::min(t_hi, exact.t_max);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int t = lo; t <= hi; ++t) {
    const double e = error_log2(exact.at(t), clt.log2_F(t));
    if (!std::isfinite(e)) continue;
    const double x = std::log(static_cast<double>(t));
    const double y = e * std::numbers::ln2;  // natural log of the error
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 5) fail(Errc::DegenerateFit, "need at least 5 usable points to fit");
  const double det = m * sxx - sx * sx;
  if (det == 0.0) fail(Errc::DegenerateFit, "fit system is singular");
  ErrorFit fit;
  fit.exponent = (m * sxy - sx * sy) / det;
  fit.c = std::exp((sy * sxx - sx * sxy) / det);
  fit.points = m;
  return fit;
}

double expressiveness_ratio(const mpz_class& v_N, const mpz_class& v_N1, long t) {
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  if (v_N1 == 0) fail(Errc::SizeViolation, "reduced volume must be positive");
  return std::sqrt(kPi * static_cast<double>(t)) *
         std::exp2(log2_mpz(v_N) - log2_mpz(v_N1));
}

}  // namespace framepot
