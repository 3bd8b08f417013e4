#include "framepot/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>

#include "framepot/errors.hpp"

namespace framepot {

namespace {

// moment checks in exact integer arithmetic: sum w = 0, sum w_i w_j = 2^r I
void check_pauli_moments(const std::vector<std::vector<int>>& omega, int N, int rank) {
  std::vector<long long> sum(static_cast<size_t>(N), 0);
  for (const auto& w : omega)
    for (int j = 0; j < N; ++j) sum[static_cast<size_t>(j)] += w[static_cast<size_t>(j)];
  for (long long s : sum)
    if (s != 0) fail(Errc::InvalidArchitecture, "sign vectors do not average to zero");
  const long long scale = 1LL << rank;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      long long acc = 0;
      for (const auto& w : omega) acc += static_cast<long long>(w[static_cast<size_t>(i)]) * w[static_cast<size_t>(j)];
      const long long want = (i == j) ? scale : 0;
      if (acc != want) fail(Errc::InvalidArchitecture, "sign vectors are not pairwise uncorrelated");
    }
  }
}

}  // namespace

Spectrum build_spectrum_pauli(const CircuitArchitecture& arch, int rank_guard) {
  validate(arch);
  Gf2RowSpace space = gf2_rowspace(arch, rank_guard);
  const int N = static_cast<int>(arch.columns.size());

  Spectrum spec;
  spec.mode = SpectrumMode::pauli;
  spec.n = arch.n;
  spec.N = N;
  spec.rank = space.rank;
  spec.omega.reserve(space.vectors.size());
  for (const auto& v : space.vectors) {
    std::vector<int> w(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) w[static_cast<size_t>(j)] = 1 - 2 * v[static_cast<size_t>(j)];
    spec.omega.push_back(std::move(w));
  }
  std::sort(spec.omega.begin(), spec.omega.end());
  check_pauli_moments(spec.omega, N, spec.rank);

  spec.masses.assign(spec.omega.size(), std::ldexp(1.0, -spec.rank));
  spec.mean = Eigen::VectorXd::Zero(N);
  spec.covariance = Eigen::MatrixXd::Identity(N, N);
  spec.det_covariance = 1.0;
  return spec;
}

std::vector<std::vector<int8_t>> full_k_matrix(const CircuitArchitecture& arch) {
  validate(arch);
  if (arch.n > kMaxKMatrixQubits)
    fail(Errc::TooManyQubits, "full sign matrix limited to " + std::to_string(kMaxKMatrixQubits) +
                                  " qubits, got " + std::to_string(arch.n));
  const int n = arch.n;
  const size_t N = arch.columns.size();
  const uint64_t rows = uint64_t{1} << n;
  std::vector<std::vector<int8_t>> K(rows, std::vector<int8_t>(N));
  for (uint64_t x = 0; x < rows; ++x) {
    // row x: qubit 1 is the most significant bit of x, column masks keep
    // qubit i at bit i-1, so mirror x before taking parities
    uint64_t u = 0;
    for (int b = 0; b < n; ++b)
      if ((x >> b) & 1) u |= uint64_t{1} << (n - 1 - b);
    for (size_t j = 0; j < N; ++j)
      K[x][j] = static_cast<int8_t>(1 - 2 * (std::popcount(u & arch.columns[j]) & 1));
  }
  return K;
}

Spectrum build_spectrum_general(int n, const std::vector<std::vector<long long>>& diagonals,
                                const std::vector<double>& amplitudes) {
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  const size_t N = diagonals.size();
  if (N == 0) fail(Errc::SizeViolation, "need at least one spectrum row");
  const size_t L = amplitudes.size();
  if (L == 0) fail(Errc::SizeViolation, "need at least one amplitude");
  for (const auto& d : diagonals)
    if (d.size() != L) fail(Errc::SizeViolation, "spectrum rows must share the amplitude length");

  double total = 0.0;
  for (double a : amplitudes) {
    if (a < 0.0) fail(Errc::NotNormalized, "amplitudes must be nonnegative");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(Errc::NotNormalized, "amplitudes must sum to one");

  // affine independence check, exact: rank of rows (d_j - d_j(0)) must be N
  {
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(N);
    for (const auto& d : diagonals) {
      std::vector<mpz_class> row(L - 1);
      for (size_t k = 1; k < L; ++k)
        row[k - 1] = mpz_class(static_cast<long>(d[k])) - mpz_class(static_cast<long>(d[0]));
      rows.push_back(std::move(row));
    }
    size_t rank = 0;
    for (size_t col = 0; col + 1 < L && rank < N; ++col) {
      size_t piv = rank;
      while (piv < N && rows[piv][col] == 0) ++piv;
      if (piv == N) continue;
      std::swap(rows[rank], rows[piv]);
      for (size_t i = rank + 1; i < N; ++i) {
        if (rows[i][col] == 0) continue;
        // eliminate with cross-multiplication to stay in integers
        mpz_class a = rows[rank][col], b = rows[i][col];
        for (size_t k = col; k + 1 < L; ++k) rows[i][k] = rows[i][k] * a - rows[rank][k] * b;
      }
      ++rank;
    }
    if (rank < N)
      fail(Errc::DependentHamiltonians, "diagonals are affinely dependent; wave vector is degenerate");
  }

  Spectrum spec;
  spec.mode = SpectrumMode::general;
  spec.n = n;
  spec.N = static_cast<int>(N);
  spec.rank = 0;

  // law of K: K_j = d_j(lambda), lambda ~ amplitudes; differences are formed
  // downstream (difference_distribution), mirroring the sign-vector mode
  std::map<std::vector<int>, double> law;
  for (size_t a = 0; a < L; ++a) {
    const double p = amplitudes[a];
    if (p == 0.0) continue;
    std::vector<int> k(N);
    for (size_t j = 0; j < N; ++j) {
      const long long v = diagonals[j][a];
      if (v < INT32_MIN || v > INT32_MAX) fail(Errc::SizeViolation, "spectrum level overflows");
      k[j] = static_cast<int>(v);
    }
    law[std::move(k)] += p;
  }
  spec.omega.reserve(law.size());
  spec.masses.reserve(law.size());
  for (auto& [k, p] : law) {
    spec.omega.push_back(k);
    spec.masses.push_back(p);
  }

  spec.mean = Eigen::VectorXd::Zero(spec.N);
  for (size_t i = 0; i < spec.omega.size(); ++i)
    for (int j = 0; j < spec.N; ++j) spec.mean[j] += spec.masses[i] * spec.omega[i][static_cast<size_t>(j)];
  spec.covariance = Eigen::MatrixXd::Zero(spec.N, spec.N);
  for (size_t i = 0; i < spec.omega.size(); ++i)
    for (int a = 0; a < spec.N; ++a)
      for (int b = 0; b < spec.N; ++b)
        spec.covariance(a, b) += spec.masses[i] * (spec.omega[i][static_cast<size_t>(a)] - spec.mean[a]) *
                                 (spec.omega[i][static_cast<size_t>(b)] - spec.mean[b]);
  spec.det_covariance = spec.covariance.determinant();
  return spec;
}

DifferenceDistribution difference_distribution(const Spectrum& spec) {
  DifferenceDistribution diff;
  diff.mode = spec.mode;
  diff.N = spec.N;
  diff.rank = spec.rank;

  if (spec.mode == SpectrumMode::pauli) {
    // D = K - K' has entries in {-2, 0, 2}; counts are exact over 2^{2r}
    std::map<std::vector<int>, uint64_t> tally;
    for (const auto& w : spec.omega) {
      for (const auto& wp : spec.omega) {
        std::vector<int> d(static_cast<size_t>(spec.N));
        for (int j = 0; j < spec.N; ++j)
          d[static_cast<size_t>(j)] = w[static_cast<size_t>(j)] - wp[static_cast<size_t>(j)];
        ++tally[std::move(d)];
      }
    }
    const double unit = std::ldexp(1.0, -2 * spec.rank);
    for (auto& [d, c] : tally) {
      diff.deltas.push_back(d);
      diff.counts.push_back(c);
      diff.masses.push_back(unit * static_cast<double>(c));
    }
  } else {
    std::map<std::vector<int>, double> tally;
    for (size_t a = 0; a < spec.omega.size(); ++a) {
      for (size_t b = 0; b < spec.omega.size(); ++b) {
        const double p = spec.masses[a] * spec.masses[b];
        if (p == 0.0) continue;
        std::vector<int> d(static_cast<size_t>(spec.N));
        for (int j = 0; j < spec.N; ++j)
          d[static_cast<size_t>(j)] = spec.omega[a][static_cast<size_t>(j)] - spec.omega[b][static_cast<size_t>(j)];
        tally[std::move(d)] += p;
      }
    }
    for (auto& [d, p] : tally) {
      diff.deltas.push_back(d);
      diff.masses.push_back(p);
    }
  }
  return diff;
}

}  // namespace framepot
