#include "framepot/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include "framepot/errors.hpp"
#include "framepot/rng.hpp"

namespace framepot {

namespace {

// Fixed-size work chunks claimed by an atomic cursor; per-chunk partial sums
// are combined in chunk order afterwards, so results never depend on the
// thread count.
constexpr uint64_t kChunk = 4096;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  double max_val = -std::numeric_limits<double>::infinity();
};

template <typename PerReplica>
std::vector<ChunkSums> run_chunks(uint64_t M, int threads, PerReplica&& value) {
  const uint64_t n_chunks = (M + kChunk - 1) / kChunk;
  std::vector<ChunkSums> out(static_cast<size_t>(n_chunks));
  std::atomic<uint64_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const uint64_t c = cursor.fetch_add(1);
      if (c >= n_chunks) return;
      const uint64_t lo = c * kChunk, hi = std::min(M, lo + kChunk);
      ChunkSums acc;
      double comp = 0.0, comp_sq = 0.0;  // Kahan corrections
      for (uint64_t m = lo; m < hi; ++m) {
        const double v = value(m);
        acc.max_val = std::max(acc.max_val, v);
        double y = v - comp;
        double s = acc.sum + y;
        comp = (s - acc.sum) - y;
        acc.sum = s;
        y = v * v - comp_sq;
        s = acc.sum_sq + y;
        comp_sq = (s - acc.sum_sq) - y;
        acc.sum_sq = s;
      }
      out[static_cast<size_t>(c)] = acc;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  double max_val = 0.0;
};

Moments combine(const std::vector<ChunkSums>& chunks, uint64_t M) {
  double sum = 0.0, sum_sq = 0.0, mx = -std::numeric_limits<double>::infinity();
  for (const auto& c : chunks) {  // fixed order
    sum += c.sum;
    sum_sq += c.sum_sq;
    mx = std::max(mx, c.max_val);
  }
  Moments mo;
  mo.mean = sum / static_cast<double>(M);
  if (M > 1) {
    const double var =
        std::max(0.0, (sum_sq - static_cast<double>(M) * mo.mean * mo.mean) /
                          (static_cast<double>(M) - 1.0));
    mo.sd = std::sqrt(var);
  }
  mo.max_val = mx;
  return mo;
}

}  // namespace

const char* method_name(SampleMethod m) {
  switch (m) {
    case SampleMethod::is_unbiased: return "is-unbiased";
    case SampleMethod::is_absorbing: return "is-absorbing";
    case SampleMethod::multinomial: return "multinomial";
    case SampleMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

EstimateReport importance_sampling_fp(const DifferenceDistribution& diff, int t, uint64_t M,
                                      uint64_t seed, IsMode mode, int threads) {
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  if (M < 1) fail(Errc::SizeViolation, "need at least one replica");
  const size_t L = diff.L();
  if (L == 0) fail(Errc::SizeViolation, "empty difference distribution");
  const size_t N = static_cast<size_t>(diff.N);

  size_t zero_idx = L;
  for (size_t i = 0; i < L; ++i) {
    bool all = true;
    for (size_t j = 0; j < N; ++j)
      if (diff.deltas[i][j] != 0) {
        all = false;
        break;
      }
    if (all) {
      zero_idx = i;
      break;
    }
  }
  if (zero_idx == L) fail(Errc::SizeViolation, "difference distribution misses the origin");
  const double mass0 = diff.masses[zero_idx];

  // proposal multiset: the true masses sorted descending, assigned by rank
  std::vector<double> desc = diff.masses;
  std::sort(desc.begin(), desc.end(), std::greater<double>());

  const bool absorbing = (mode == IsMode::absorbing);

  auto replica = [&](uint64_t m) -> double {
    std::mt19937_64 g = substream(seed, m);
    std::vector<int64_t> state(N, 0);
    std::vector<int64_t> ip(L);
    std::vector<size_t> order(L);
    double w = 1.0;
    bool at_origin = true;
    for (int step = 1; step <= t; ++step) {
      if (at_origin) {
        if (absorbing && step >= 2) {
          w *= mass0;
          continue;
        }
        // at the origin the inner products carry no information; the walk
        // starts from the true law, so propose from it here as well (ratio 1)
        const double u = uniform01(g);
        double acc = 0.0;
        size_t chosen = L - 1;
        for (size_t k = 0; k < L; ++k) {
          acc += diff.masses[k];
          if (u < acc) {
            chosen = k;
            break;
          }
        }
        at_origin = true;
        for (size_t j = 0; j < N; ++j) {
          state[j] += diff.deltas[chosen][j];
          if (state[j] != 0) at_origin = false;
        }
        continue;
      }
      for (size_t i = 0; i < L; ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < N; ++j)
          acc += static_cast<int64_t>(diff.deltas[i][j]) * state[j];
        ip[i] = acc;
      }
      std::iota(order.begin(), order.end(), size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return ip[a] < ip[b]; });
      const double u = uniform01(g);
      double acc = 0.0;
      size_t rank = L - 1;
      for (size_t k = 0; k < L; ++k) {
        acc += desc[k];
        if (u < acc) {
          rank = k;
          break;
        }
      }
      const size_t chosen = order[rank];
      w *= diff.masses[chosen] / desc[rank];
      at_origin = true;
      for (size_t j = 0; j < N; ++j) {
        state[j] += diff.deltas[chosen][j];
        if (state[j] != 0) at_origin = false;
      }
    }
    return at_origin ? w : 0.0;
  };

  const Moments mo = combine(run_chunks(M, threads, replica), M);
  EstimateReport rep;
  rep.estimate = mo.mean;
  rep.std_error = (M > 1) ? mo.sd / std::sqrt(static_cast<double>(M)) : 0.0;
  rep.samples = M;
  rep.seed = seed;
  rep.method = absorbing ? SampleMethod::is_absorbing : SampleMethod::is_unbiased;
  return rep;
}

void require_all_rotations(const CircuitArchitecture& arch) {
  validate(arch);
  const uint64_t top = (uint64_t{1} << arch.n) - 1;
  if (arch.columns.size() != top)
    fail(Errc::InvalidArchitecture, "estimator needs every rotation present");
  std::vector<uint64_t> s = arch.sorted_columns();
  for (uint64_t i = 0; i < top; ++i)
    if (s[static_cast<size_t>(i)] != i + 1)
      fail(Errc::InvalidArchitecture, "estimator needs every rotation present");
}

EstimateReport multinomial_fp(int n, int t, uint64_t M, uint64_t seed, int threads) {
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  if (M < 1) fail(Errc::SizeViolation, "need at least one replica");

  // log factorials up to t
  std::vector<double> lf(static_cast<size_t>(t) + 1, 0.0);
  for (int j = 2; j <= t; ++j)
    lf[static_cast<size_t>(j)] = lf[static_cast<size_t>(j) - 1] + std::log(static_cast<double>(j));
  const uint64_t bins = uint64_t{1} << n;
  const double nt = static_cast<double>(n) * static_cast<double>(t);

  // log2 of the multinomial coefficient of t uniform draws
  auto log2_coeff = [&](uint64_t m) -> double {
    std::mt19937_64 g = substream(seed, m);
    std::vector<uint64_t> draw(static_cast<size_t>(t));
    for (auto& d : draw) d = uniform_below(g, bins);
    std::sort(draw.begin(), draw.end());
    double l = lf[static_cast<size_t>(t)];
    size_t i = 0;
    while (i < draw.size()) {
      size_t j = i;
      while (j < draw.size() && draw[j] == draw[i]) ++j;
      l -= lf[j - i];
      i = j;
    }
    return l / std::numbers::ln2;
  };

  // pass 1: the global shift A2 = max log2 coefficient
  const Moments pass1 = combine(run_chunks(M, threads, log2_coeff), M);
  const double A2 = pass1.max_val;

  // pass 2: moments of the shifted values (replicas are regenerated; the
  // substreams make that exact)
  auto shifted = [&](uint64_t m) -> double { return std::exp2(log2_coeff(m) - A2); };
  const Moments mo = combine(run_chunks(M, threads, shifted), M);

  EstimateReport rep;
  rep.estimate = (mo.mean > 0.0) ? std::exp2(A2 + std::log2(mo.mean) - nt) : 0.0;
  rep.std_error = (M > 1 && mo.sd > 0.0)
                      ? std::exp2(A2 - nt + std::log2(mo.sd) -
                                  0.5 * std::log2(static_cast<double>(M)))
                      : 0.0;
  rep.samples = M;
  rep.seed = seed;
  rep.method = SampleMethod::multinomial;
  return rep;
}

double quadrature_oracle_fp(const Spectrum& spec, int t, uint64_t grid_cap) {
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  const int N = spec.N;
  if (N > 3) fail(Errc::GridTooLarge, "quadrature limited to 3 axes");
  int kmax = 0;
  for (const auto& k : spec.omega)
    for (int v : k) kmax = std::max(kmax, std::abs(v));
  const uint64_t G = (kmax == 0) ? 2 : 4ull * static_cast<uint64_t>(t) * kmax + 2;
  uint64_t points = 1;
  for (int j = 0; j < N; ++j) {
    if (points > grid_cap / G) fail(Errc::GridTooLarge, "grid exceeds cap");
    points *= G;
  }

  constexpr double kPi = 3.14159265358979323846;
  std::vector<double> phi(G);
  for (uint64_t g = 0; g < G; ++g)
    phi[static_cast<size_t>(g)] = kPi * (static_cast<double>(g) + 0.5) / static_cast<double>(G);

  std::vector<uint64_t> idx(static_cast<size_t>(N), 0);
  double sum = 0.0, comp = 0.0;
  for (uint64_t p = 0; p < points; ++p) {
    std::complex<double> c{0.0, 0.0};
    for (size_t i = 0; i < spec.omega.size(); ++i) {
      double angle = 0.0;
      for (int j = 0; j < N; ++j)
        angle += phi[static_cast<size_t>(idx[static_cast<size_t>(j)])] *
                 spec.omega[i][static_cast<size_t>(j)];
      c += spec.masses[i] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    const double v = std::pow(std::norm(c), t);
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    for (int j = N - 1; j >= 0; --j) {  // odometer
      if (++idx[static_cast<size_t>(j)] < G) break;
      idx[static_cast<size_t>(j)] = 0;
    }
  }
  return sum / static_cast<double>(points);
}

}  // namespace framepot
