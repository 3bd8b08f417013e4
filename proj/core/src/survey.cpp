#include "framepot/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "framepot/dyadic.hpp"
#include "framepot/lattice.hpp"
#include "framepot/rng.hpp"

namespace framepot {

void VolumeTally::merge(const VolumeTally& other) {
  total += other.total;
  for (const auto& [N, hist] : other.per_N) {
    auto& mine = per_N[N];
    for (const auto& [v, c] : hist) mine[v] += c;
  }
}

namespace {

template <typename Task>
void run_tasks(uint64_t n_tasks, int threads, Task&& task) {
  if (threads <= 1 || n_tasks <= 1) {
    for (uint64_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<uint64_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const uint64_t i = cursor.fetch_add(1);
      if (i >= n_tasks) return;
      task(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

VolumeTally census_exhaustive(int n, uint64_t cap, int threads) {
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  const int N_hi = static_cast<int>((uint64_t{1} << n) - 1);
  mpz_class grand = 0;
  for (int N = n; N <= N_hi; ++N) grand += count_architectures(n, N);
  if (grand > cap)
    fail(Errc::TooManyCircuits,
         "census would visit " + grand.get_str() + " circuits, cap " + std::to_string(cap));

  VolumeTally tally;
  tally.n = n;
  tally.exhaustive = true;

  const uint64_t n_tasks = static_cast<uint64_t>(N_hi - n + 1);
  std::vector<VolumeTally> parts(static_cast<size_t>(n_tasks));
  run_tasks(n_tasks, threads, [&](uint64_t i) {
    const int N = n + static_cast<int>(i);
    VolumeTally& part = parts[static_cast<size_t>(i)];
    enumerate_architectures(n, N, [&](const CircuitArchitecture& arch) {
      PauliVolume pv = lattice_volume_pauli(arch);
      ++part.per_N[N][pv.v];
      ++part.total;
    });
  });
  for (const auto& part : parts) tally.merge(part);
  return tally;
}

VolumeTally census_sampled_range(int n, int N_lo, int N_hi, uint64_t samples_per_N, uint64_t seed,
                                 int threads) {
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  if (n > kDefaultRankGuard)
    fail(Errc::RankTooLarge, "sampled census needs rowspaces of rank up to n <= " +
                                 std::to_string(kDefaultRankGuard));
  const uint64_t top = (uint64_t{1} << n) - 1;
  if (N_lo < n || static_cast<uint64_t>(N_hi) > top || N_lo > N_hi)
    fail(Errc::SizeViolation, "need n <= N_lo <= N_hi <= 2^n - 1");
  if (samples_per_N < 1) fail(Errc::SizeViolation, "need at least one sample per N");

  VolumeTally tally;
  tally.n = n;
  tally.exhaustive = false;
  tally.samples_per_N = samples_per_N;
  tally.seed = seed;

  const uint64_t n_N = static_cast<uint64_t>(N_hi - N_lo + 1);
  const uint64_t n_tasks = n_N * samples_per_N;
  // fixed partitioning; the per-draw substreams make any partitioning yield
  // the same tally, threads only change who computes what
  std::vector<VolumeTally> parts(static_cast<size_t>(std::min<uint64_t>(n_tasks, 256)));

  run_tasks(parts.size(), threads, [&](uint64_t p) {
    VolumeTally& part = parts[static_cast<size_t>(p)];
    for (uint64_t d = p; d < n_tasks; d += parts.size()) {
      const int N = N_lo + static_cast<int>(d / samples_per_N);
      const uint64_t s = d % samples_per_N;
      std::mt19937_64 g = substream(seed, static_cast<uint64_t>(N) * samples_per_N + s);
      // uniform N-subset of the values 1..top: sparse Fisher-Yates overlay
      std::map<uint64_t, uint64_t> overlay;
      std::vector<uint64_t> cols(static_cast<size_t>(N));
      for (uint64_t i = 0; i < static_cast<uint64_t>(N); ++i) {
        const uint64_t j = i + uniform_below(g, top - i);
        auto at = [&](uint64_t pos) {
          auto it = overlay.find(pos);
          return it == overlay.end() ? pos + 1 : it->second;
        };
        const uint64_t vi = at(j);
        overlay[j] = at(i);
        cols[static_cast<size_t>(i)] = vi;
      }
      CircuitArchitecture arch = architecture_from_columns(n, std::move(cols));
      PauliVolume pv = lattice_volume_pauli(arch);
      ++part.per_N[N][pv.v];
      ++part.total;
    }
  });
  for (const auto& part : parts) tally.merge(part);
  return tally;
}

VolumeTally census_sampled(int n, uint64_t samples_per_N, uint64_t seed, int threads) {
  const int N_hi = static_cast<int>((uint64_t{1} << n) - 1);
  return census_sampled_range(n, n, N_hi, samples_per_N, seed, threads);
}

std::vector<int> flagged_rotation_counts(int n) {
  if (n < 1 || n > 30) fail(Errc::SizeViolation, "bad qubit count");
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  mpz_class acc = 0;
  for (int k = 1; k <= n; ++k) {
    acc += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    out.push_back(static_cast<int>(acc.get_ui()));
  }
  return out;
}

std::vector<MinVolumeRow> min_volume_series(const VolumeTally& tally) {
  if (tally.per_N.empty()) fail(Errc::UsageError, "empty census");
  std::vector<MinVolumeRow> out;
  const std::vector<int> flags = flagged_rotation_counts(tally.n);
  int prev_N = tally.per_N.begin()->first - 1;
  mpz_class prev_min = 0;
  for (const auto& [N, hist] : tally.per_N) {
    if (N != prev_N + 1)
      fail(Errc::UsageError, "census must cover consecutive rotation counts");
    prev_N = N;
    MinVolumeRow row;
    row.N = N;
    row.min_v = hist.begin()->first;
    row.ratio_prev =
        prev_min > 0 ? std::exp2(log2_mpz(row.min_v) - log2_mpz(prev_min)) : 0.0;
    row.flagged = std::find(flags.begin(), flags.end(), N) != flags.end();
    prev_min = row.min_v;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace framepot
