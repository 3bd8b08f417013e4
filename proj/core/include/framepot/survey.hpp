#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "framepot/architecture.hpp"

namespace framepot {

// Census of reduced lattice volumes: per rotation count N, how many circuits
// have each value of v.
struct VolumeTally {
  int n = 0;
  bool exhaustive = false;
  uint64_t samples_per_N = 0;  // 0 when exhaustive
  uint64_t seed = 0;
  uint64_t total = 0;
  std::map<int, std::map<mpz_class, uint64_t>> per_N;

  void merge(const VolumeTally& other);
};

VolumeTally census_exhaustive(int n, uint64_t cap = kDefaultCensusCap, int threads = 1);

// Uniform random N-subsets of the nonzero columns, with replacement,
// samples_per_N draws for every N in [N_lo, N_hi]; substream index of draw s
// at rotation count N is N * samples_per_N + s.
VolumeTally census_sampled_range(int n, int N_lo, int N_hi, uint64_t samples_per_N,
                                 uint64_t seed, int threads = 1);
VolumeTally census_sampled(int n, uint64_t samples_per_N, uint64_t seed, int threads = 1);

// N values of the all-rotations-up-to-n' circuits: sum_{k<=n'} C(n,k), n'=1..n.
std::vector<int> flagged_rotation_counts(int n);

struct MinVolumeRow {
  int N = 0;
  mpz_class min_v;
  double ratio_prev = 0.0;  // min_v(N) / min_v(N-1); 0 for the first row
  bool flagged = false;
};

// Requires the tally to cover a consecutive range of N.
std::vector<MinVolumeRow> min_volume_series(const VolumeTally& tally);

}  // namespace framepot
