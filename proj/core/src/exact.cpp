#include "framepot/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "xor_basis.hpp"

namespace framepot {

namespace {

// --- convolution engines over the occupation vector m -----------------------
//
// State after t steps is m in {0..t}^Nb where coordinate j counts how many of
// the t uniform rowspace draws had a 1 in column j. Increments are the 2^rb
// distinct 0/1 vectors of the (restricted) rowspace, each of mass 2^-rb, so
// counts live over the denominator 2^{rb t}.

// packed engine: m packed into one uint64, B bits per coordinate, coordinate 0
// in the most significant field so packed order is lexicographic order on m
struct PackedEngine {
  std::vector<uint64_t> offsets;  // packed increments, strictly one per rowspace vector
  std::vector<uint64_t> keys{0};  // sorted support
  std::vector<mpz_class> counts{mpz_class(1)};

  void step(uint64_t cap) {
    const size_t S = offsets.size();
    const size_t n = keys.size();
    std::vector<uint64_t> nk;
    std::vector<mpz_class> nc;
    nk.reserve(std::min<uint64_t>(cap + 1, n * S));
    nc.reserve(std::min<uint64_t>(cap + 1, n * S));
    std::vector<size_t> pos(S, 0);
    for (;;) {
      uint64_t best = UINT64_MAX;
      bool any = false;
      for (size_t c = 0; c < S; ++c) {
        if (pos[c] == n) continue;
        const uint64_t cand = keys[pos[c]] + offsets[c];
        if (!any || cand < best) {
          best = cand;
          any = true;
        }
      }
      if (!any) break;
      if (nk.size() == cap) fail(Errc::SupportTooLarge, "convolution support exceeds cap");
      nk.push_back(best);
      nc.emplace_back();
      mpz_class& acc = nc.back();
      for (size_t c = 0; c < S; ++c)
        if (pos[c] < n && keys[pos[c]] + offsets[c] == best) {
          acc += counts[pos[c]];
          ++pos[c];
        }
    }
    keys.swap(nk);
    counts.swap(nc);
  }

  mpz_class sum_sq() const {
    mpz_class s = 0;
    for (const auto& c : counts) mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
    return s;
  }
};

// generic fallback keyed by the m vector itself
struct MapEngine {
  std::vector<std::vector<int>> incs;
  std::map<std::vector<int>, mpz_class> state;

  explicit MapEngine(std::vector<std::vector<int>> increments, size_t Nb)
      : incs(std::move(increments)) {
    state.emplace(std::vector<int>(Nb, 0), mpz_class(1));
  }

  void step(uint64_t cap) {
    std::map<std::vector<int>, mpz_class> next;
    std::vector<int> key;
    for (const auto& [m, c] : state) {
      for (const auto& inc : incs) {
        key = m;
        for (size_t j = 0; j < key.size(); ++j) key[j] += inc[j];
        next[key] += c;
        if (next.size() > cap) fail(Errc::SupportTooLarge, "convolution support exceeds cap");
      }
    }
    state.swap(next);
  }

  mpz_class sum_sq() const {
    mpz_class s = 0;
    for (const auto& [m, c] : state) mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
    return s;
  }
};

int bits_per_coordinate(int t_max) { return std::bit_width(static_cast<unsigned>(t_max)); }

std::vector<uint64_t> pack_rows(const std::vector<std::vector<uint8_t>>& rows, int B, size_t Nb) {
  std::vector<uint64_t> packed;
  packed.reserve(rows.size());
  for (const auto& r : rows) {
    uint64_t key = 0;
    for (size_t j = 0; j < Nb; ++j) key |= static_cast<uint64_t>(r[j]) << (B * (Nb - 1 - j));
    packed.push_back(key);
  }
  return packed;
}

// rowspace rows restricted to `cols`, deduplicated: 2^{block rank} vectors
std::vector<std::vector<uint8_t>> restricted_rowspace(const std::vector<std::vector<uint8_t>>& basis,
                                                      const std::vector<size_t>& cols) {
  const size_t Nb = cols.size();
  const size_t nwords = (Nb + 63) / 64;
  detail::WideXorBasis elim;
  std::vector<std::vector<uint8_t>> bbasis;
  for (const auto& row : basis) {
    std::vector<uint8_t> proj(Nb);
    std::vector<uint64_t> packed(nwords, 0);
    for (size_t j = 0; j < Nb; ++j) {
      proj[j] = row[cols[j]];
      if (proj[j]) packed[j / 64] |= uint64_t{1} << (j % 64);
    }
    if (elim.insert(std::move(packed))) bbasis.push_back(std::move(proj));
  }
  const int rb = static_cast<int>(bbasis.size());
  std::vector<std::vector<uint8_t>> out;
  out.reserve(size_t{1} << rb);
  std::vector<uint8_t> cur(Nb, 0);
  out.push_back(cur);
  for (uint64_t i = 1; i < (uint64_t{1} << rb); ++i) {
    const auto& b = bbasis[static_cast<size_t>(std::countr_zero(i))];
    for (size_t j = 0; j < Nb; ++j) cur[j] ^= b[j];
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DisjointSet {
  std::vector<size_t> parent;
  explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

struct PauliStructure {
  int rank = 0;
  std::vector<std::vector<uint8_t>> basis;      // independent 0/1 rows, N wide
  std::vector<std::vector<size_t>> blocks;      // column indices per block
};

// recover a row basis from the sorted sign vectors, then split the columns
// into independent blocks: components of the fundamental-circuit graph of the
// column words over F_2^rank
PauliStructure analyze_pauli(const Spectrum& spec) {
  const size_t N = static_cast<size_t>(spec.N);
  const size_t nwords = (N + 63) / 64;
  PauliStructure st;

  detail::WideXorBasis elim;
  for (const auto& w : spec.omega) {
    std::vector<uint8_t> row(N);
    std::vector<uint64_t> packed(nwords, 0);
    for (size_t j = 0; j < N; ++j) {
      row[j] = static_cast<uint8_t>((1 - w[j]) / 2);
      if (row[j]) packed[j / 64] |= uint64_t{1} << (j % 64);
    }
    if (elim.insert(std::move(packed))) st.basis.push_back(std::move(row));
  }
  st.rank = static_cast<int>(st.basis.size());
  if (st.rank != spec.rank || (size_t{1} << st.rank) != spec.omega.size())
    fail(Errc::InvalidArchitecture, "sign vectors do not form a rowspace of the stated rank");

  // column words w_j in F_2^rank
  std::vector<uint64_t> words(N, 0);
  for (int i = 0; i < st.rank; ++i)
    for (size_t j = 0; j < N; ++j)
      if (st.basis[static_cast<size_t>(i)][j]) words[j] |= uint64_t{1} << i;

  // fundamental circuits against a greedy column basis; rep tracks which
  // basis columns express the reduced word
  DisjointSet ds(N);
  struct Pivot {
    uint64_t word = 0;
    uint64_t rep = 0;
  };
  std::vector<Pivot> piv(64);
  std::vector<size_t> basis_col;  // ordinal -> column index
  for (size_t j = 0; j < N; ++j) {
    uint64_t w = words[j], rep = 0;
    while (w) {
      const int b = std::countr_zero(w);
      if (!piv[static_cast<size_t>(b)].word) break;
      w ^= piv[static_cast<size_t>(b)].word;
      rep ^= piv[static_cast<size_t>(b)].rep;
    }
    if (w) {
      const size_t ord = basis_col.size();
      basis_col.push_back(j);
      piv[static_cast<size_t>(std::countr_zero(w))] = {w, rep | (uint64_t{1} << ord)};
    } else {
      while (rep) {
        const int o = std::countr_zero(rep);
        rep &= rep - 1;
        ds.unite(j, basis_col[static_cast<size_t>(o)]);
      }
    }
  }

  std::map<size_t, std::vector<size_t>> groups;
  for (size_t j = 0; j < N; ++j) groups[ds.find(j)].push_back(j);
  for (auto& [root, cols] : groups) st.blocks.push_back(std::move(cols));
  return st;
}

std::string block_key(const std::vector<std::vector<uint8_t>>& rows) {
  std::string key;
  key.reserve(rows.size() * (rows[0].size() + 1));
  for (const auto& r : rows) {
    key.append(reinterpret_cast<const char*>(r.data()), r.size());
    key.push_back('\x02');
  }
  return key;
}

// numerators of sum_m P(m)^2 over 2^{2 rb t} for t = 1..t_max
std::vector<mpz_class> block_series(const std::vector<std::vector<uint8_t>>& incs, int t_max,
                                    uint64_t cap) {
  const size_t Nb = incs[0].size();
  const int B = bits_per_coordinate(t_max);
  std::vector<mpz_class> nums;
  nums.reserve(static_cast<size_t>(t_max));
  if (static_cast<size_t>(B) * Nb <= 64) {
    PackedEngine eng;
    eng.offsets = pack_rows(incs, B, Nb);
    for (int t = 1; t <= t_max; ++t) {
      eng.step(cap);
      nums.push_back(eng.sum_sq());
    }
  } else {
    std::vector<std::vector<int>> int_incs;
    int_incs.reserve(incs.size());
    for (const auto& r : incs) int_incs.emplace_back(r.begin(), r.end());
    MapEngine eng(std::move(int_incs), Nb);
    for (int t = 1; t <= t_max; ++t) {
      eng.step(cap);
      nums.push_back(eng.sum_sq());
    }
  }
  return nums;
}

}  // namespace

SparseDistribution convolve_power(const Spectrum& spec, int t, uint64_t support_cap) {
  if (t < 1) fail(Errc::SizeViolation, "need t >= 1");
  SparseDistribution out;
  out.mode = spec.mode;
  out.N = spec.N;

  if (spec.mode == SpectrumMode::pauli) {
    PauliStructure st = analyze_pauli(spec);
    const size_t N = static_cast<size_t>(spec.N);
    std::vector<size_t> all(N);
    std::iota(all.begin(), all.end(), size_t{0});
    std::vector<std::vector<uint8_t>> incs = restricted_rowspace(st.basis, all);
    out.denom_log2 = static_cast<long>(st.rank) * t;

    const int B = bits_per_coordinate(t);
    std::vector<std::pair<std::vector<int>, mpz_class>> entries;
    if (static_cast<size_t>(B) * N <= 64) {
      PackedEngine eng;
      eng.offsets = pack_rows(incs, B, N);
      for (int s = 0; s < t; ++s) eng.step(support_cap);
      const uint64_t mask = (B == 64) ? ~uint64_t{0} : ((uint64_t{1} << B) - 1);
      entries.reserve(eng.keys.size());
      for (size_t i = 0; i < eng.keys.size(); ++i) {
        std::vector<int> s(N);
        for (size_t j = 0; j < N; ++j)
          s[j] = t - 2 * static_cast<int>((eng.keys[i] >> (B * (N - 1 - j))) & mask);
        entries.emplace_back(std::move(s), std::move(eng.counts[i]));
      }
    } else {
      std::vector<std::vector<int>> int_incs;
      for (const auto& r : incs) int_incs.emplace_back(r.begin(), r.end());
      MapEngine eng(std::move(int_incs), N);
      for (int s = 0; s < t; ++s) eng.step(support_cap);
      entries.reserve(eng.state.size());
      for (auto& [m, c] : eng.state) {
        std::vector<int> s(N);
        for (size_t j = 0; j < N; ++j) s[j] = t - 2 * m[j];
        entries.emplace_back(std::move(s), c);
      }
    }
    // m ascending lex maps to s descending lex; reverse to sort
    std::reverse(entries.begin(), entries.end());
    const double unit = std::ldexp(1.0, -static_cast<int>(out.denom_log2));
    out.support.reserve(entries.size());
    out.counts.reserve(entries.size());
    out.masses.reserve(entries.size());
    for (auto& [s, c] : entries) {
      out.masses.push_back(unit * c.get_d());
      out.support.push_back(std::move(s));
      out.counts.push_back(std::move(c));
    }
    return out;
  }

  // general mode: float convolution keyed by the partial sum itself
  std::map<std::vector<int>, double> state;
  state.emplace(std::vector<int>(static_cast<size_t>(spec.N), 0), 1.0);
  std::vector<int> key(static_cast<size_t>(spec.N));
  for (int s = 0; s < t; ++s) {
    std::map<std::vector<int>, double> next;
    for (const auto& [v, p] : state) {
      for (size_t i = 0; i < spec.omega.size(); ++i) {
        for (size_t j = 0; j < key.size(); ++j) key[j] = v[j] + spec.omega[i][j];
        next[key] += p * spec.masses[i];
        if (next.size() > support_cap) fail(Errc::SupportTooLarge, "convolution support exceeds cap");
      }
    }
    state.swap(next);
  }
  out.denom_log2 = 0;
  out.support.reserve(state.size());
  out.masses.reserve(state.size());
  for (auto& [v, p] : state) {
    out.support.push_back(v);
    out.masses.push_back(p);
  }
  return out;
}

DyadicSeries frame_potential_exact(const Spectrum& spec, int t_max, uint64_t support_cap) {
  if (t_max < 1) fail(Errc::SizeViolation, "need t_max >= 1");
  if (spec.mode != SpectrumMode::pauli)
    fail(Errc::UsageError, "exact series requires an exact spectrum");

  PauliStructure st = analyze_pauli(spec);

  // group identical blocks: key on the sorted restricted rowspace
  struct Shape {
    std::vector<std::vector<uint8_t>> incs;
    int rank = 0;
    unsigned long mult = 0;
  };
  std::map<std::string, Shape> shapes;
  int rank_check = 0;
  for (const auto& cols : st.blocks) {
    auto incs = restricted_rowspace(st.basis, cols);
    const int rb = static_cast<int>(std::bit_width(incs.size())) - 1;
    rank_check += rb;
    auto [it, fresh] = shapes.try_emplace(block_key(incs));
    if (fresh) {
      it->second.incs = std::move(incs);
      it->second.rank = rb;
    }
    ++it->second.mult;
  }
  if (rank_check != st.rank) {
    // factorization failed to partition the rank; fall back to one block
    shapes.clear();
    std::vector<size_t> all(static_cast<size_t>(spec.N));
    std::iota(all.begin(), all.end(), size_t{0});
    auto incs = restricted_rowspace(st.basis, all);
    Shape whole;
    whole.rank = st.rank;
    whole.incs = std::move(incs);
    whole.mult = 1;
    shapes.emplace("", std::move(whole));
  }

  DyadicSeries series;
  series.t_max = t_max;
  series.rank = st.rank;
  std::vector<mpz_class> nums(static_cast<size_t>(t_max), mpz_class(1));
  for (const auto& [key, shape] : shapes) {
    std::vector<mpz_class> part = block_series(shape.incs, t_max, support_cap);
    for (int t = 1; t <= t_max; ++t) {
      if (shape.mult > 1) {
        mpz_class powed;
        mpz_pow_ui(powed.get_mpz_t(), part[static_cast<size_t>(t - 1)].get_mpz_t(), shape.mult);
        nums[static_cast<size_t>(t - 1)] *= powed;
      } else {
        nums[static_cast<size_t>(t - 1)] *= part[static_cast<size_t>(t - 1)];
      }
    }
  }
  series.values.reserve(static_cast<size_t>(t_max));
  for (int t = 1; t <= t_max; ++t)
    series.values.push_back(Dyadic{std::move(nums[static_cast<size_t>(t - 1)]),
                                   2L * static_cast<long>(st.rank) * t});
  return series;
}

FloatSeries frame_potential_general(const Spectrum& spec, int t_max, uint64_t support_cap) {
  if (t_max < 1) fail(Errc::SizeViolation, "need t_max >= 1");
  FloatSeries out;
  out.t_max = t_max;
  std::map<std::vector<int>, double> state;
  state.emplace(std::vector<int>(static_cast<size_t>(spec.N), 0), 1.0);
  std::vector<int> key(static_cast<size_t>(spec.N));
  size_t max_support = 1;
  for (int t = 1; t <= t_max; ++t) {
    std::map<std::vector<int>, double> next;
    for (const auto& [v, p] : state) {
      for (size_t i = 0; i < spec.omega.size(); ++i) {
        for (size_t j = 0; j < key.size(); ++j) key[j] = v[j] + spec.omega[i][j];
        next[key] += p * spec.masses[i];
        if (next.size() > support_cap) fail(Errc::SupportTooLarge, "convolution support exceeds cap");
      }
    }
    state.swap(next);
    max_support = std::max(max_support, state.size());
    double f = 0.0;
    for (const auto& [v, p] : state) f += p * p;
    out.values.push_back(f);
  }
  out.forward_error = static_cast<double>(max_support) * static_cast<double>(t_max) *
                      std::numeric_limits<double>::epsilon();
  return out;
}

mpq_class closed_form_min_rotations(int n, int t) {
  if (n < 1 || t < 0) fail(Errc::SizeViolation, "need n >= 1, t >= 0");
  // r(t) = prod_{k<=t} (2k-1)/(2k) = C(2t,t)/4^t, then raise to the n-th power
  mpz_class num = 1, den = 1;
  for (int k = 1; k <= t; ++k) {
    num *= 2 * k - 1;
    den *= 2 * k;
  }
  mpq_class r(num, den);
  r.canonicalize();
  mpz_class rn, rd;
  mpz_pow_ui(rn.get_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(rd.get_mpz_t(), r.get_den().get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class out(rn, rd);
  out.canonicalize();
  return out;
}

mpq_class haar_frame_potential(int n, long t) {
  if (n < 1 || n > kMaxQubits || t < 1) fail(Errc::SizeViolation, "need 1 <= n <= 63, t >= 1");
  // 1 / C(2^n + t - 1, t), built term by term so 2^n never needs to fit a word
  mpz_class dim = pow2_mpz(static_cast<unsigned long>(n));
  mpz_class den = 1;
  for (long i = 1; i <= t; ++i) {
    den *= dim - 1 + i;
    den /= i;  // exact: running value is C(2^n - 1 + i, i)
  }
  mpq_class q(1, den);
  q.canonicalize();
  return q;
}

mpq_class expressiveness_exact(const Dyadic& F_t, int n, int t) {
  if (F_t.num == 0) fail(Errc::SizeViolation, "frame potential must be positive");
  return haar_frame_potential(n, t) / F_t.to_rational();
}

std::vector<mpq_class> expressiveness(const DyadicSeries& series, int n) {
  std::vector<mpq_class> out;
  out.reserve(series.values.size());
  for (int t = 1; t <= series.t_max; ++t) out.push_back(expressiveness_exact(series.at(t), n, t));
  return out;
}

}  // namespace framepot
