#include "framepot/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "framepot/dyadic.hpp"

namespace framepot {

namespace {

struct Int64Overflow {};

int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Int64Overflow{};
  return static_cast<int64_t>(v);
}

// iterative extended gcd; g > 0, s*a + t*b = g
int64_t egcd64(int64_t a, int64_t b, int64_t& s, int64_t& t) {
  int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const int64_t q = r0 / r1;
    r0 = checked(static_cast<__int128>(r0) - static_cast<__int128>(q) * r1);
    std::swap(r0, r1);
    s0 = checked(static_cast<__int128>(s0) - static_cast<__int128>(q) * s1);
    std::swap(s0, s1);
    t0 = checked(static_cast<__int128>(t0) - static_cast<__int128>(q) * t1);
    std::swap(t0, t1);
  }
  if (r0 < 0) {
    r0 = checked(-static_cast<__int128>(r0));
    s0 = checked(-static_cast<__int128>(s0));
    t0 = checked(-static_cast<__int128>(t0));
  }
  s = s0;
  t = t0;
  return r0;
}

int64_t floor_div64(int64_t a, int64_t b) {  // b > 0
  int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

// Hermite form over int64 with overflow bail-out; true on success.
bool hnf_int64(const std::vector<std::vector<int64_t>>& rows, size_t N,
               std::vector<std::vector<int64_t>>& out) {
  std::vector<std::vector<int64_t>> piv(N);
  try {
    for (const auto& src : rows) {
      std::vector<int64_t> w = src;
      for (size_t j = 0; j < N; ++j) {
        if (w[j] == 0) continue;
        if (piv[j].empty()) {
          if (w[j] < 0)
            for (size_t k = j; k < N; ++k) w[k] = checked(-static_cast<__int128>(w[k]));
          piv[j] = std::move(w);
          break;
        }
        auto& p = piv[j];
        if (w[j] % p[j] == 0) {
          const int64_t q = w[j] / p[j];
          for (size_t k = j; k < N; ++k)
            w[k] = checked(static_cast<__int128>(w[k]) - static_cast<__int128>(q) * p[k]);
        } else {
          int64_t s, t;
          const int64_t g = egcd64(p[j], w[j], s, t);
          const int64_t pj = p[j] / g, wj = w[j] / g;
          for (size_t k = j; k < N; ++k) {
            const int64_t np = checked(static_cast<__int128>(s) * p[k] + static_cast<__int128>(t) * w[k]);
            const int64_t nw = checked(static_cast<__int128>(wj) * p[k] - static_cast<__int128>(pj) * w[k]);
            p[k] = np;
            w[k] = nw;
          }
        }
      }
    }
    // reduce entries above each pivot into [0, pivot)
    for (size_t j = 1; j < N; ++j) {
      if (piv[j].empty()) continue;
      for (size_t i = 0; i < j; ++i) {
        if (piv[i].empty()) continue;
        const int64_t q = floor_div64(piv[i][j], piv[j][j]);
        if (q == 0) continue;
        for (size_t k = j; k < N; ++k)
          piv[i][k] = checked(static_cast<__int128>(piv[i][k]) - static_cast<__int128>(q) * piv[j][k]);
      }
    }
  } catch (const Int64Overflow&) {
    return false;
  }
  out = std::move(piv);
  return true;
}

void hnf_mpz(const std::vector<std::vector<mpz_class>>& rows, size_t N,
             std::vector<std::vector<mpz_class>>& piv) {
  piv.assign(N, {});
  mpz_class g, s, t, q;
  for (const auto& src : rows) {
    std::vector<mpz_class> w = src;
    for (size_t j = 0; j < N; ++j) {
      if (w[j] == 0) continue;
      if (piv[j].empty()) {
        if (w[j] < 0)
          for (size_t k = j; k < N; ++k) w[k] = -w[k];
        piv[j] = std::move(w);
        break;
      }
      auto& p = piv[j];
      if (w[j] % p[j] == 0) {
        q = w[j] / p[j];
        for (size_t k = j; k < N; ++k) w[k] -= q * p[k];
      } else {
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[j].get_mpz_t(), w[j].get_mpz_t());
        const mpz_class pj = p[j] / g, wj = w[j] / g;
        for (size_t k = j; k < N; ++k) {
          mpz_class np = s * p[k] + t * w[k];
          w[k] = wj * p[k] - pj * w[k];
          p[k] = std::move(np);
        }
      }
    }
  }
  for (size_t j = 1; j < N; ++j) {
    if (piv[j].empty()) continue;
    for (size_t i = 0; i < j; ++i) {
      if (piv[i].empty()) continue;
      mpz_fdiv_q(q.get_mpz_t(), piv[i][j].get_mpz_t(), piv[j][j].get_mpz_t());
      if (q == 0) continue;
      for (size_t k = j; k < N; ++k) piv[i][k] -= q * piv[j][k];
    }
  }
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const size_t n = m.size();
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // exact by Bareiss
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

}  // namespace

IntegerLattice lattice_from_generators(const std::vector<std::vector<mpz_class>>& rows) {
  if (rows.empty()) fail(Errc::RankDeficient, "no generators");
  const size_t N = rows[0].size();
  if (N == 0) fail(Errc::RankDeficient, "zero-dimensional generators");
  for (const auto& r : rows)
    if (r.size() != N) fail(Errc::SizeViolation, "generator rows differ in length");

  std::vector<std::vector<mpz_class>> piv;
  bool fits64 = true;
  for (const auto& r : rows) {
    for (const auto& x : r)
      if (!x.fits_slong_p()) {
        fits64 = false;
        break;
      }
    if (!fits64) break;
  }
  bool done = false;
  if (fits64 && sizeof(long) == 8) {
    std::vector<std::vector<int64_t>> fast(rows.size(), std::vector<int64_t>(N));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < N; ++j) fast[i][j] = rows[i][j].get_si();
    std::vector<std::vector<int64_t>> out;
    if (hnf_int64(fast, N, out)) {
      piv.resize(N);
      for (size_t j = 0; j < N; ++j) {
        if (out[j].empty()) fail(Errc::RankDeficient, "generators span fewer than N dimensions");
        piv[j].assign(out[j].begin(), out[j].end());
      }
      done = true;
    }
  }
  if (!done) hnf_mpz(rows, N, piv);

  IntegerLattice lat;
  lat.N = static_cast<int>(N);
  lat.volume = 1;
  lat.hnf.reserve(N);
  for (size_t j = 0; j < N; ++j) {
    if (piv[j].empty()) fail(Errc::RankDeficient, "generators span fewer than N dimensions");
    lat.volume *= piv[j][j];
    lat.hnf.push_back(std::move(piv[j]));
  }
  return lat;
}

PauliVolume lattice_volume_pauli(const CircuitArchitecture& arch, int rank_guard) {
  Gf2RowSpace space = gf2_rowspace(arch, rank_guard);
  const size_t N = arch.columns.size();
  std::vector<std::vector<mpz_class>> gens;
  gens.reserve(space.vectors.size());
  for (const auto& v : space.vectors) {
    std::vector<mpz_class> row(N);
    for (size_t j = 0; j < N; ++j) row[j] = 2 * static_cast<int>(v[j]);
    gens.push_back(std::move(row));
  }
  IntegerLattice lat = lattice_from_generators(gens);

  PauliVolume out;
  out.V = lat.volume;
  mpz_class rem;
  mpz_class pw = pow2_mpz(static_cast<unsigned long>(N));
  mpz_fdiv_qr(out.v.get_mpz_t(), rem.get_mpz_t(), out.V.get_mpz_t(), pw.get_mpz_t());
  if (rem != 0) fail(Errc::InvalidArchitecture, "walk lattice volume is not divisible by 2^N");
  return out;
}

VolumeBounds volume_bounds(int n, int N) {
  if (n < 1) fail(Errc::SizeViolation, "bad qubit count");
  if (n > 24) fail(Errc::TooManyQubits, "volume ceiling too large to materialize beyond 24 qubits");
  if (N < 1) fail(Errc::SizeViolation, "bad rotation count");
  VolumeBounds b;
  b.V_min = pow2_mpz(static_cast<unsigned long>(n));
  b.lower = pow2_mpz(static_cast<unsigned long>(N));
  mpz_class base = N + 1;
  mpz_pow_ui(b.upper_sq.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(N) + 1);
  b.upper_log2 = 0.5 * (N + 1) * std::log2(static_cast<double>(N) + 1.0);
  mpz_class two_n = pow2_mpz(static_cast<unsigned long>(n));
  mpz_pow_ui(b.V_max.get_mpz_t(), two_n.get_mpz_t(), 1UL << (n - 1));
  return b;
}

mpz_class volume_minor_gcd(const std::vector<std::vector<mpz_class>>& rows, uint64_t cap) {
  if (rows.empty()) fail(Errc::RankDeficient, "no generators");
  const size_t M = rows.size();
  const size_t N = rows[0].size();
  if (M < N) fail(Errc::RankDeficient, "fewer generators than dimensions");
  mpz_class total = binomial(static_cast<unsigned long>(M), static_cast<unsigned long>(N));
  if (total > cap)
    fail(Errc::TooManyCircuits,
         "C(" + std::to_string(M) + "," + std::to_string(N) + ") = " + total.get_str() +
             " minors exceed cap " + std::to_string(cap));

  std::vector<size_t> pick(N);
  std::iota(pick.begin(), pick.end(), size_t{0});
  mpz_class g = 0;
  for (;;) {
    std::vector<std::vector<mpz_class>> sub(N);
    for (size_t i = 0; i < N; ++i) sub[i] = rows[pick[i]];
    mpz_class d = bareiss_det(std::move(sub));
    mpz_abs(d.get_mpz_t(), d.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    size_t j = N;
    while (j > 0 && pick[j - 1] == M - (N - (j - 1))) --j;
    if (j == 0) break;
    ++pick[j - 1];
    for (size_t k = j; k < N; ++k) pick[k] = pick[k - 1] + 1;
  }
  if (g == 0) fail(Errc::RankDeficient, "all maximal minors vanish");
  return g;
}

}  // namespace framepot
