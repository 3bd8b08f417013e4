#include "framepot/architecture.hpp"

#include <algorithm>
#include <bit>

#include "framepot/dyadic.hpp"
#include "xor_basis.hpp"

namespace framepot {

std::vector<uint64_t> CircuitArchitecture::sorted_columns() const {
  std::vector<uint64_t> s = columns;
  std::sort(s.begin(), s.end());
  return s;
}

CircuitArchitecture architecture_from_rotations(int n, const std::vector<std::vector<int>>& rotations) {
  if (n < 1) fail(Errc::SizeViolation, "qubit count must be positive");
  if (n > kMaxQubits) fail(Errc::TooManyQubits, "at most 63 qubits");
  CircuitArchitecture arch;
  arch.n = n;
  arch.columns.reserve(rotations.size());
  for (const auto& rot : rotations) {
    uint64_t mask = 0;
    for (int q : rot) {
      if (q < 1 || q > n) fail(Errc::SizeViolation, "qubit index out of range: " + std::to_string(q));
      mask |= uint64_t{1} << (q - 1);
    }
    arch.columns.push_back(mask);
  }
  validate(arch);
  return arch;
}

CircuitArchitecture architecture_from_columns(int n, std::vector<uint64_t> columns) {
  CircuitArchitecture arch{n, std::move(columns)};
  validate(arch);
  return arch;
}

CircuitArchitecture identity_architecture(int n) {
  std::vector<uint64_t> cols(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<size_t>(i)] = uint64_t{1} << i;
  return architecture_from_columns(n, std::move(cols));
}

CircuitArchitecture all_rotations_up_to(int n, int n_prime) {
  if (n < 1 || n_prime < 1 || n_prime > n) fail(Errc::SizeViolation, "need 1 <= n' <= n");
  if (n > kMaxQubits) fail(Errc::TooManyQubits, "at most 63 qubits");
  std::vector<uint64_t> cols;
  const uint64_t top = (uint64_t{1} << n) - 1;
  for (uint64_t m = 1; m <= top; ++m)
    if (std::popcount(m) <= n_prime) cols.push_back(m);
  return architecture_from_columns(n, std::move(cols));
}

void validate(const CircuitArchitecture& arch) {
  if (arch.n < 1) fail(Errc::SizeViolation, "qubit count must be positive");
  if (arch.n > kMaxQubits) fail(Errc::TooManyQubits, "at most 63 qubits");
  const uint64_t top = (uint64_t{1} << arch.n) - 1;
  for (uint64_t c : arch.columns) {
    if (c == 0) fail(Errc::EmptyRotation, "rotation acts on no qubits");
    if (c > top) fail(Errc::SizeViolation, "rotation touches a qubit beyond n");
  }
  std::vector<uint64_t> s = arch.sorted_columns();
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    fail(Errc::DuplicateRotation, "two rotations share the same qubit set");
  const uint64_t N = arch.columns.size();
  if (N < static_cast<uint64_t>(arch.n) || N > top)
    fail(Errc::SizeViolation, "need n <= N <= 2^n - 1, got n=" + std::to_string(arch.n) +
                                  " N=" + std::to_string(N));
}

int gf2_rank_words(std::vector<uint64_t> words) {
  detail::XorBasis64 basis;
  for (uint64_t w : words) basis.insert(w);
  return basis.rank;
}

int gf2_rank(const CircuitArchitecture& arch) { return gf2_rank_words(arch.columns); }

Gf2RowSpace gf2_rowspace(const CircuitArchitecture& arch, int rank_guard) {
  const size_t N = arch.columns.size();
  const size_t nwords = (N + 63) / 64;

  // rows of A, packed: row i bit j = bit i of column j
  std::vector<std::vector<uint8_t>> basis;  // independent rows, first-seen order
  detail::WideXorBasis elim;
  for (int i = 0; i < arch.n; ++i) {
    std::vector<uint64_t> packed(nwords, 0);
    std::vector<uint8_t> row(N, 0);
    for (size_t j = 0; j < N; ++j) {
      if ((arch.columns[j] >> i) & 1) {
        row[j] = 1;
        packed[j / 64] |= uint64_t{1} << (j % 64);
      }
    }
    if (elim.insert(std::move(packed))) basis.push_back(std::move(row));
  }

  const int r = static_cast<int>(basis.size());
  if (r > rank_guard)
    fail(Errc::RankTooLarge,
         "rowspace rank " + std::to_string(r) + " exceeds guard " + std::to_string(rank_guard));

  Gf2RowSpace out;
  out.rank = r;
  out.vectors.reserve(size_t{1} << r);
  std::vector<uint8_t> cur(N, 0);
  out.vectors.push_back(cur);
  for (uint64_t i = 1; i < (uint64_t{1} << r); ++i) {
    const auto& b = basis[static_cast<size_t>(std::countr_zero(i))];  // Gray code flip
    for (size_t j = 0; j < N; ++j) cur[j] ^= b[j];
    out.vectors.push_back(cur);
  }
  return out;
}

mpz_class count_architectures(int n, int N) {
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  const uint64_t cols = (uint64_t{1} << n) - 1;
  if (N < 0 || static_cast<uint64_t>(N) > cols) return 0;
  return binomial(cols, static_cast<unsigned long>(N));
}

void enumerate_architectures(int n, int N, const std::function<void(const CircuitArchitecture&)>& sink,
                             uint64_t cap) {
  mpz_class total = count_architectures(n, N);
  if (total > cap)
    fail(Errc::TooManyCircuits,
         "C(2^n-1, N) = " + total.get_str() + " exceeds cap " + std::to_string(cap));
  if (total == 0) return;
  const uint64_t M = (uint64_t{1} << n) - 1;  // column values are 1..M
  std::vector<uint64_t> pick(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) pick[static_cast<size_t>(j)] = static_cast<uint64_t>(j + 1);
  CircuitArchitecture arch;
  arch.n = n;
  for (;;) {
    arch.columns = pick;
    sink(arch);
    int j = N - 1;  // advance to the next combination in lexicographic order
    while (j >= 0 && pick[static_cast<size_t>(j)] == M - static_cast<uint64_t>(N - 1 - j)) --j;
    if (j < 0) break;
    ++pick[static_cast<size_t>(j)];
    for (int k = j + 1; k < N; ++k)
      pick[static_cast<size_t>(k)] = pick[static_cast<size_t>(k - 1)] + 1;
  }
}

}  // namespace framepot
