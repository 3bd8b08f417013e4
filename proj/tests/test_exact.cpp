#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "framepot/exact.hpp"
#include "testutil.hpp"

using namespace framepot;
using testutil::dyadic_leq;

static CircuitArchitecture example1() {
  return architecture_from_rotations(4, {{1}, {2, 3, 4}, {1, 2, 3}, {2, 3}, {1, 4}});
}

TEST_CASE("frame potential series of the worked 5-rotation circuit") {
  DyadicSeries s = frame_potential_exact(build_spectrum_pauli(example1()), 8);
  REQUIRE(s.t_max == 8);
  CHECK(s.rank == 3);
  const long nums[8] = {8,       136,       3392,       107656,
                        3987008, 163376704, 7176616448, 331523712136};
  for (int t = 1; t <= 8; ++t) {
    CHECK(s.at(t).num == mpz_class(nums[t - 1]));
    CHECK(s.at(t).exp2 == 6 * t);
  }
  CHECK(s.at(1).to_rational() == mpq_class(1, 8));
}

TEST_CASE("frame potential series of the 2-qubit all-rotations circuit") {
  Spectrum sp = build_spectrum_pauli(architecture_from_columns(2, {1, 2, 3}));
  DyadicSeries s = frame_potential_exact(sp, 8);
  const long nums[8] = {4, 28, 256, 2716, 31504, 387136, 4951552, 65218204};
  for (int t = 1; t <= 8; ++t) {
    CHECK(s.at(t).num == mpz_class(nums[t - 1]));
    CHECK(s.at(t).exp2 == 4 * t);
  }
}

TEST_CASE("one-step convolution is the sign-vector law itself") {
  Spectrum sp = build_spectrum_pauli(example1());
  SparseDistribution d = convolve_power(sp, 1);
  CHECK(d.denom_log2 == 3);
  REQUIRE(d.support.size() == 8);
  for (size_t i = 0; i < d.support.size(); ++i) {
    std::vector<int> o(sp.omega[i].begin(), sp.omega[i].end());
    CHECK(d.support[i] == o);
    CHECK(d.counts[i] == 1);
  }
}

TEST_CASE("convolution against direct path enumeration") {
  std::mt19937_64 g(424242);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + static_cast<int>(g() % 2);
    int top = (1 << n) - 1;
    int N = n + static_cast<int>(g() % (top - n + 1));
    Spectrum sp = build_spectrum_pauli(testutil::random_architecture(g, n, N));
    int R = 1 << sp.rank;

    for (int t = 1; t <= 3; ++t) {
      // enumerate all R^t equally likely sign-vector sequences
      std::map<std::vector<int>, mpz_class> hist;
      std::vector<size_t> idx(static_cast<size_t>(t), 0);
      for (;;) {
        std::vector<int> sum(static_cast<size_t>(N), 0);
        for (size_t step = 0; step < idx.size(); ++step)
          for (size_t j = 0; j < sum.size(); ++j) sum[j] += sp.omega[idx[step]][j];
        hist[sum] += 1;
        size_t p = idx.size();
        while (p > 0 && ++idx[p - 1] == static_cast<size_t>(R)) idx[--p] = 0;
        if (p == 0) break;
      }

      SparseDistribution d = convolve_power(sp, t);
      CHECK(d.denom_log2 == static_cast<long>(sp.rank) * t);
      REQUIRE(d.support.size() == hist.size());
      size_t i = 0;
      mpz_class sum_sq = 0;
      for (const auto& [s, c] : hist) {
        CHECK(d.support[i] == s);
        CHECK(d.counts[i] == c);
        sum_sq += c * c;
        ++i;
      }

      DyadicSeries fs = frame_potential_exact(sp, t);
      CHECK(fs.at(t).num == sum_sq);
      CHECK(fs.at(t).exp2 == 2L * sp.rank * t);
    }
  }
}

TEST_CASE("support cap aborts oversized convolutions") {
  Spectrum sp = build_spectrum_pauli(example1());
  CHECK_THROWS_WITH_AS(convolve_power(sp, 4, 10), doctest::Contains("SupportTooLarge"), Error);
  CHECK_THROWS_WITH_AS(frame_potential_exact(sp, 6, 10), doctest::Contains("SupportTooLarge"),
                       Error);
}

TEST_CASE("minimum-rotation closed form") {
  CHECK(closed_form_min_rotations(1, 1) == mpq_class(1, 2));
  CHECK(closed_form_min_rotations(1, 2) == mpq_class(3, 8));
  CHECK(closed_form_min_rotations(1, 3) == mpq_class(5, 16));
  CHECK(closed_form_min_rotations(2, 2) == mpq_class(9, 64));
  for (int n = 1; n <= 4; ++n) {
    DyadicSeries s = frame_potential_exact(build_spectrum_pauli(identity_architecture(n)), 12);
    for (int t = 1; t <= 12; ++t)
      CHECK(s.at(t).to_rational() == closed_form_min_rotations(n, t));
  }
}

TEST_CASE("haar frame potential") {
  CHECK(haar_frame_potential(1, 1) == mpq_class(1, 2));
  CHECK(haar_frame_potential(1, 3) == mpq_class(1, 4));   // 1/C(4,1)
  CHECK(haar_frame_potential(2, 3) == mpq_class(1, 20));  // 1/C(6,3)
  CHECK(haar_frame_potential(2, 1) == mpq_class(1, 4));
}

TEST_CASE("expressiveness of the worked circuit") {
  DyadicSeries s = frame_potential_exact(build_spectrum_pauli(example1()), 4);
  std::vector<mpq_class> e = expressiveness(s, 4);
  CHECK(e[0] == mpq_class(1, 2));
  CHECK(e[3] == mpq_class(524288, 13039833));
  for (const mpq_class& q : e) {
    CHECK(q > 0);
    CHECK(q <= 1);
  }
}

TEST_CASE("frame potential decreases in t") {
  std::mt19937_64 g(777);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(g() % 3);
    int top = (1 << n) - 1;
    int N = n + static_cast<int>(g() % (top - n + 1));
    DyadicSeries s =
        frame_potential_exact(build_spectrum_pauli(testutil::random_architecture(g, n, N)), 6);
    for (int t = 1; t < 6; ++t) CHECK(dyadic_leq(s.at(t + 1), s.at(t)));
  }
}

TEST_CASE("haar value is a lower bound on the frame potential") {
  std::mt19937_64 g(31337);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(g() % 2);
    int top = (1 << n) - 1;
    int N = n + static_cast<int>(g() % (top - n + 1));
    DyadicSeries s =
        frame_potential_exact(build_spectrum_pauli(testutil::random_architecture(g, n, N)), 5);
    for (int t = 1; t <= 5; ++t) CHECK(haar_frame_potential(n, t) <= s.at(t).to_rational());
  }
}

TEST_CASE("general-mode series reproduces an equivalent exact circuit") {
  Spectrum gen = build_spectrum_general(1, {{1, -1}}, {0.5, 0.5});
  FloatSeries fs = frame_potential_general(gen, 8);
  DyadicSeries ex = frame_potential_exact(build_spectrum_pauli(identity_architecture(1)), 8);
  for (int t = 1; t <= 8; ++t)
    CHECK(fs.values[static_cast<size_t>(t - 1)] ==
          doctest::Approx(ex.at(t).to_double()).epsilon(1e-12));
  CHECK(fs.forward_error < 1e-9);
}

TEST_CASE("general-mode series on a non-sign spectrum stays a probability square sum") {
  Spectrum gen =
      build_spectrum_general(2, {{0, 1, 0, 1}, {0, 0, 1, 1}}, {0.25, 0.25, 0.25, 0.25});
  FloatSeries fs = frame_potential_general(gen, 6);
  double prev = 1.0;
  for (double v : fs.values) {
    CHECK(v > 0.0);
    CHECK(v <= prev);
    prev = v;
  }
}
