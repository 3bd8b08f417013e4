#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "framepot/io.hpp"
#include "framepot/survey.hpp"
#include "testutil.hpp"

using namespace framepot;
using testutil::data_path;

TEST_CASE("circuit files parse with column order preserved") {
  CircuitArchitecture a = load_circuit_json(data_path("example1.json"));
  CHECK(a.n == 4);
  CHECK(a.columns == std::vector<uint64_t>{1, 14, 7, 6, 9});

  CircuitArchitecture b = parse_circuit_json(R"({"n": 2, "rotations": [[2], [1], [1, 2]]})");
  CHECK(b.columns == std::vector<uint64_t>{2, 1, 3});
}

TEST_CASE("circuit files are validated on load") {
  CHECK_THROWS_WITH_AS(load_circuit_json(data_path("dup_rotation.json")),
                       doctest::Contains("DuplicateRotation"), Error);
  CHECK_THROWS_WITH_AS(parse_circuit_json("not json at all"), doctest::Contains("ParseError"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_circuit_json(R"({"rotations": [[1]]})"),
                       doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_circuit_json(R"({"n": 1, "rotations": "x"})"),
                       doctest::Contains("ParseError"), Error);
}

TEST_CASE("spectrum files") {
  Spectrum s = load_spectrum_json(data_path("spectrum_pm1.json"));
  CHECK(s.mode == SpectrumMode::general);
  CHECK(s.n == 1);
  CHECK(s.N == 1);
  CHECK(s.omega == std::vector<std::vector<int>>{{-1}, {1}});

  Spectrum s2 = load_spectrum_json(data_path("spectrum_number2.json"));
  CHECK(s2.N == 2);

  // diagonal length must be 2^n
  CHECK_THROWS_WITH_AS(
      parse_spectrum_json(R"({"n": 2, "diagonals": [[0, 1]], "amplitudes": [1.0, 0, 0, 0]})"),
      doctest::Contains("SizeViolation"), Error);
  CHECK_THROWS_WITH_AS(
      parse_spectrum_json(R"({"n": 1, "diagonals": [[0, 1]], "amplitudes": [1.0]})"),
      doctest::Contains("SizeViolation"), Error);
  CHECK_THROWS_WITH_AS(
      parse_spectrum_json(R"({"n": 1, "diagonals": [[0, 1]], "amplitudes": [0.9, 0.2]})"),
      doctest::Contains("NotNormalized"), Error);
}

TEST_CASE("tally serialization round trip") {
  VolumeTally t = census_exhaustive(3);
  std::string text = tally_to_json(t);
  VolumeTally back = tally_from_json(text);
  CHECK(back.n == t.n);
  CHECK(back.exhaustive == t.exhaustive);
  CHECK(back.total == t.total);
  CHECK(back.per_N == t.per_N);
  CHECK(tally_to_json(back) == text);

  CHECK_THROWS_WITH_AS(tally_from_json("{"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("file round trip and digests") {
  const std::string path = "io_roundtrip.tmp";
  write_file(path, "The walk returned.\n");
  CHECK(read_file(path) == "The walk returned.\n");
  CHECK(file_digest(path) == fnv1a64("The walk returned.\n", 19));
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(read_file("definitely_missing_file.json"), doctest::Contains("UsageError"),
                       Error);

  // standard 64-bit FNV-1a vectors
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
}
