#include "framepot/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace framepot {

namespace {

using nlohmann::json;

json parse_or_fail(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

}  // namespace

CircuitArchitecture parse_circuit_json(const std::string& text) {
  const json j = parse_or_fail(text);
  try {
    const int n = j.at("n").get<int>();
    const auto rotations = j.at("rotations").get<std::vector<std::vector<int>>>();
    return architecture_from_rotations(n, rotations);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

CircuitArchitecture load_circuit_json(const std::string& path) {
  return parse_circuit_json(read_file(path));
}

Spectrum parse_spectrum_json(const std::string& text) {
  const json j = parse_or_fail(text);
  int n = 0;
  std::vector<std::vector<long long>> diagonals;
  std::vector<double> amplitudes;
  try {
    n = j.at("n").get<int>();
    diagonals = j.at("diagonals").get<std::vector<std::vector<long long>>>();
    amplitudes = j.at("amplitudes").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  if (n < 1 || n > kMaxQubits) fail(Errc::SizeViolation, "bad qubit count");
  const size_t dim = size_t{1} << n;
  if (amplitudes.size() != dim)
    fail(Errc::SizeViolation, "need exactly 2^n amplitudes");
  for (const auto& d : diagonals)
    if (d.size() != dim) fail(Errc::SizeViolation, "each diagonal needs exactly 2^n entries");
  return build_spectrum_general(n, diagonals, amplitudes);
}

Spectrum load_spectrum_json(const std::string& path) {
  return parse_spectrum_json(read_file(path));
}

std::string tally_to_json(const VolumeTally& tally) {
  json j;
  j["n"] = tally.n;
  j["exhaustive"] = tally.exhaustive;
  j["samples_per_N"] = tally.samples_per_N;
  j["seed"] = tally.seed;
  j["total"] = tally.total;
  json per;
  for (const auto& [N, hist] : tally.per_N) {
    json h;
    for (const auto& [v, c] : hist) h[v.get_str()] = c;
    per[std::to_string(N)] = std::move(h);
  }
  j["per_N"] = std::move(per);
  return j.dump(2) + "\n";
}

VolumeTally tally_from_json(const std::string& text) {
  const json j = parse_or_fail(text);
  VolumeTally tally;
  try {
    tally.n = j.at("n").get<int>();
    tally.exhaustive = j.at("exhaustive").get<bool>();
    tally.samples_per_N = j.at("samples_per_N").get<uint64_t>();
    tally.seed = j.at("seed").get<uint64_t>();
    tally.total = j.at("total").get<uint64_t>();
    for (const auto& [key, hist] : j.at("per_N").items()) {
      const int N = std::stoi(key);
      for (const auto& [vstr, count] : hist.items())
        tally.per_N[N][mpz_class(vstr, 10)] = count.get<uint64_t>();
    }
  } catch (const json::exception& e) {
    fail(Errc::ParseError, e.what());
  } catch (const std::invalid_argument& e) {
    fail(Errc::ParseError, std::string("bad integer key: ") + e.what());
  }
  return tally;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::UsageError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::UsageError, "cannot write " + path);
  out << content;
  if (!out) fail(Errc::UsageError, "short write to " + path);
}

uint64_t fnv1a64(const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 14695981039346656037ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t file_digest(const std::string& path) {
  const std::string bytes = read_file(path);
  return fnv1a64(bytes.data(), bytes.size());
}

}  // namespace framepot
