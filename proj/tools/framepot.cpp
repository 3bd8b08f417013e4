// framepot: frame potential and expressiveness of commuting rotation circuits.
//
// Subcommands: validate, volume, exact, approx, sample, census,
// noncomm-census, compare. Data goes to stdout, or to --out with a
// <out>.manifest.json sidecar recording the resolved configuration. All
// sampling output is reproducible from the seed and independent of --threads.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "framepot/approx.hpp"
#include "framepot/exact.hpp"
#include "framepot/io.hpp"
#include "framepot/noncomm.hpp"
#include "framepot/sampling.hpp"
#include "framepot/survey.hpp"
#include "framepot/version.hpp"

namespace framepot {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

struct RunManifest {
  std::string subcommand;
  json config = json::object();
  json inputs = json::object();  // path -> fnv1a64 hex digest
  std::optional<uint64_t> seed;
  double duration_seconds = 0.0;

  json to_json() const {
    json j;
    j["tool_version"] = kVersion;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["inputs"] = inputs;
    if (seed) j["seed"] = *seed;
    j["duration_seconds"] = duration_seconds;
    return j;
  }
};

// options shared by the subcommands that read a circuit or spectrum
struct InputOpts {
  std::string circuit_path;
  std::string spectrum_path;

  void attach(CLI::App* cmd, bool allow_spectrum) {
    cmd->add_option("--circuit", circuit_path, "circuit JSON file");
    if (allow_spectrum)
      cmd->add_option("--spectrum", spectrum_path, "general spectrum JSON file");
  }

  bool has_circuit() const { return !circuit_path.empty(); }
  bool has_spectrum() const { return !spectrum_path.empty(); }

  void require_one() const {
    if (has_circuit() == has_spectrum())
      fail(Errc::UsageError, "need exactly one of --circuit or --spectrum");
  }

  Spectrum load(RunManifest& man) const {
    require_one();
    if (has_circuit()) {
      man.inputs[circuit_path] = hex64(file_digest(circuit_path));
      man.config["circuit"] = circuit_path;
      return build_spectrum_pauli(load_circuit_json(circuit_path));
    }
    man.inputs[spectrum_path] = hex64(file_digest(spectrum_path));
    man.config["spectrum"] = spectrum_path;
    return load_spectrum_json(spectrum_path);
  }

  CircuitArchitecture load_circuit(RunManifest& man) const {
    if (!has_circuit()) fail(Errc::UsageError, "this mode needs --circuit");
    man.inputs[circuit_path] = hex64(file_digest(circuit_path));
    man.config["circuit"] = circuit_path;
    return load_circuit_json(circuit_path);
  }
};

std::string sample_report_json(const EstimateReport& rep, int t, bool with_seed) {
  json j;
  j["method"] = method_name(rep.method);
  j["t"] = t;
  j["samples"] = rep.samples;
  if (with_seed) j["seed"] = rep.seed;
  j["estimate"] = rep.estimate;
  j["std_error"] = rep.std_error;
  return j.dump(2) + "\n";
}

std::string volume_json(const CltApproximation& clt, const std::optional<PauliVolume>& pv) {
  json j;
  j["n"] = clt.n;
  j["N"] = clt.N;
  auto put = [&](const char* key, const char* log_key, const mpz_class& z) {
    if (z.fits_ulong_p())
      j[key] = static_cast<uint64_t>(z.get_ui());
    else
      j[key] = z.get_str();
    j[log_key] = log2_mpz(z);
  };
  put("V", "V_log2", clt.V);
  if (pv) put("v", "v_log2", pv->v);
  if (clt.det_var_K != 1.0) j["det_var_K"] = clt.det_var_K;
  return j.dump(2) + "\n";
}

struct CompareMethods {
  bool exact = false;
  bool approx = false;
  bool is_unbiased = false;
  bool is_absorbing = false;
  bool multinomial = false;
  bool quadrature = false;
  bool any_sampling() const { return is_unbiased || is_absorbing || multinomial; }
};

CompareMethods parse_methods(const std::vector<std::string>& names) {
  if (names.empty()) fail(Errc::UsageError, "need at least one --methods entry");
  CompareMethods m;
  for (const auto& name : names) {
    if (name == "exact") m.exact = true;
    else if (name == "approx") m.approx = true;
    else if (name == "is-unbiased") m.is_unbiased = true;
    else if (name == "is-absorbing") m.is_absorbing = true;
    else if (name == "multinomial") m.multinomial = true;
    else if (name == "quadrature") m.quadrature = true;
    else fail(Errc::UsageError, "unknown method: " + name);
  }
  return m;
}

int run(int argc, char** argv) {
  CLI::App app{"frame potential and expressiveness of commuting rotation circuits"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int threads = 1;
  std::string out_path;
  app.add_option("--threads", threads, "worker threads (results do not depend on this)")
      ->capture_default_str();
  app.add_option("--out", out_path, "write data here plus a .manifest.json sidecar");

  // --- validate ---
  auto* cmd_validate = app.add_subcommand("validate", "check an input and report its shape");
  InputOpts in_validate;
  in_validate.attach(cmd_validate, true);

  // --- volume ---
  auto* cmd_volume = app.add_subcommand("volume", "walk-lattice volume");
  InputOpts in_volume;
  in_volume.attach(cmd_volume, true);

  // --- exact ---
  auto* cmd_exact = app.add_subcommand("exact", "exact frame potential series (CSV)");
  InputOpts in_exact;
  in_exact.attach(cmd_exact, false);
  int exact_tmax = 8;
  cmd_exact->add_option("--t-max,--tmax", exact_tmax, "compute t = 1..t_max")->capture_default_str();

  // --- approx ---
  auto* cmd_approx = app.add_subcommand("approx", "central-limit approximation series (CSV)");
  InputOpts in_approx;
  in_approx.attach(cmd_approx, true);
  int approx_tmax = 8;
  cmd_approx->add_option("--t-max,--tmax", approx_tmax, "compute t = 1..t_max")->capture_default_str();

  // --- sample ---
  auto* cmd_sample = app.add_subcommand("sample", "stochastic frame potential estimate (JSON)");
  InputOpts in_sample;
  in_sample.attach(cmd_sample, true);
  std::string method = "is-unbiased";
  cmd_sample->add_option("--method", method,
                         "is-unbiased | is-absorbing | multinomial | quadrature")
      ->capture_default_str();
  int sample_t = 1;
  cmd_sample->add_option("--t", sample_t, "moment order")->required();
  uint64_t sample_M = 10000;
  cmd_sample->add_option("--samples", sample_M, "replica count")->capture_default_str();
  std::optional<uint64_t> sample_seed;
  cmd_sample->add_option("--seed", sample_seed, "RNG seed (required unless quadrature)");

  // --- census ---
  auto* cmd_census = app.add_subcommand("census", "reduced volume census over circuits (JSON)");
  int census_n = 0;
  cmd_census->add_option("--n", census_n, "qubit count")->required();
  std::optional<uint64_t> census_samples;
  cmd_census->add_option("--samples-per-n", census_samples,
                         "sample this many circuits per N instead of enumerating");
  std::optional<uint64_t> census_seed;
  cmd_census->add_option("--seed", census_seed, "RNG seed (required when sampling)");
  std::optional<int> census_lo, census_hi;
  cmd_census->add_option("--n-lo", census_lo, "first rotation count (sampled mode)");
  cmd_census->add_option("--n-hi", census_hi, "last rotation count (sampled mode)");

  // --- noncomm-census ---
  auto* cmd_noncomm =
      app.add_subcommand("noncomm-census", "two-qubit Hamiltonian pair census (JSON)");
  bool noncomm_dump = false;
  cmd_noncomm->add_flag("--dump", noncomm_dump, "include per-pair coefficient tables");

  // --- compare ---
  auto* cmd_compare = app.add_subcommand("compare", "side-by-side method table (CSV)");
  InputOpts in_compare;
  in_compare.attach(cmd_compare, false);
  int compare_tmax = 8;
  cmd_compare->add_option("--t-max,--tmax", compare_tmax, "compute t = 1..t_max")->capture_default_str();
  std::vector<std::string> compare_methods;
  cmd_compare->add_option("--methods", compare_methods,
                          "exact, approx, is-unbiased, is-absorbing, multinomial, quadrature")
      ->delimiter(',');
  uint64_t compare_M = 10000;
  cmd_compare->add_option("--samples", compare_M, "replica count for sampling methods")
      ->capture_default_str();
  std::optional<uint64_t> compare_seed;
  cmd_compare->add_option("--seed", compare_seed, "RNG seed (required for sampling methods)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  RunManifest man;
  man.config["threads"] = threads;
  if (threads < 1) fail(Errc::UsageError, "--threads must be at least 1");
  std::string data;

  const auto t0 = std::chrono::steady_clock::now();

  if (cmd_validate->parsed()) {
    man.subcommand = "validate";
    Spectrum spec = in_validate.load(man);
    json j;
    j["mode"] = spec.mode == SpectrumMode::pauli ? "pauli" : "general";
    j["n"] = spec.n;
    j["N"] = spec.N;
    if (spec.mode == SpectrumMode::pauli)
      j["rank"] = spec.rank;
    else
      j["support"] = spec.omega.size();
    j["valid"] = true;
    data = j.dump(2) + "\n";
  } else if (cmd_volume->parsed()) {
    man.subcommand = "volume";
    in_volume.require_one();
    if (in_volume.has_circuit()) {
      CircuitArchitecture arch = in_volume.load_circuit(man);
      CltApproximation clt = clt_from_architecture(arch);
      data = volume_json(clt, lattice_volume_pauli(arch));
    } else {
      Spectrum spec = in_volume.load(man);
      data = volume_json(clt_from_spectrum(spec), std::nullopt);
    }
  } else if (cmd_exact->parsed()) {
    man.subcommand = "exact";
    man.config["t_max"] = exact_tmax;
    if (!in_exact.has_circuit()) fail(Errc::UsageError, "exact needs --circuit");
    CircuitArchitecture arch = in_exact.load_circuit(man);
    Spectrum spec = build_spectrum_pauli(arch);
    DyadicSeries series = frame_potential_exact(spec, exact_tmax);
    std::vector<mpq_class> E = expressiveness(series, spec.n);
    std::string csv = "t,F_exact_num,F_exact_log2,E_exact\n";
    for (int t = 1; t <= exact_tmax; ++t) {
      csv += std::to_string(t) + ',' + series.at(t).num.get_str() + ',' +
             fmt(series.at(t).log2()) + ',' + E[static_cast<size_t>(t - 1)].get_str() + '\n';
    }
    data = std::move(csv);
  } else if (cmd_approx->parsed()) {
    man.subcommand = "approx";
    man.config["t_max"] = approx_tmax;
    in_approx.require_one();
    CltApproximation clt;
    if (in_approx.has_circuit()) {
      clt = clt_from_architecture(in_approx.load_circuit(man));
    } else {
      clt = clt_from_spectrum(in_approx.load(man));
    }
    std::string csv = "t,F_tilde_log2,E_tilde_log2\n";
    for (int t = 1; t <= approx_tmax; ++t)
      csv += std::to_string(t) + ',' + fmt(clt.log2_F(t)) + ',' + fmt(clt.log2_E(t)) + '\n';
    data = std::move(csv);
  } else if (cmd_sample->parsed()) {
    man.subcommand = "sample";
    man.config["method"] = method;
    man.config["t"] = sample_t;
    const bool needs_seed = method != "quadrature";
    if (needs_seed && !sample_seed)
      fail(Errc::UsageError, "--seed is required for sampling methods");
    if (needs_seed) {
      man.seed = *sample_seed;
      man.config["samples"] = sample_M;
    }
    EstimateReport rep;
    if (method == "is-unbiased" || method == "is-absorbing") {
      Spectrum spec = in_sample.load(man);
      DifferenceDistribution diff = difference_distribution(spec);
      rep = importance_sampling_fp(diff, sample_t, sample_M, *sample_seed,
                                   method == "is-absorbing" ? IsMode::absorbing : IsMode::unbiased,
                                   threads);
    } else if (method == "multinomial") {
      CircuitArchitecture arch = in_sample.load_circuit(man);
      require_all_rotations(arch);
      rep = multinomial_fp(arch.n, sample_t, sample_M, *sample_seed, threads);
    } else if (method == "quadrature") {
      Spectrum spec = in_sample.load(man);
      rep.estimate = quadrature_oracle_fp(spec, sample_t);
      rep.std_error = 0.0;
      rep.samples = 0;
      rep.method = SampleMethod::quadrature;
    } else {
      fail(Errc::UsageError, "unknown method: " + method);
    }
    data = sample_report_json(rep, sample_t, needs_seed);
  } else if (cmd_census->parsed()) {
    man.subcommand = "census";
    man.config["n"] = census_n;
    VolumeTally tally;
    if (census_samples) {
      if (!census_seed) fail(Errc::UsageError, "--seed is required for a sampled census");
      man.seed = *census_seed;
      man.config["samples_per_N"] = *census_samples;
      const int lo = census_lo.value_or(census_n);
      const int hi = census_hi.value_or(
          static_cast<int>((uint64_t{1} << std::min(census_n, 62)) - 1));
      man.config["N_lo"] = lo;
      man.config["N_hi"] = hi;
      tally = census_sampled_range(census_n, lo, hi, *census_samples, *census_seed, threads);
    } else {
      if (census_lo || census_hi)
        fail(Errc::UsageError, "--n-lo/--n-hi apply to the sampled census only");
      if (census_seed) fail(Errc::UsageError, "--seed applies to the sampled census only");
      tally = census_exhaustive(census_n, kDefaultCensusCap, threads);
    }
    data = tally_to_json(tally);
  } else if (cmd_noncomm->parsed()) {
    man.subcommand = "noncomm-census";
    man.config["dump"] = noncomm_dump;
    NoncommCensus c = census_2q();
    json j;
    j["total"] = c.total;
    j["noncommuting"] = c.noncommuting;
    j["probabilistic_noncommuting"] = c.probabilistic_noncommuting;
    j["non_probabilistic"] = c.non_probabilistic;
    if (noncomm_dump) {
      json pairs = json::array();
      PauliOp ops[4] = {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z};
      for (PauliOp a : ops)
        for (PauliOp b : ops)
          for (PauliOp c1 : ops)
            for (PauliOp d : ops) {
              PauliPair p{{a, b}, {c1, d}};
              BiFourierTable tab = bifourier_coefficients(p);
              json entry;
              entry["h1"] = std::string(pauli_name(a)) + pauli_name(b);
              entry["h2"] = std::string(pauli_name(c1)) + pauli_name(d);
              entry["commutes"] = p.commutes();
              entry["representation"] =
                  classify_representation(tab) == Representation::probabilistic
                      ? "probabilistic"
                      : "non_probabilistic";
              json coeffs = json::array();
              for (const auto& [m, v] : tab.coeff)
                coeffs.push_back({{"k", {m.k1, m.k2}},
                                  {"kp", {m.kp1, m.kp2}},
                                  {"re", v.real()},
                                  {"im", v.imag()}});
              entry["coefficients"] = std::move(coeffs);
              pairs.push_back(std::move(entry));
            }
      j["pairs"] = std::move(pairs);
    }
    data = j.dump(2) + "\n";
  } else if (cmd_compare->parsed()) {
    man.subcommand = "compare";
    man.config["t_max"] = compare_tmax;
    CompareMethods methods = parse_methods(compare_methods);
    man.config["methods"] = compare_methods;
    CircuitArchitecture arch = in_compare.load_circuit(man);
    Spectrum spec = build_spectrum_pauli(arch);
    if (methods.multinomial) require_all_rotations(arch);
    if (methods.any_sampling()) {
      if (!compare_seed) fail(Errc::UsageError, "--seed is required for sampling methods");
      man.seed = *compare_seed;
      man.config["samples"] = compare_M;
    }

    std::string header = "t";
    if (methods.exact) header += ",F_exact_log2";
    if (methods.approx) header += ",F_tilde_log2";
    if (methods.is_unbiased) header += ",is_unbiased,is_unbiased_se";
    if (methods.is_absorbing) header += ",is_absorbing,is_absorbing_se";
    if (methods.multinomial) header += ",multinomial,multinomial_se";
    if (methods.quadrature) header += ",quadrature";

    DyadicSeries series;
    if (methods.exact) series = frame_potential_exact(spec, compare_tmax);
    CltApproximation clt;
    if (methods.approx) clt = clt_from_architecture(arch);
    DifferenceDistribution diff;
    if (methods.is_unbiased || methods.is_absorbing) diff = difference_distribution(spec);

    std::string csv = header + '\n';
    for (int t = 1; t <= compare_tmax; ++t) {
      csv += std::to_string(t);
      if (methods.exact) csv += ',' + fmt(series.at(t).log2());
      if (methods.approx) csv += ',' + fmt(clt.log2_F(t));
      if (methods.is_unbiased) {
        EstimateReport r =
            importance_sampling_fp(diff, t, compare_M, *compare_seed, IsMode::unbiased, threads);
        csv += ',' + fmt(r.estimate) + ',' + fmt(r.std_error);
      }
      if (methods.is_absorbing) {
        EstimateReport r =
            importance_sampling_fp(diff, t, compare_M, *compare_seed, IsMode::absorbing, threads);
        csv += ',' + fmt(r.estimate) + ',' + fmt(r.std_error);
      }
      if (methods.multinomial) {
        EstimateReport r = multinomial_fp(arch.n, t, compare_M, *compare_seed, threads);
        csv += ',' + fmt(r.estimate) + ',' + fmt(r.std_error);
      }
      if (methods.quadrature) csv += ',' + fmt(quadrature_oracle_fp(spec, t));
      csv += '\n';
    }
    data = std::move(csv);
  }

  const auto t1 = std::chrono::steady_clock::now();
  man.duration_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (!out_path.empty()) {
    man.config["out"] = out_path;
    write_file(out_path, data);
    write_file(out_path + ".manifest.json", man.to_json().dump(2) + "\n");
  } else {
    std::fwrite(data.data(), 1, data.size(), stdout);
  }
  return 0;
}

}  // namespace
}  // namespace framepot

int main(int argc, char** argv) {
  try {
    return framepot::run(argc, argv);
  } catch (const framepot::Error& e) {
    std::fprintf(stderr, "framepot: %s\n", e.what());
    return framepot::is_resource_cap(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "framepot: %s\n", e.what());
    return 1;
  }
}
