#pragma once

#include <cstdint>
#include <string>

#include "framepot/architecture.hpp"
#include "framepot/spectrum.hpp"
#include "framepot/survey.hpp"

namespace framepot {

// Circuit file: { "n": int, "rotations": [[1-based qubit indices]] }.
// The parsed architecture is validated; column order follows the file.
CircuitArchitecture parse_circuit_json(const std::string& text);
CircuitArchitecture load_circuit_json(const std::string& path);

// General-spectrum file:
// { "n": int, "diagonals": [[int; 2^n]; N], "amplitudes": [float; 2^n] }.
Spectrum parse_spectrum_json(const std::string& text);
Spectrum load_spectrum_json(const std::string& path);

std::string tally_to_json(const VolumeTally& tally);  // sorted keys, 2-space indent
VolumeTally tally_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

uint64_t fnv1a64(const void* data, size_t len);
uint64_t file_digest(const std::string& path);

}  // namespace framepot
