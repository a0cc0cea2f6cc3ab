#pragma once

// Result serialization: sweep CSV, run manifest, and the atomic write
// discipline (temp file + rename) that keeps partial output off disk.

#include <cstdint>
#include <string>
#include <vector>

#include "fsothz/montecarlo.hpp"
#include "fsothz/scenario.hpp"

namespace fsothz {

// Locale-independent number formatting for CSV cells: plain decimal for
// magnitudes >= 1e-3, scientific below, round-trip precision throughout.
std::string format_value(double value);

// CSV text for a sweep: header `axis,strategy,estimate,std_error,ci_low,
// ci_high,trials,flags`, rows in the order run_sweep produced them. The
// flags cell is `low-confidence` or empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Everything needed to re-run a sweep: the resolved scenario text, the full
// spec, and the master seed. Timings are informational and excluded from the
// reproducibility contract.
struct RunManifest {
    std::string tool_version;
    std::string study;
    std::string scenario_text;
    std::uint64_t scenario_digest = 0;  // fnv1a64 of scenario_text
    SweepSpec spec;
    std::vector<double> point_seconds;
};

std::string manifest_json(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& json_text);

// Writes content to `path` atomically (same-directory temp file, fsync-free
// rename). Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

extern const char* const kToolVersion;

} // namespace fsothz
