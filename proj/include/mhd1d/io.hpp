#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhd1d/layer.hpp"
#include "mhd1d/limit.hpp"
#include "mhd1d/solver.hpp"

// CSV emission and the run manifest. All numeric fields are written with 17
// significant digits, '.' decimal separator and '\n' line endings, so
// re-running an identical config reproduces byte-identical numeric content.

namespace mhd1d {

inline constexpr const char* kToolVersion = "mhd1d 1.0.0";

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string created_utc;
    std::string config_hash;  // FNV-1a 64 of the config file bytes, hex
    std::string description;
    std::string output_dir;
    std::vector<std::string> files;
};

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_full(double v);

std::uint64_t fnv1a64(std::span<const char> bytes);
std::string hash_hex(std::span<const char> bytes);

std::string utc_timestamp_now();

/// Snapshot CSV: header "x,rho,u,b", then n+1 rows. Row i carries the face
/// coordinate x_i and u at that face; rows 0..n-1 additionally carry rho and
/// b of the cell whose center is x_i + dx/2. The last row leaves rho and b
/// empty.
void write_snapshot_csv(const std::string& path, const State& state, const Grid& grid);

/// Parses a snapshot written by write_snapshot_csv; exact round trip.
State read_snapshot_csv(const std::string& path, const Grid& grid);

void write_invariants_csv(const std::string& path, std::span<const InvariantRecord> records);

/// Per-nu rows followed by '#'-prefixed footer lines with the fitted
/// exponents, floors and warnings.
void write_sweep_report_csv(const std::string& path, const SweepReport& report);

void write_layer_report_csv(const std::string& path, const LayerReport& report);

/// Columns x,b at cell centers.
void write_profile_csv(const std::string& path, const Grid& grid, std::span<const double> b);

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace mhd1d
