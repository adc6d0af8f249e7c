#pragma once

#include <filesystem>

#include "panoseg/types.hpp"

namespace panoseg::io {

/// Reads a `.bin` scan: consecutive 16-byte records of four little-endian
/// float32 values (x, y, z, intensity). Throws IoError when the file length
/// is not a multiple of 16. Non-finite coordinates are kept verbatim and
/// noted in cloud.warnings.
PointCloud read_scan(const std::filesystem::path& path);

/// Reads a `.label` file: one little-endian uint32 per point, low 16 bits
/// semantic class, high 16 bits instance ID. Throws IoError when the length
/// differs from 4 * expected_n bytes.
SemanticMap read_labels(const std::filesystem::path& path, std::size_t expected_n);

/// As above but infers the point count from the file length (must be a
/// multiple of 4).
SemanticMap read_labels(const std::filesystem::path& path);

/// Exact inverse encodings of the readers; byte-identical round trips.
void write_scan(const PointCloud& cloud, const std::filesystem::path& path);
void write_labels(const SemanticMap& labels, const std::filesystem::path& path);

/// Loads a ClassConfig from YAML. Required: `classes` (list of
/// {id, name, thing, r_c}). Optional with defaults: `L` (4), `voxel_size`
/// ([0.2, 0.2, 0.1]), `extent` ([[-48,48],[-48,48],[-3,1.8]]),
/// `merge_threshold` (scalar or per-class map, 0.5), `gap_cutoff`
/// (per-class map), `knn` (5). Throws ConfigError naming the offending key.
ClassConfig read_config(const std::filesystem::path& path);

}  // namespace panoseg::io
