#pragma once

#include <cstdint>
#include <string>

#include "manifit/manifolds.hpp"
#include "manifit/types.hpp"

namespace manifit {

// Shortest decimal digits that round-trip a double (up to 17 significant).
std::string format_double(double v);

// CSV: header x0,x1,...,x{D-1}, one point per row.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_csv(const std::string& path);

// Binary: magic "MFPC", version u32, n u64, D u32, little-endian f64 rows.
void write_cloud_binary(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_binary(const std::string& path);

// Picks the format from the extension: .csv is text, anything else binary.
void write_cloud(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud(const std::string& path);

// Sidecar JSON manifest {kind, d, D, params, seed, sigma, n} written next
// to a cloud file as <path>.manifest.json.
void write_manifest(const std::string& cloud_path, const ManifoldModel& model,
                    std::uint64_t seed, double sigma, std::int64_t n);

std::string manifest_path_for(const std::string& cloud_path);

}  // namespace manifit
