#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chigraph/types.hpp"

namespace chigraph {

// Per-sample, per-node gradient norms g(v), indexed [sample][node].
using GradientNorms = std::vector<std::vector<double>>;

struct HopGradientProfile {
  std::vector<std::uint32_t> distances;  // 1..D
  std::vector<double> g_bar;             // mean g(v) over nodes with f(v) = d
  std::vector<double> g_hat;             // g_bar normalized to sum to 1
  std::vector<std::uint64_t> node_counts;
  // Distances with no nodes at all; their g_bar is 0.
  std::vector<std::uint32_t> empty_buckets;
};

// BFS hop distance from the chiral center to every node. Throws
// StructuralError when some node is unreachable.
std::vector<std::uint32_t> hop_distances(const GraphSample& sample);

// Pools every node with f(v) = d across all samples, averages its norms, and
// normalizes over d = 1..D. The center (d = 0) and nodes beyond D are ignored.
// Throws IndexMismatchError when norms do not align with the samples,
// InvalidArgumentError for negative or non-finite norms, and
// UndefinedNormalizationError when every g(d) is zero.
HopGradientProfile aggregate_gradient_profile(const std::vector<GraphSample>& samples,
                                              const GradientNorms& norms,
                                              std::uint32_t distance);

// Reads {"sample_index": int, "norms": [real, ...]} records, one per line, in
// any order. Indices must cover 0..n-1 exactly once (and n must equal
// expected_count when given).
GradientNorms load_gradient_norms(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_count = std::nullopt);

// "d,g_bar,g_hat" header plus one row per distance.
std::string profile_csv(const HopGradientProfile& profile);
void write_profile_csv(const HopGradientProfile& profile, const std::filesystem::path& path);

}  // namespace chigraph
