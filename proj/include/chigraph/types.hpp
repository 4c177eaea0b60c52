#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chigraph/vec3.hpp"

namespace chigraph {

enum class ChiralityTag : std::uint8_t { NA, R, S };

enum class SampleType : std::uint8_t { Simple, Crossed, Classic };

std::string_view to_string(ChiralityTag tag) noexcept;
std::string_view to_string(SampleType type) noexcept;

// Exact-match parsers ("NA"/"R"/"S", "simple"/"crossed"/"classic").
std::optional<ChiralityTag> parse_chirality_tag(std::string_view text) noexcept;
std::optional<SampleType> parse_sample_type(std::string_view text) noexcept;

// The opposite-handedness tag; NA maps to itself.
constexpr ChiralityTag mirrored(ChiralityTag tag) noexcept {
  switch (tag) {
    case ChiralityTag::R:
      return ChiralityTag::S;
    case ChiralityTag::S:
      return ChiralityTag::R;
    default:
      return ChiralityTag::NA;
  }
}

// ---------------------------------------------------------------------------
// Canonical indexing
//
// The chiral center is node 0. Layer L (1-based) occupies node indices
// k(L-1)+1 ... kL, where k = 3 for Simple/Crossed and k = 4 for Classic.
// Within a layer, slot s (0-based) is node k(L-1)+1+s. For Classic, slot 3
// is the single node stacked above the center.
// ---------------------------------------------------------------------------

using NodeIndex = std::uint32_t;

inline constexpr NodeIndex kChiralCenter = 0;

constexpr std::size_t nodes_per_layer(SampleType type) noexcept {
  return type == SampleType::Classic ? 4 : 3;
}

constexpr std::size_t node_count(SampleType type, std::size_t distance) noexcept {
  return 1 + nodes_per_layer(type) * distance;
}

constexpr std::size_t undirected_edge_count(SampleType type, std::size_t distance) noexcept {
  return nodes_per_layer(type) * distance;
}

constexpr NodeIndex node_at(SampleType type, std::size_t layer, std::size_t slot) noexcept {
  return static_cast<NodeIndex>(nodes_per_layer(type) * (layer - 1) + 1 + slot);
}

// Species drawn per sample: center, one per intermediate layer, and the
// distinct final-layer species.
constexpr std::size_t species_needed(SampleType type, std::size_t distance) noexcept {
  return (type == SampleType::Classic ? 5 : 4) + (distance - 1);
}

struct GenerationConfig {
  SampleType sample_type = SampleType::Simple;
  std::uint32_t distance = 1;
  std::uint32_t species_range = 15;
  bool noise = true;
  std::uint64_t count = 25000;
  std::uint64_t master_seed = 0;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

// Throws InvalidArgumentError (distance/count) or InfeasibleSamplingError
// (species_range too small for sampling without replacement).
void validate(const GenerationConfig& config);

using Edge = std::pair<NodeIndex, NodeIndex>;

struct GraphSample {
  SampleType sample_type = SampleType::Simple;
  std::uint32_t distance = 1;
  std::vector<std::uint32_t> species;
  std::vector<Vec3> positions;
  std::vector<Edge> edges;
  NodeIndex chiral_center = kChiralCenter;
  std::vector<ChiralityTag> labels;
  double stp_value = 0.0;
  std::uint64_t sample_seed = 0;

  std::size_t size() const noexcept { return species.size(); }
  ChiralityTag center_label() const noexcept {
    return chiral_center < labels.size() ? labels[chiral_center] : ChiralityTag::NA;
  }

  friend bool operator==(const GraphSample&, const GraphSample&) = default;
};

// Checks every structural invariant a GraphSample must satisfy (counts,
// canonical indexing, edge symmetry, single labelled center, STP sign
// consistency). Returns a description of the first violation, if any.
std::optional<std::string> find_invariant_violation(const GraphSample& sample);

// Neighbour lists built from the directed edge list (duplicates collapsed,
// out-of-range endpoints ignored).
std::vector<std::vector<NodeIndex>> adjacency(const GraphSample& sample);

struct ClassCounts {
  std::uint64_t na = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;

  std::uint64_t total() const noexcept { return na + r + s; }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

ClassCounts count_classes(const std::vector<GraphSample>& samples);

struct SplitIndices {
  std::vector<std::uint64_t> train;
  std::vector<std::uint64_t> val;
  std::vector<std::uint64_t> test;

  friend bool operator==(const SplitIndices&, const SplitIndices&) = default;
};

inline constexpr std::string_view kFormatVersion = "chigraph-dataset/1";
inline constexpr std::string_view kGeneratorVersion = "1.0.0";

struct DatasetManifest {
  GenerationConfig config;
  std::array<double, 3> split_ratios{0.8, 0.1, 0.1};
  bool sequential_split = false;
  std::uint64_t split_seed = 0;
  SplitIndices split_indices;
  ClassCounts class_counts;
  std::array<double, 3> class_weights{1.0, 13.0, 13.0};
  double weight_constant = 10.0;
  std::string samples_file;
  std::string format_version{kFormatVersion};
  std::string generator_version{kGeneratorVersion};

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

}  // namespace chigraph
