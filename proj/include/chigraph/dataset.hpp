#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chigraph/rng.hpp"
#include "chigraph/types.hpp"

namespace chigraph {

using SplitRatios = std::array<double, 3>;

inline constexpr SplitRatios kDefaultSplitRatios{0.8, 0.1, 0.1};
inline constexpr double kDefaultWeightConstant = 10.0;

// Sample index used to derive the split-shuffle stream from the master seed.
inline constexpr std::uint64_t kSplitStreamIndex = std::uint64_t{1} << 63;

struct DatasetOptions {
  SplitRatios split_ratios = kDefaultSplitRatios;
  bool sequential_split = false;
  double weight_constant = kDefaultWeightConstant;
  // 0 = std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct Dataset {
  std::vector<GraphSample> samples;
  DatasetManifest manifest;
};

// Generates config.count samples, sample i seeded with
// derive_sample_seed(master_seed, i). Output order and content do not depend
// on the thread count.
std::vector<GraphSample> generate_samples(const GenerationConfig& config, unsigned threads = 0);

Dataset generate_dataset(const GenerationConfig& config, const DatasetOptions& options = {});

// Throws InvalidArgumentError unless all ratios are positive and sum to 1
// within 1e-9.
void validate_ratios(const SplitRatios& ratios);

// val = floor(count * r_val), test = floor(count * r_test), train takes the
// remainder. A 1e-9 slack absorbs products like 0.29 * 100 = 28.999....
std::array<std::uint64_t, 3> split_sizes(std::uint64_t count, const SplitRatios& ratios);

// Seeded Fisher-Yates shuffle of 0..count-1 cut into train/val/test; each
// list is returned sorted ascending.
SplitIndices split_dataset(std::uint64_t count, const SplitRatios& ratios, SampleRng& rng);

// Contiguous blocks: train first, then val, then test.
SplitIndices split_sequential(std::uint64_t count, const SplitRatios& ratios);

// (1, b + 3D, b + 3D)
std::array<double, 3> class_weights(double b, std::uint32_t distance);

// Fills counts, weights and splits for the given samples.
DatasetManifest build_manifest(const GenerationConfig& config,
                               const std::vector<GraphSample>& samples,
                               const DatasetOptions& options);

// Recomputes split_indices in place from the manifest's split settings.
void resplit(DatasetManifest& manifest);

// ---------------------------------------------------------------------------
// Files: <name>.jsonl holds one sample per line; <name>.manifest.json sits next
// to it. Reals are written with 17 significant digits.
// ---------------------------------------------------------------------------

std::filesystem::path manifest_path_for(const std::filesystem::path& samples_path);

std::string format_real(double value);
std::string serialize_sample(const GraphSample& sample);
std::string serialize_samples(const std::vector<GraphSample>& samples);
std::string serialize_manifest(const DatasetManifest& manifest);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
void serialize_dataset(const std::vector<GraphSample>& samples, const DatasetManifest& manifest,
                       const std::filesystem::path& samples_path);

struct ParseOptions {
  // Check every GraphSample invariant while reading.
  bool validate_invariants = true;
};

// Throws MalformedRecordError (1-based line) for syntax, type or enumeration
// errors and InvariantViolationError (0-based sample index) for records that
// parse but break a GraphSample invariant.
GraphSample parse_sample(const std::string& line, std::size_t line_number);
std::vector<GraphSample> parse_samples(const std::filesystem::path& path,
                                       const ParseOptions& options = {});
DatasetManifest parse_manifest(const std::filesystem::path& path);

// Reads the sample file and its sibling manifest. Throws IoError when either
// is unreadable and InvariantViolationError when the line count or class
// counts disagree with the manifest.
Dataset parse_dataset(const std::filesystem::path& samples_path, const ParseOptions& options = {});

struct DatasetStats {
  std::uint64_t samples = 0;
  ClassCounts counts;
  std::uint64_t nodes = 0;
  std::uint64_t undirected_edges = 0;
  std::uint64_t directed_edges = 0;
  std::array<double, 3> weights{};
  double weight_constant = 0.0;
  double min_abs_stp = 0.0;
  double max_abs_stp = 0.0;

  // "n_R:n_S" reduced to lowest terms ("1:0" when only R is present).
  std::string ratio_text() const;
};

// Weights use the largest distance present (all samples share one distance in
// generated datasets).
DatasetStats dataset_stats(const std::vector<GraphSample>& samples,
                           double weight_constant = kDefaultWeightConstant);

std::string to_text(const DatasetStats& stats);
std::string to_json(const DatasetStats& stats);

}  // namespace chigraph
