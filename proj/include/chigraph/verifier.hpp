#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chigraph/rng.hpp"
#include "chigraph/types.hpp"

namespace chigraph {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::size_t sample_index = 0;
  std::vector<CheckResult> checks;
  bool overall = true;

  void add(std::string name, bool passed, std::string detail = {});
  // nullptr if no check with that name ran.
  const CheckResult* find(std::string_view name) const;
  std::vector<std::string> failed_checks() const;
};

// Check names, in the order verify_sample runs them.
namespace checks {
inline constexpr std::string_view kNodeCount = "node-count";
inline constexpr std::string_view kEdgeCount = "edge-count";
inline constexpr std::string_view kEdgeSymmetry = "edge-symmetry";
inline constexpr std::string_view kSingleCenter = "single-center";
inline constexpr std::string_view kCenterDegree = "center-degree";
inline constexpr std::string_view kDistinctFinalSpecies = "distinct-final-species";
inline constexpr std::string_view kHomogeneousIntermediate = "homogeneous-intermediate";
inline constexpr std::string_view kStpNonzero = "stp-nonzero";
inline constexpr std::string_view kLabelMatches = "label-matches";
inline constexpr std::string_view kStpAudit = "stp-audit";
inline constexpr std::string_view kRingNoncollinear = "ring-noncollinear";

inline constexpr std::string_view kRigidMotion = "rigid-motion-invariance";
inline constexpr std::string_view kReflection = "reflection-equivariance";
inline constexpr std::string_view kMirrorX = "mirror-x";
inline constexpr std::string_view kDoubleReflection = "double-reflection";
}  // namespace checks

// Relative tolerance used when comparing STP values.
inline constexpr double kStpRelativeTolerance = 1e-9;
// The ring whose points enter the STP must span a triangle of at least this
// area, with every pair of points separated by more than the angular gap
// (radians, measured on the ring's circle).
inline constexpr double kMinRingArea = 1e-8;
inline constexpr double kMinRingAngularGap = 0.06;

// Recomputes everything from species, edges and positions; stored labels and
// stp_value are audited against the recomputation. Never throws.
VerificationReport verify_sample(const GraphSample& sample, std::size_t sample_index = 0);

// n_transforms random proper rigid motions (label and STP unchanged) and n
// random improper ones (label swapped, STP negated), plus the x-mirror and
// a double reflection.
VerificationReport metamorphic_suite(const GraphSample& sample, SampleRng& rng,
                                     std::size_t n_transforms, std::size_t sample_index = 0);

struct DatasetReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<VerificationReport> failures;
  ClassCounts counts;
  bool imbalance_identity = true;
  std::string imbalance_detail;
  bool balance_warning = false;
  std::vector<std::string> warnings;
  bool overall = true;
};

// Per-sample verification (plus metamorphic_suite when metamorphic_transforms
// > 0, seeded from each sample's sample_seed) and the class-imbalance identity
// n_NA = k·D·(n_R + n_S), k = 3 (Simple/Crossed) or 4 (Classic). An R:S split
// outside N/2 ± 3·sqrt(N/4) is a warning only.
DatasetReport verify_dataset(const std::vector<GraphSample>& samples,
                             const GenerationConfig& config,
                             std::size_t metamorphic_transforms = 0);

std::string to_json(const VerificationReport& report);
std::string to_json(const DatasetReport& report);
std::string to_text(const DatasetReport& report);

}  // namespace chigraph
