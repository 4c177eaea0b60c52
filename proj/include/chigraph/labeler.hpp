#pragma once

#include <array>
#include <optional>

#include "chigraph/types.hpp"
#include "chigraph/vec3.hpp"

namespace chigraph {

// |STP| at or below this is treated as degenerate geometry.
inline constexpr double kStpTolerance = 1e-9;

// v1 · (v2 × v3)
constexpr double scalar_triple_product(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  return dot(v1, cross(v2, v3));
}

// The nodes entering the chirality decision, highest priority first.
//
// Simple/Classic rank the layer-1 neighbours of the center by the species at
// the end of their descendant chain; Crossed ranks the final-layer nodes by
// their own species. For Classic, `lowest` is the fourth (minimum-priority)
// neighbour. `differentiated` is false when two compared keys tie, in which
// case the center cannot be labelled.
struct PriorityOrder {
  std::array<NodeIndex, 3> ranked{};
  std::optional<NodeIndex> lowest;
  bool differentiated = true;
};

// Throws StructuralError when a descendant chain is broken or ambiguous.
PriorityOrder resolve_priorities(const GraphSample& sample);

// Type-specific STP for the given priorities:
//   Classic: (p4 - pc) · [(p2 - p1) × (p3 - p2)]
//   Simple/Crossed: (pc - p1) · [(pc - p2) × (pc - p3)]
double chirality_stp(const GraphSample& sample, const PriorityOrder& priorities);

// Sets labels (R iff STP > tol, S iff STP < -tol, all other nodes NA) and
// stp_value. Throws DegenerateGeometryError if |STP| <= tol and
// StructuralError if priorities cannot be resolved or differentiated.
GraphSample label_sample(GraphSample sample);

// CIP viewing procedure, independent of the STP: place the center at the
// origin, turn the lowest-priority direction onto +z, project the three
// ranked neighbours onto the image plane of a viewer on the -z side and read
// the 1 -> 2 -> 3 winding (clockwise = R). For three-neighbour centers the
// lowest-priority direction is synthesized as pointing from the centroid of
// the ranked neighbours through the center. Returns NA when the priorities
// are not differentiated; throws DegenerateGeometryError on a degenerate view.
ChiralityTag cip_oracle_label(const GraphSample& sample, const PriorityOrder& priorities);

}  // namespace chigraph
