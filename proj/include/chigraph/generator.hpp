#pragma once

#include <array>
#include <cstdint>

#include "chigraph/rng.hpp"
#include "chigraph/types.hpp"

namespace chigraph {

// Geometry parameters of one construction layer. Bottom-ring nodes sit at
// (r_bot cos θ_i, r_bot sin θ_i, z_bottom); the Classic top node sits at
// (r_top cos θ_top, r_top sin θ_top, z_top).
struct LayerGeometry {
  double z_bottom = 0.0;
  double z_top = 0.0;
  double radius_bottom = 1.0;
  double radius_top = 0.0;
  std::array<double, 3> angles{};
  double angle_top = 0.0;
};

inline constexpr double kNoiseFreeLayerStep = 0.5;
inline constexpr double kRingJitterDivisor = 3.1;

// Draws the parameters for the next layer given the z-coordinates of the
// layer above (1.0 for layer 1). Without noise no randomness is consumed.
// With noise the draw order is Δz, r_bot, [r_top], ε1, ε2, ε3, [ε_top].
LayerGeometry next_layer_geometry(SampleType type, bool noise, double z_bottom_above,
                                  double z_top_above, SampleRng& rng);

// Per-type builders. They return a sample in the construction frame (not yet
// centred or rotated) with species, positions and edges filled in and labels
// all NA. RNG draw order: species subset, center offset (noise only), layer
// geometry for L = 1..D, sort-direction coin, then (Crossed) one permutation
// per inter-layer gap.
GraphSample build_simple(std::uint32_t distance, std::uint32_t species_range, bool noise,
                         SampleRng& rng);
GraphSample build_crossed(std::uint32_t distance, std::uint32_t species_range, bool noise,
                          SampleRng& rng);
GraphSample build_classic(std::uint32_t distance, std::uint32_t species_range, bool noise,
                          SampleRng& rng);

// Subtracts the centroid and applies random_rotation(rng).
GraphSample finalize_sample(GraphSample sample, SampleRng& rng);

// Builder, finalize_sample and label_sample, all driven by one stream seeded
// with sample_seed.
GraphSample generate_sample(const GenerationConfig& config, std::uint64_t sample_seed);

}  // namespace chigraph
