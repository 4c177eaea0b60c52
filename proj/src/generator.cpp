#include "chigraph/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "chigraph/errors.hpp"
#include "chigraph/labeler.hpp"

namespace chigraph {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 3> kBaseAngles{0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0};

// Returned in draw order; index 0 is the center.
std::vector<std::uint32_t> draw_species(SampleType type, std::uint32_t distance,
                                        std::uint32_t species_range, SampleRng& rng) {
  GenerationConfig probe;
  probe.sample_type = type;
  probe.distance = distance;
  probe.species_range = species_range;
  validate(probe);

  const auto k = static_cast<std::int64_t>(species_needed(type, distance));
  std::vector<std::uint32_t> out;
  for (auto v : uniform_subset(rng, 1, species_range, k)) {
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

Vec3 center_position(bool noise, SampleRng& rng) {
  if (!noise) return {0.0, 0.0, 1.0};
  const double r = uniform_real(rng, 0.0, 1.0);
  const double phi = uniform_real(rng, 0.0, 2.0 * kPi);
  return {r * std::cos(phi), r * std::sin(phi), 1.0};
}

// Slot order for the final-layer ring: slot i receives values[order[i]].
std::array<std::size_t, 3> argsort3(const std::array<std::uint32_t, 3>& values, bool ascending) {
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? values[a] < values[b] : values[a] > values[b];
  });
  return order;
}

void add_edge(GraphSample& s, NodeIndex u, NodeIndex v) {
  s.edges.emplace_back(u, v);
  s.edges.emplace_back(v, u);
}

// Shared body of the Simple and Crossed builders. Crossed wires slot i of
// layer L-1 to slot perm[i] of layer L, with a fresh permutation per gap.
GraphSample build_triplet_chain(SampleType type, std::uint32_t distance,
                                std::uint32_t species_range, bool noise, SampleRng& rng) {
  const auto species = draw_species(type, distance, species_range, rng);
  const std::size_t n = node_count(type, distance);

  GraphSample s;
  s.sample_type = type;
  s.distance = distance;
  s.species.assign(n, 0);
  s.positions.assign(n, Vec3{});
  s.labels.assign(n, ChiralityTag::NA);

  s.species[kChiralCenter] = species[0];
  s.positions[kChiralCenter] = center_position(noise, rng);

  double z = 1.0;
  for (std::uint32_t layer = 1; layer <= distance; ++layer) {
    const auto geo = next_layer_geometry(type, noise, z, z, rng);
    z = geo.z_bottom;
    for (std::size_t slot = 0; slot < 3; ++slot) {
      s.positions[node_at(type, layer, slot)] = {geo.radius_bottom * std::cos(geo.angles[slot]),
                                                 geo.radius_bottom * std::sin(geo.angles[slot]),
                                                 geo.z_bottom};
    }
    if (layer < distance) {
      for (std::size_t slot = 0; slot < 3; ++slot) {
        s.species[node_at(type, layer, slot)] = species[layer];
      }
    }
  }

  const bool ascending = fair_coin(rng);
  const std::array<std::uint32_t, 3> triplet{species[distance], species[distance + 1],
                                             species[distance + 2]};
  const auto order = argsort3(triplet, ascending);
  for (std::size_t slot = 0; slot < 3; ++slot) {
    s.species[node_at(type, distance, slot)] = triplet[order[slot]];
  }

  for (std::size_t slot = 0; slot < 3; ++slot) add_edge(s, kChiralCenter, node_at(type, 1, slot));
  for (std::uint32_t layer = 2; layer <= distance; ++layer) {
    std::array<int, 3> perm{0, 1, 2};
    if (type == SampleType::Crossed) perm = uniform_permutation3(rng);
    for (std::size_t slot = 0; slot < 3; ++slot) {
      add_edge(s, node_at(type, layer - 1, slot),
               node_at(type, layer, static_cast<std::size_t>(perm[slot])));
    }
  }
  return s;
}

}  // namespace

LayerGeometry next_layer_geometry(SampleType type, bool noise, double z_bottom_above,
                                  double z_top_above, SampleRng& rng) {
  LayerGeometry g;
  const bool classic = type == SampleType::Classic;
  if (!noise) {
    g.z_bottom = z_bottom_above - kNoiseFreeLayerStep;
    g.z_top = classic ? z_top_above + kNoiseFreeLayerStep : 0.0;
    g.radius_bottom = 1.0;
    g.radius_top = 0.0;
    g.angles = kBaseAngles;
    g.angle_top = 0.0;
    return g;
  }

  const double dz = uniform_real(rng, 0.1, 1.5);
  g.radius_bottom = uniform_real(rng, 0.1, 1.0);
  if (classic) g.radius_top = uniform_real(rng, 0.0, 1.0);
  constexpr double jitter = kPi / kRingJitterDivisor;
  for (std::size_t i = 0; i < 3; ++i) {
    g.angles[i] = kBaseAngles[i] + uniform_real(rng, -jitter, jitter);
  }
  if (classic) g.angle_top = uniform_real(rng, -kPi, kPi);
  g.z_bottom = z_bottom_above - dz;
  g.z_top = classic ? z_top_above + dz : 0.0;
  return g;
}

GraphSample build_simple(std::uint32_t distance, std::uint32_t species_range, bool noise,
                         SampleRng& rng) {
  return build_triplet_chain(SampleType::Simple, distance, species_range, noise, rng);
}

GraphSample build_crossed(std::uint32_t distance, std::uint32_t species_range, bool noise,
                          SampleRng& rng) {
  return build_triplet_chain(SampleType::Crossed, distance, species_range, noise, rng);
}

GraphSample build_classic(std::uint32_t distance, std::uint32_t species_range, bool noise,
                          SampleRng& rng) {
  constexpr SampleType type = SampleType::Classic;
  const auto species = draw_species(type, distance, species_range, rng);
  const std::size_t n = node_count(type, distance);

  GraphSample s;
  s.sample_type = type;
  s.distance = distance;
  s.species.assign(n, 0);
  s.positions.assign(n, Vec3{});
  s.labels.assign(n, ChiralityTag::NA);

  s.species[kChiralCenter] = species[0];
  s.positions[kChiralCenter] = center_position(noise, rng);

  double z_bot = 1.0;
  double z_top = 1.0;
  for (std::uint32_t layer = 1; layer <= distance; ++layer) {
    const auto geo = next_layer_geometry(type, noise, z_bot, z_top, rng);
    z_bot = geo.z_bottom;
    z_top = geo.z_top;
    for (std::size_t slot = 0; slot < 3; ++slot) {
      s.positions[node_at(type, layer, slot)] = {geo.radius_bottom * std::cos(geo.angles[slot]),
                                                 geo.radius_bottom * std::sin(geo.angles[slot]),
                                                 geo.z_bottom};
    }
    s.positions[node_at(type, layer, 3)] = {geo.radius_top * std::cos(geo.angle_top),
                                            geo.radius_top * std::sin(geo.angle_top), geo.z_top};
    if (layer < distance) {
      for (std::size_t slot = 0; slot < 4; ++slot) {
        s.species[node_at(type, layer, slot)] = species[layer];
      }
    }
  }

  const bool ascending = fair_coin(rng);
  std::array<std::uint32_t, 4> quadruplet{species[distance], species[distance + 1],
                                          species[distance + 2], species[distance + 3]};
  const auto min_it = std::min_element(quadruplet.begin(), quadruplet.end());
  const std::uint32_t fourth = *min_it;
  std::array<std::uint32_t, 3> triplet{};
  std::size_t t = 0;
  for (auto it = quadruplet.begin(); it != quadruplet.end(); ++it) {
    if (it != min_it) triplet[t++] = *it;
  }
  const auto order = argsort3(triplet, ascending);
  for (std::size_t slot = 0; slot < 3; ++slot) {
    s.species[node_at(type, distance, slot)] = triplet[order[slot]];
  }
  s.species[node_at(type, distance, 3)] = fourth;

  for (std::size_t slot = 0; slot < 4; ++slot) add_edge(s, kChiralCenter, node_at(type, 1, slot));
  for (std::uint32_t layer = 2; layer <= distance; ++layer) {
    for (std::size_t slot = 0; slot < 4; ++slot) {
      add_edge(s, node_at(type, layer - 1, slot), node_at(type, layer, slot));
    }
  }
  return s;
}

GraphSample finalize_sample(GraphSample sample, SampleRng& rng) {
  Vec3 centroid;
  for (const auto& p : sample.positions) centroid += p;
  if (!sample.positions.empty()) centroid *= 1.0 / static_cast<double>(sample.positions.size());
  const Mat3 rotation = random_rotation(rng);
  for (auto& p : sample.positions) p = rotation * (p - centroid);
  return sample;
}

GraphSample generate_sample(const GenerationConfig& config, std::uint64_t sample_seed) {
  validate(config);
  SampleRng rng(sample_seed);
  GraphSample s;
  switch (config.sample_type) {
    case SampleType::Simple:
      s = build_simple(config.distance, config.species_range, config.noise, rng);
      break;
    case SampleType::Crossed:
      s = build_crossed(config.distance, config.species_range, config.noise, rng);
      break;
    case SampleType::Classic:
      s = build_classic(config.distance, config.species_range, config.noise, rng);
      break;
  }
  s.sample_seed = sample_seed;
  return label_sample(finalize_sample(std::move(s), rng));
}

}  // namespace chigraph
