#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <set>

#include "chigraph/errors.hpp"
#include "chigraph/generator.hpp"
#include "chigraph/labeler.hpp"
#include "oracles.hpp"

namespace chigraph {
namespace {

using testing::kAllTypes;
using testing::make_config;

GraphSample build(SampleType type, std::uint32_t d, std::uint32_t range, bool noise,
                  SampleRng& rng) {
  switch (type) {
    case SampleType::Simple:
      return build_simple(d, range, noise, rng);
    case SampleType::Crossed:
      return build_crossed(d, range, noise, rng);
    case SampleType::Classic:
      return build_classic(d, range, noise, rng);
  }
  return {};
}

TEST(Generator, NodeAndEdgeCounts) {
  for (auto type : kAllTypes) {
    const std::size_t k = type == SampleType::Classic ? 4 : 3;
    for (std::uint32_t d = 1; d <= 9; ++d) {
      for (bool noise : {false, true}) {
        const auto s = generate_sample(make_config(type, d, noise), d * 31 + noise);
        EXPECT_EQ(s.size(), 1 + k * d);
        EXPECT_EQ(s.positions.size(), s.size());
        EXPECT_EQ(s.labels.size(), s.size());
        EXPECT_EQ(s.edges.size(), 2 * k * d);
      }
    }
  }
}

TEST(Generator, SameSeedSameSample) {
  for (auto type : kAllTypes) {
    const auto c = make_config(type, 4, true);
    EXPECT_EQ(generate_sample(c, 77), generate_sample(c, 77));
    EXPECT_NE(generate_sample(c, 77).positions, generate_sample(c, 78).positions);
  }
}

TEST(Generator, SpeciesRangeTooSmall) {
  EXPECT_THROW(generate_sample(make_config(SampleType::Simple, 3, true, 1, 7, 5), 1),
               InfeasibleSamplingError);
  EXPECT_THROW(generate_sample(make_config(SampleType::Classic, 1, true, 1, 7, 4), 1),
               InfeasibleSamplingError);
  EXPECT_NO_THROW(generate_sample(make_config(SampleType::Classic, 1, true, 1, 7, 5), 1));
}

TEST(Generator, SpeciesLayout) {
  for (auto type : kAllTypes) {
    const std::size_t k = nodes_per_layer(type);
    for (std::uint32_t d : {1u, 3u, 7u}) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto c = make_config(type, d, true);
        const auto s = generate_sample(c, seed);
        std::set<std::uint32_t> used{s.species[0]};
        for (std::uint32_t layer = 1; layer < d; ++layer) {
          const auto sp = s.species[node_at(type, layer, 0)];
          for (std::size_t slot = 1; slot < k; ++slot) {
            EXPECT_EQ(s.species[node_at(type, layer, slot)], sp);
          }
          EXPECT_TRUE(used.insert(sp).second);
        }
        for (std::size_t slot = 0; slot < k; ++slot) {
          EXPECT_TRUE(used.insert(s.species[node_at(type, d, slot)]).second);
        }
        EXPECT_EQ(used.size(), species_needed(type, d));
        for (auto sp : s.species) {
          EXPECT_GE(sp, 1u);
          EXPECT_LE(sp, c.species_range);
        }
      }
    }
  }
}

TEST(Generator, ClassicMinimumSpeciesSitsOnTheStackedChain) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = generate_sample(make_config(SampleType::Classic, 3, true), seed);
    std::uint32_t lo = UINT32_MAX;
    for (std::size_t slot = 0; slot < 4; ++slot) {
      lo = std::min(lo, s.species[node_at(SampleType::Classic, 3, slot)]);
    }
    EXPECT_EQ(s.species[node_at(SampleType::Classic, 3, 3)], lo);
  }
}

TEST(Generator, FinalRingIsSortedOneWayOrTheOther) {
  int ascending = 0;
  constexpr int n = 2000;
  for (int seed = 0; seed < n; ++seed) {
    const auto s = generate_sample(make_config(SampleType::Simple, 2, true), seed);
    const auto a = s.species[node_at(SampleType::Simple, 2, 0)];
    const auto b = s.species[node_at(SampleType::Simple, 2, 1)];
    const auto c = s.species[node_at(SampleType::Simple, 2, 2)];
    const bool up = a < b && b < c;
    const bool down = a > b && b > c;
    EXPECT_TRUE(up || down);
    ascending += up ? 1 : 0;
  }
  EXPECT_NEAR(ascending, n / 2, 3.0 * std::sqrt(n / 4.0));
}

TEST(Generator, NoiseFreeConstructionFrame) {
  constexpr double pi = std::numbers::pi;
  for (auto type : kAllTypes) {
    SampleRng rng(5);
    const auto s = build(type, 3, 20, false, rng);
    EXPECT_EQ(s.positions[0], (Vec3{0.0, 0.0, 1.0}));
    for (std::uint32_t layer = 1; layer <= 3; ++layer) {
      for (std::size_t slot = 0; slot < 3; ++slot) {
        const Vec3 p = s.positions[node_at(type, layer, slot)];
        const double theta = 2.0 * pi * static_cast<double>(slot) / 3.0;
        EXPECT_NEAR(p.x, std::cos(theta), 1e-15);
        EXPECT_NEAR(p.y, std::sin(theta), 1e-15);
        EXPECT_DOUBLE_EQ(p.z, 1.0 - 0.5 * layer);
      }
      if (type == SampleType::Classic) {
        EXPECT_EQ(s.positions[node_at(type, layer, 3)], (Vec3{0.0, 0.0, 1.0 + 0.5 * layer}));
      }
    }
  }
}

TEST(Generator, NoiseFreeGeometryConsumesNoDraws) {
  SampleRng rng(1);
  const auto before = rng.state();
  (void)next_layer_geometry(SampleType::Classic, false, 1.0, 1.0, rng);
  EXPECT_EQ(rng.state(), before);
}

TEST(Generator, NoisyLayerParameterRanges) {
  constexpr double pi = std::numbers::pi;
  SampleRng rng(9);
  for (int i = 0; i < 10000; ++i) {
    const auto g = next_layer_geometry(SampleType::Classic, true, 0.0, 2.0, rng);
    EXPECT_GT(-g.z_bottom, 0.1 - 1e-15);
    EXPECT_LT(-g.z_bottom, 1.5);
    EXPECT_NEAR(g.z_top - 2.0, -g.z_bottom, 1e-12);
    EXPECT_GE(g.radius_bottom, 0.1);
    EXPECT_LT(g.radius_bottom, 1.0);
    EXPECT_GE(g.radius_top, 0.0);
    EXPECT_LT(g.radius_top, 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      const double base = 2.0 * pi * static_cast<double>(j) / 3.0;
      EXPECT_LE(std::abs(g.angles[j] - base), pi / 3.1);
    }
    EXPECT_GE(g.angle_top, -pi);
    EXPECT_LT(g.angle_top, pi);
  }
}

TEST(Generator, NoisyCenterOffset) {
  for (auto type : kAllTypes) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      SampleRng rng(seed);
      const auto s = build(type, 2, 20, true, rng);
      const Vec3 c = s.positions[0];
      EXPECT_EQ(c.z, 1.0);
      EXPECT_LT(std::hypot(c.x, c.y), 1.0);
    }
  }
}

TEST(Generator, FinalizeCentersAndPreservesDistances) {
  for (auto type : kAllTypes) {
    SampleRng rng(21);
    const auto raw = build(type, 4, 20, true, rng);
    const auto fin = finalize_sample(raw, rng);
    Vec3 centroid;
    for (const auto& p : fin.positions) centroid += p;
    centroid *= 1.0 / static_cast<double>(fin.positions.size());
    EXPECT_NEAR(norm(centroid), 0.0, 1e-12);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (std::size_t j = i + 1; j < raw.size(); ++j) {
        EXPECT_NEAR(norm(raw.positions[i] - raw.positions[j]),
                    norm(fin.positions[i] - fin.positions[j]), 1e-12);
      }
    }
    EXPECT_EQ(raw.species, fin.species);
    EXPECT_EQ(raw.edges, fin.edges);
  }
}

TEST(Generator, LabelsOnlyTheCenter) {
  for (auto type : kAllTypes) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto s = generate_sample(make_config(type, 3, true), seed);
      EXPECT_NE(s.labels[0], ChiralityTag::NA);
      EXPECT_EQ(std::count(s.labels.begin(), s.labels.end(), ChiralityTag::NA),
                static_cast<long>(s.size() - 1));
      EXPECT_GT(std::abs(s.stp_value), kStpTolerance);
      EXPECT_EQ(s.labels[0] == ChiralityTag::R, s.stp_value > 0.0);
      EXPECT_EQ(s.sample_seed, seed);
    }
  }
}

TEST(Generator, BothHandednessOccurRoughlyEqually) {
  for (auto type : kAllTypes) {
    for (bool noise : {false, true}) {
      int r = 0;
      constexpr int n = 2000;
      for (int seed = 0; seed < n; ++seed) {
        r += generate_sample(make_config(type, 2, noise), seed).center_label() == ChiralityTag::R;
      }
      EXPECT_NEAR(r, n / 2, 4.0 * std::sqrt(n / 4.0)) << to_string(type) << " noise=" << noise;
    }
  }
}

TEST(Generator, CrossedWiringIsAPermutationPerGap) {
  // Each gap is a bijection between consecutive rings; over many samples all
  // six bijections appear, while Simple stays slot-aligned.
  constexpr auto type = SampleType::Crossed;
  std::map<std::array<std::size_t, 3>, int> seen;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    const auto s = generate_sample(make_config(type, 3, true), seed);
    const auto adj = adjacency(s);
    for (std::size_t layer = 2; layer <= 3; ++layer) {
      std::array<std::size_t, 3> target{};
      for (std::size_t slot = 0; slot < 3; ++slot) {
        std::size_t hits = 0;
        for (NodeIndex v : adj[node_at(type, layer - 1, slot)]) {
          if (v >= node_at(type, layer, 0) && v <= node_at(type, layer, 2)) {
            target[slot] = v - node_at(type, layer, 0);
            ++hits;
          }
        }
        ASSERT_EQ(hits, 1u);
      }
      auto sorted = target;
      std::sort(sorted.begin(), sorted.end());
      ASSERT_EQ(sorted, (std::array<std::size_t, 3>{0, 1, 2}));
      ++seen[target];
    }
  }
  EXPECT_EQ(seen.size(), 6u);
  for (const auto& [perm, count] : seen) EXPECT_NEAR(count, 200, 60);

  const auto simple = generate_sample(make_config(SampleType::Simple, 3, true), 1);
  const auto adj = adjacency(simple);
  for (std::size_t slot = 0; slot < 3; ++slot) {
    const auto& nbrs = adj[node_at(SampleType::Simple, 2, slot)];
    EXPECT_TRUE(std::binary_search(nbrs.begin(), nbrs.end(), node_at(SampleType::Simple, 3, slot)));
  }
}

TEST(Generator, CenterIsConnectedToEveryLayerOneNode) {
  for (auto type : kAllTypes) {
    const auto s = generate_sample(make_config(type, 5, true), 3);
    const auto adj = adjacency(s);
    EXPECT_EQ(adj[0].size(), nodes_per_layer(type));
    for (std::size_t slot = 0; slot < nodes_per_layer(type); ++slot) {
      EXPECT_TRUE(std::binary_search(adj[0].begin(), adj[0].end(), node_at(type, 1, slot)));
    }
    for (std::size_t slot = 0; slot < nodes_per_layer(type); ++slot) {
      EXPECT_EQ(adj[node_at(type, 5, slot)].size(), 1u);
    }
  }
}

}  // namespace
}  // namespace chigraph
