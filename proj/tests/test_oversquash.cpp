#include <gtest/gtest.h>

#include <fstream>
#include <numeric>

#include "chigraph/errors.hpp"
#include "chigraph/generator.hpp"
#include "chigraph/oversquash.hpp"
#include "oracles.hpp"

namespace chigraph {
namespace {

using testing::kAllTypes;
using testing::make_config;

GradientNorms layered_norms(const GraphSample& s, const std::vector<double>& per_layer,
                            double center = 100.0) {
  std::vector<double> g(s.size(), 0.0);
  g[0] = center;
  const std::size_t k = nodes_per_layer(s.sample_type);
  for (std::size_t layer = 1; layer <= s.distance; ++layer) {
    for (std::size_t slot = 0; slot < k; ++slot) {
      g[node_at(s.sample_type, layer, slot)] = per_layer[layer - 1];
    }
  }
  return {g};
}

TEST(HopDistances, MatchFloydWarshall) {
  for (auto type : kAllTypes) {
    for (std::uint32_t d : {1u, 3u, 9u}) {
      const auto s = generate_sample(make_config(type, d, true), d);
      const auto hops = hop_distances(s);
      const auto all = testing::floyd_warshall(s.size(), s.edges);
      ASSERT_EQ(hops.size(), s.size());
      for (std::size_t v = 0; v < s.size(); ++v) EXPECT_EQ(hops[v], all[0][v]);
      for (std::size_t layer = 1; layer <= d; ++layer) {
        EXPECT_EQ(hops[node_at(type, layer, 0)], layer);
      }
    }
  }
}

TEST(HopDistances, DisconnectedGraph) {
  auto s = generate_sample(make_config(SampleType::Simple, 2, true), 1);
  std::erase_if(s.edges, [](const Edge& e) { return e.first == 6 || e.second == 6; });
  EXPECT_THROW(hop_distances(s), StructuralError);
}

TEST(Profile, WorkedExample) {
  const auto s = generate_sample(make_config(SampleType::Simple, 2, true), 3);
  const auto p = aggregate_gradient_profile({s}, layered_norms(s, {1.0, 3.0}), 2);
  EXPECT_EQ(p.distances, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_DOUBLE_EQ(p.g_bar[0], 1.0);
  EXPECT_DOUBLE_EQ(p.g_bar[1], 3.0);
  EXPECT_NEAR(p.g_hat[0], 0.25, 1e-12);
  EXPECT_NEAR(p.g_hat[1], 0.75, 1e-12);
  EXPECT_EQ(p.node_counts, (std::vector<std::uint64_t>{3, 3}));
  EXPECT_TRUE(p.empty_buckets.empty());
}

TEST(Profile, CenterIsExcluded) {
  const auto s = generate_sample(make_config(SampleType::Classic, 3, true), 3);
  const auto a = aggregate_gradient_profile({s}, layered_norms(s, {1, 2, 3}, 0.0), 3);
  const auto b = aggregate_gradient_profile({s}, layered_norms(s, {1, 2, 3}, 1e9), 3);
  EXPECT_EQ(a.g_hat, b.g_hat);
  EXPECT_EQ(a.g_bar, b.g_bar);
}

TEST(Profile, ScaleInvarianceAndUnitSum) {
  const auto c = make_config(SampleType::Crossed, 5, true, 20, 2);
  std::vector<GraphSample> samples;
  GradientNorms norms;
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (std::uint64_t i = 0; i < c.count; ++i) {
    samples.push_back(generate_sample(c, derive_sample_seed(c.master_seed, i)));
    std::vector<double> g(samples.back().size());
    for (auto& x : g) x = u(gen);
    norms.push_back(g);
  }
  const auto base = aggregate_gradient_profile(samples, norms, 5);
  EXPECT_NEAR(std::accumulate(base.g_hat.begin(), base.g_hat.end(), 0.0), 1.0, 1e-9);
  for (double k : {1e-6, 1.0, 1e6}) {
    auto scaled = norms;
    for (auto& row : scaled)
      for (auto& x : row) x *= k;
    const auto p = aggregate_gradient_profile(samples, scaled, 5);
    for (std::size_t d = 0; d < 5; ++d) EXPECT_NEAR(p.g_hat[d], base.g_hat[d], 1e-9);
  }
}

TEST(Profile, PoolsNodesAcrossSamples) {
  const auto c = make_config(SampleType::Simple, 1, true, 2, 2);
  const auto s0 = generate_sample(c, 1);
  const auto s1 = generate_sample(c, 2);
  GradientNorms norms{{0, 1, 2, 3}, {0, 4, 5, 6}};
  const auto p = aggregate_gradient_profile({s0, s1}, norms, 1);
  EXPECT_DOUBLE_EQ(p.g_bar[0], 3.5);
  EXPECT_EQ(p.node_counts[0], 6u);
  EXPECT_DOUBLE_EQ(p.g_hat[0], 1.0);
}

TEST(Profile, Errors) {
  const auto s = generate_sample(make_config(SampleType::Simple, 2, true), 3);
  EXPECT_THROW(aggregate_gradient_profile({s}, {}, 2), IndexMismatchError);
  EXPECT_THROW(aggregate_gradient_profile({s}, {{1, 2, 3}}, 2), IndexMismatchError);
  auto neg = layered_norms(s, {1.0, 3.0});
  neg[0][4] = -1.0;
  EXPECT_THROW(aggregate_gradient_profile({s}, neg, 2), InvalidArgumentError);
  EXPECT_THROW(aggregate_gradient_profile({s}, layered_norms(s, {0.0, 0.0}, 5.0), 2),
               UndefinedNormalizationError);
}

TEST(Profile, EmptyBucketsBeyondSampleDepth) {
  const auto s = generate_sample(make_config(SampleType::Simple, 1, true), 3);
  const auto p = aggregate_gradient_profile({s}, {{0, 1, 1, 1}}, 3);
  EXPECT_EQ(p.empty_buckets, (std::vector<std::uint32_t>{2, 3}));
  EXPECT_DOUBLE_EQ(p.g_hat[0], 1.0);
  EXPECT_DOUBLE_EQ(p.g_bar[2], 0.0);
}

TEST(Csv, Layout) {
  const auto s = generate_sample(make_config(SampleType::Simple, 2, true), 3);
  const auto p = aggregate_gradient_profile({s}, layered_norms(s, {1.0, 3.0}), 2);
  EXPECT_EQ(profile_csv(p), "d,g_bar,g_hat\n1,1.0,0.25\n2,3.0,0.75\n");
}

class GradientFile : public ::testing::Test {
 protected:
  std::filesystem::path write(const std::string& text) {
    const auto p = dir_ / "g.jsonl";
    std::ofstream(p, std::ios::trunc) << text;
    return p;
  }
  testing::TempDir dir_{"grad"};
};

TEST_F(GradientFile, AnyOrder) {
  const auto p = write(R"({"sample_index": 1, "norms": [0.5, 1]}
{"sample_index": 0, "norms": [2, 3, 4]}
)");
  const auto g = load_gradient_norms(p, 2);
  EXPECT_EQ(g, (GradientNorms{{2, 3, 4}, {0.5, 1}}));
}

TEST_F(GradientFile, MissingAndDuplicateIndices) {
  EXPECT_THROW(load_gradient_norms(write(R"({"sample_index": 1, "norms": [1]})"
                                         "\n")),
               IndexMismatchError);
  EXPECT_THROW(load_gradient_norms(write(R"({"sample_index": 0, "norms": [1]}
{"sample_index": 0, "norms": [1]}
)")),
               IndexMismatchError);
  EXPECT_THROW(load_gradient_norms(write(R"({"sample_index": 0, "norms": [1]}
)"),
                                   2),
               IndexMismatchError);
}

TEST_F(GradientFile, NegativeNormNamesTheLine) {
  const auto p = write(R"({"sample_index": 0, "norms": [1]}
{"sample_index": 1, "norms": [1, -0.5]}
)");
  try {
    load_gradient_norms(p);
    FAIL() << "expected MalformedRecordError";
  } catch (const MalformedRecordError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST_F(GradientFile, SyntaxAndIo) {
  EXPECT_THROW(load_gradient_norms(write("{\"sample_index\": 0,\n")), MalformedRecordError);
  EXPECT_THROW(load_gradient_norms(dir_ / "absent.jsonl"), IoError);
}

}  // namespace
}  // namespace chigraph
