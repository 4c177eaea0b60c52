#include "chigraph/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chigraph/errors.hpp"

namespace chigraph {
namespace {

struct Candidate {
  NodeIndex node;
  std::uint32_t key;
};

bool in_layer(SampleType type, std::size_t layer, NodeIndex v) {
  return v >= node_at(type, layer, 0) && v < node_at(type, layer, 0) + nodes_per_layer(type);
}

// Follows the unique edge from each layer into the next one and returns the
// final-layer node the chain ends on.
NodeIndex chain_endpoint(const GraphSample& s, const std::vector<std::vector<NodeIndex>>& adj,
                         NodeIndex start) {
  NodeIndex current = start;
  for (std::size_t layer = 2; layer <= s.distance; ++layer) {
    NodeIndex next = 0;
    std::size_t hits = 0;
    for (NodeIndex v : adj[current]) {
      if (in_layer(s.sample_type, layer, v)) {
        next = v;
        ++hits;
      }
    }
    if (hits != 1) {
      throw StructuralError("descendant chain from node " + std::to_string(start) +
                            (hits == 0 ? " is broken" : " branches") + " at layer " +
                            std::to_string(layer));
    }
    current = next;
  }
  return current;
}

bool has_tie(std::vector<Candidate> c) {
  std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
  return std::adjacent_find(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
           return a.key == b.key;
         }) != c.end();
}

void sort_descending(std::vector<Candidate>& c) {
  std::stable_sort(c.begin(), c.end(),
                   [](const Candidate& a, const Candidate& b) { return a.key > b.key; });
}

void require_shape(const GraphSample& s) {
  const std::size_t n = node_count(s.sample_type, s.distance);
  if (s.distance < 1 || s.species.size() < n || s.positions.size() < n) {
    throw StructuralError("sample is too small for its type and distance");
  }
}

}  // namespace

PriorityOrder resolve_priorities(const GraphSample& s) {
  require_shape(s);
  const SampleType type = s.sample_type;
  const std::size_t k = nodes_per_layer(type);

  std::vector<Candidate> candidates;
  if (type == SampleType::Crossed) {
    for (std::size_t slot = 0; slot < k; ++slot) {
      const NodeIndex v = node_at(type, s.distance, slot);
      candidates.push_back({v, s.species[v]});
    }
  } else {
    const auto adj = adjacency(s);
    for (std::size_t slot = 0; slot < k; ++slot) {
      const NodeIndex v = node_at(type, 1, slot);
      candidates.push_back({v, s.species[chain_endpoint(s, adj, v)]});
    }
  }

  PriorityOrder order;
  order.differentiated = !has_tie(candidates);
  sort_descending(candidates);
  for (std::size_t i = 0; i < 3; ++i) order.ranked[i] = candidates[i].node;
  if (type == SampleType::Classic) order.lowest = candidates[3].node;
  return order;
}

double chirality_stp(const GraphSample& s, const PriorityOrder& priorities) {
  require_shape(s);
  const Vec3& pc = s.positions[s.chiral_center];
  const Vec3& p1 = s.positions[priorities.ranked[0]];
  const Vec3& p2 = s.positions[priorities.ranked[1]];
  const Vec3& p3 = s.positions[priorities.ranked[2]];
  if (s.sample_type == SampleType::Classic) {
    if (!priorities.lowest) throw StructuralError("classic sample needs a fourth neighbour");
    const Vec3& p4 = s.positions[*priorities.lowest];
    return scalar_triple_product(p4 - pc, p2 - p1, p3 - p2);
  }
  return scalar_triple_product(pc - p1, pc - p2, pc - p3);
}

GraphSample label_sample(GraphSample sample) {
  const PriorityOrder priorities = resolve_priorities(sample);
  if (!priorities.differentiated) {
    throw StructuralError("neighbours of the chiral center cannot be differentiated");
  }
  const double stp = chirality_stp(sample, priorities);
  if (std::abs(stp) <= kStpTolerance) {
    throw DegenerateGeometryError("scalar triple product " + std::to_string(stp) +
                                  " is within tolerance of zero");
  }
  sample.labels.assign(sample.species.size(), ChiralityTag::NA);
  sample.labels[sample.chiral_center] = stp > 0.0 ? ChiralityTag::R : ChiralityTag::S;
  sample.stp_value = stp;
  return sample;
}

ChiralityTag cip_oracle_label(const GraphSample& s, const PriorityOrder& priorities) {
  if (!priorities.differentiated) return ChiralityTag::NA;
  require_shape(s);

  const Vec3& pc = s.positions[s.chiral_center];
  std::array<Vec3, 3> arms;
  for (std::size_t i = 0; i < 3; ++i) arms[i] = s.positions[priorities.ranked[i]] - pc;

  Vec3 away;
  if (priorities.lowest) {
    away = s.positions[*priorities.lowest] - pc;
  } else {
    away = -((arms[0] + arms[1] + arms[2]) * (1.0 / 3.0));
  }
  const double away_len = norm(away);
  if (!(away_len > 0.0)) throw DegenerateGeometryError("lowest-priority direction is zero");

  // Right-handed frame (e1, e2, e3) with e3 along the lowest-priority arm.
  const Vec3 e3 = away * (1.0 / away_len);
  const Vec3 seed = std::abs(e3.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = seed - e3 * dot(seed, e3);
  e1 *= 1.0 / norm(e1);
  const Vec3 e2 = cross(e3, e1);

  // The viewer sits on the -e3 side looking towards +e3 with e2 up, so the
  // image's rightward axis is -e1.
  std::array<std::array<double, 2>, 3> img;
  for (std::size_t i = 0; i < 3; ++i) img[i] = {-dot(arms[i], e1), dot(arms[i], e2)};

  // Shoelace: positive = counterclockwise on the viewer's image.
  const double twice_area = (img[0][0] * img[1][1] - img[1][0] * img[0][1]) +
                            (img[1][0] * img[2][1] - img[2][0] * img[1][1]) +
                            (img[2][0] * img[0][1] - img[0][0] * img[2][1]);
  if (std::abs(twice_area) <= 1e-12) {
    throw DegenerateGeometryError("projected neighbours are collinear");
  }
  return twice_area < 0.0 ? ChiralityTag::R : ChiralityTag::S;
}

}  // namespace chigraph
