#include "chigraph/types.hpp"

#include <algorithm>
#include <set>

#include "chigraph/errors.hpp"

namespace chigraph {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return "invalid-argument";
    case ErrorKind::InfeasibleSampling:
      return "infeasible-sampling";
    case ErrorKind::DegenerateGeometry:
      return "degenerate-geometry";
    case ErrorKind::Structural:
      return "structural";
    case ErrorKind::MalformedRecord:
      return "malformed-record";
    case ErrorKind::InvariantViolation:
      return "invariant-violation";
    case ErrorKind::IndexMismatch:
      return "index-mismatch";
    case ErrorKind::UndefinedNormalization:
      return "undefined-normalization";
    case ErrorKind::Io:
      return "io";
  }
  return "unknown";
}

std::string_view to_string(ChiralityTag tag) noexcept {
  switch (tag) {
    case ChiralityTag::NA:
      return "NA";
    case ChiralityTag::R:
      return "R";
    case ChiralityTag::S:
      return "S";
  }
  return "NA";
}

std::string_view to_string(SampleType type) noexcept {
  switch (type) {
    case SampleType::Simple:
      return "simple";
    case SampleType::Crossed:
      return "crossed";
    case SampleType::Classic:
      return "classic";
  }
  return "simple";
}

std::optional<ChiralityTag> parse_chirality_tag(std::string_view text) noexcept {
  if (text == "NA") return ChiralityTag::NA;
  if (text == "R") return ChiralityTag::R;
  if (text == "S") return ChiralityTag::S;
  return std::nullopt;
}

std::optional<SampleType> parse_sample_type(std::string_view text) noexcept {
  if (text == "simple") return SampleType::Simple;
  if (text == "crossed") return SampleType::Crossed;
  if (text == "classic") return SampleType::Classic;
  return std::nullopt;
}

void validate(const GenerationConfig& config) {
  if (config.distance < 1) throw InvalidArgumentError("distance must be >= 1");
  if (config.count < 1) throw InvalidArgumentError("count must be >= 1");
  const auto needed = species_needed(config.sample_type, config.distance);
  if (config.species_range < needed) {
    throw InfeasibleSamplingError(
        "species_range " + std::to_string(config.species_range) + " is too small: " +
        std::string(to_string(config.sample_type)) + " with distance " +
        std::to_string(config.distance) + " needs at least " + std::to_string(needed) +
        " distinct species");
  }
}

std::optional<std::string> find_invariant_violation(const GraphSample& s) {
  if (s.distance < 1) return "distance must be >= 1";
  const std::size_t n = node_count(s.sample_type, s.distance);
  if (s.species.size() != n) {
    return "expected " + std::to_string(n) + " nodes, found " + std::to_string(s.species.size());
  }
  if (s.positions.size() != n) return "positions length does not match node count";
  if (s.labels.size() != n) return "labels length does not match node count";
  if (s.chiral_center != kChiralCenter) return "chiral_center must be node 0";
  if (std::any_of(s.species.begin(), s.species.end(), [](auto v) { return v == 0; })) {
    return "species must be positive integers";
  }

  std::set<Edge> seen;
  for (const auto& [u, v] : s.edges) {
    if (u >= n || v >= n) return "edge endpoint out of range";
    if (u == v) return "self-loop at node " + std::to_string(u);
    if (!seen.insert({u, v}).second) {
      return "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
    }
  }
  for (const auto& [u, v] : s.edges) {
    if (!seen.contains({v, u})) {
      return "edge (" + std::to_string(u) + "," + std::to_string(v) + ") has no reverse entry";
    }
  }
  const std::size_t undirected = undirected_edge_count(s.sample_type, s.distance);
  if (s.edges.size() != 2 * undirected) {
    return "expected " + std::to_string(2 * undirected) + " directed edges, found " +
           std::to_string(s.edges.size());
  }

  for (std::size_t i = 0; i < n; ++i) {
    const bool is_center = i == s.chiral_center;
    const bool tagged = s.labels[i] != ChiralityTag::NA;
    if (is_center && !tagged) return "chiral center is labelled NA";
    if (!is_center && tagged) return "node " + std::to_string(i) + " carries an R/S label";
  }

  if (!(s.stp_value > 0.0) && !(s.stp_value < 0.0)) return "stp_value must be nonzero";
  const ChiralityTag expected = s.stp_value > 0.0 ? ChiralityTag::R : ChiralityTag::S;
  if (s.center_label() != expected) return "center label does not match sign of stp_value";
  return std::nullopt;
}

std::vector<std::vector<NodeIndex>> adjacency(const GraphSample& sample) {
  const std::size_t n = sample.size();
  std::vector<std::vector<NodeIndex>> adj(n);
  for (const auto& [u, v] : sample.edges) {
    if (u >= n || v >= n) continue;
    adj[u].push_back(v);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

ClassCounts count_classes(const std::vector<GraphSample>& samples) {
  ClassCounts counts;
  for (const auto& s : samples) {
    for (auto tag : s.labels) {
      switch (tag) {
        case ChiralityTag::NA:
          ++counts.na;
          break;
        case ChiralityTag::R:
          ++counts.r;
          break;
        case ChiralityTag::S:
          ++counts.s;
          break;
      }
    }
  }
  return counts;
}

}  // namespace chigraph
