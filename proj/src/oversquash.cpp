#include "chigraph/oversquash.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <map>

#include "json.hpp"

#include "chigraph/dataset.hpp"
#include "chigraph/errors.hpp"

namespace chigraph {

std::vector<std::uint32_t> hop_distances(const GraphSample& sample) {
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  const auto adj = adjacency(sample);
  std::vector<std::uint32_t> dist(sample.size(), unseen);
  if (sample.chiral_center >= dist.size()) {
    throw StructuralError("chiral center index out of range");
  }
  std::deque<NodeIndex> frontier{sample.chiral_center};
  dist[sample.chiral_center] = 0;
  while (!frontier.empty()) {
    const NodeIndex u = frontier.front();
    frontier.pop_front();
    for (NodeIndex v : adj[u]) {
      if (dist[v] == unseen) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] == unseen) {
      throw StructuralError("disconnected graph: node " + std::to_string(v) +
                            " is unreachable from the chiral center");
    }
  }
  return dist;
}

HopGradientProfile aggregate_gradient_profile(const std::vector<GraphSample>& samples,
                                              const GradientNorms& norms,
                                              std::uint32_t distance) {
  if (distance < 1) throw InvalidArgumentError("distance must be >= 1");
  if (norms.size() != samples.size()) {
    throw IndexMismatchError("gradient norms cover " + std::to_string(norms.size()) +
                             " samples, dataset has " + std::to_string(samples.size()));
  }

  std::vector<double> sums(distance + 1, 0.0);
  std::vector<std::uint64_t> counts(distance + 1, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (norms[i].size() != samples[i].size()) {
      throw IndexMismatchError("sample " + std::to_string(i) + " has " +
                               std::to_string(samples[i].size()) + " nodes but " +
                               std::to_string(norms[i].size()) + " norms");
    }
    const auto f = hop_distances(samples[i]);
    for (std::size_t v = 0; v < f.size(); ++v) {
      const double g = norms[i][v];
      if (!std::isfinite(g) || g < 0.0) {
        throw InvalidArgumentError("sample " + std::to_string(i) + " node " +
                                   std::to_string(v) + ": norm must be finite and >= 0");
      }
      if (f[v] == 0 || f[v] > distance) continue;
      sums[f[v]] += g;
      ++counts[f[v]];
    }
  }

  HopGradientProfile p;
  double total = 0.0;
  for (std::uint32_t d = 1; d <= distance; ++d) {
    const double mean = counts[d] > 0 ? sums[d] / static_cast<double>(counts[d]) : 0.0;
    if (counts[d] == 0) p.empty_buckets.push_back(d);
    p.distances.push_back(d);
    p.g_bar.push_back(mean);
    p.node_counts.push_back(counts[d]);
    total += mean;
  }
  if (!(total > 0.0)) {
    throw UndefinedNormalizationError("all per-distance gradient averages are zero");
  }
  for (double g : p.g_bar) p.g_hat.push_back(g / total);
  return p;
}

GradientNorms load_gradient_norms(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_count) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());

  std::map<std::uint64_t, std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw MalformedRecordError(line_number, "empty record");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedRecordError(line_number, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("sample_index") || !j.contains("norms")) {
      throw MalformedRecordError(line_number, "expected {\"sample_index\": ..., \"norms\": [...]}");
    }
    const auto& idx = j["sample_index"];
    if (!idx.is_number_unsigned() && !(idx.is_number_integer() && idx.get<std::int64_t>() >= 0)) {
      throw MalformedRecordError(line_number, "sample_index must be a non-negative integer");
    }
    const auto& arr = j["norms"];
    if (!arr.is_array()) throw MalformedRecordError(line_number, "norms must be an array");
    std::vector<double> values;
    values.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number()) throw MalformedRecordError(line_number, "norms must be numbers");
      const double g = v.get<double>();
      if (!std::isfinite(g) || g < 0.0) {
        throw MalformedRecordError(line_number, "norm " + format_real(g) +
                                                    " is invalid (L2 norms are >= 0)");
      }
      values.push_back(g);
    }
    const auto index = idx.get<std::uint64_t>();
    if (!rows.emplace(index, std::move(values)).second) {
      throw IndexMismatchError("sample_index " + std::to_string(index) + " appears twice");
    }
  }
  if (is.bad()) throw IoError("failed reading " + path.string());

  GradientNorms out;
  out.reserve(rows.size());
  std::uint64_t expect = 0;
  for (auto& [index, values] : rows) {
    if (index != expect) {
      throw IndexMismatchError("missing gradient record for sample_index " +
                               std::to_string(expect));
    }
    out.push_back(std::move(values));
    ++expect;
  }
  if (expected_count && out.size() != *expected_count) {
    throw IndexMismatchError("expected gradient records for " + std::to_string(*expected_count) +
                             " samples, found " + std::to_string(out.size()));
  }
  return out;
}

std::string profile_csv(const HopGradientProfile& p) {
  std::string out = "d,g_bar,g_hat\n";
  for (std::size_t i = 0; i < p.distances.size(); ++i) {
    out += std::to_string(p.distances[i]) + "," + format_real(p.g_bar[i]) + "," +
           format_real(p.g_hat[i]) + "\n";
  }
  return out;
}

void write_profile_csv(const HopGradientProfile& profile, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << profile_csv(profile);
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace chigraph
