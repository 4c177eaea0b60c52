#include "chigraph/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

#include "chigraph/errors.hpp"
#include "chigraph/labeler.hpp"

namespace chigraph {

void VerificationReport::add(std::string name, bool passed, std::string detail) {
  overall = overall && passed;
  checks.push_back({std::move(name), passed, std::move(detail)});
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> VerificationReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

namespace {

std::string str(std::string_view v) { return std::string(v); }

bool close_relative(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct Recomputed {
  bool ok = false;
  bool has_stp = false;
  ChiralityTag tag = ChiralityTag::NA;
  double stp = 0.0;
  std::string error;
};

Recomputed recompute(const GraphSample& s) {
  Recomputed r;
  try {
    const auto priorities = resolve_priorities(s);
    r.stp = chirality_stp(s, priorities);
    r.has_stp = true;
    if (!priorities.differentiated) {
      r.error = "neighbours cannot be differentiated";
      return r;
    }
    if (std::abs(r.stp) <= kStpTolerance) {
      r.error = "degenerate STP";
      return r;
    }
    r.tag = r.stp > 0.0 ? ChiralityTag::R : ChiralityTag::S;
    r.ok = true;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

// Ring whose three points enter the STP: layer 1 for Simple/Classic, layer D
// for Crossed (slots 0..2 in both cases).
std::array<NodeIndex, 3> stp_ring(const GraphSample& s) {
  const std::size_t layer = s.sample_type == SampleType::Crossed ? s.distance : 1;
  return {node_at(s.sample_type, layer, 0), node_at(s.sample_type, layer, 1),
          node_at(s.sample_type, layer, 2)};
}

GraphSample transformed(const GraphSample& s, const Mat3& m, const Vec3& t) {
  GraphSample out = s;
  for (auto& p : out.positions) p = m * p + t;
  return out;
}

Mat3 x_mirror() {
  Mat3 m = Mat3::identity();
  m(0, 0) = -1.0;
  return m;
}

}  // namespace

VerificationReport verify_sample(const GraphSample& s, std::size_t sample_index) {
  VerificationReport report;
  report.sample_index = sample_index;

  const std::size_t expected_nodes = s.distance >= 1 ? node_count(s.sample_type, s.distance) : 0;
  const bool counts_ok = s.distance >= 1 && s.species.size() == expected_nodes &&
                         s.positions.size() == expected_nodes &&
                         s.labels.size() == expected_nodes;
  report.add(str(checks::kNodeCount), counts_ok,
             counts_ok ? "" : "expected " + std::to_string(expected_nodes) + " nodes, found " +
                                  std::to_string(s.species.size()) + " species / " +
                                  std::to_string(s.positions.size()) + " positions / " +
                                  std::to_string(s.labels.size()) + " labels");

  // Checks below address nodes by canonical index; they need arrays at least
  // as long as the canonical layout.
  const bool addressable = s.distance >= 1 && s.species.size() >= expected_nodes &&
                           s.positions.size() >= expected_nodes &&
                           s.labels.size() >= expected_nodes;
  const std::string not_addressable = "skipped: node arrays shorter than canonical layout";

  const std::size_t expected_directed =
      s.distance >= 1 ? 2 * undirected_edge_count(s.sample_type, s.distance) : 0;
  report.add(str(checks::kEdgeCount), s.edges.size() == expected_directed,
             s.edges.size() == expected_directed
                 ? ""
                 : "expected " + std::to_string(expected_directed) + " directed edges, found " +
                       std::to_string(s.edges.size()));

  {
    std::string problem;
    std::set<Edge> seen;
    for (const auto& [u, v] : s.edges) {
      if (u >= s.species.size() || v >= s.species.size()) {
        problem = "edge endpoint out of range";
      } else if (u == v) {
        problem = "self-loop at node " + std::to_string(u);
      } else if (!seen.insert({u, v}).second) {
        problem = "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
      }
      if (!problem.empty()) break;
    }
    if (problem.empty()) {
      for (const auto& [u, v] : s.edges) {
        if (!seen.contains({v, u})) {
          problem = "edge (" + std::to_string(u) + "," + std::to_string(v) + ") lacks reverse";
          break;
        }
      }
    }
    report.add(str(checks::kEdgeSymmetry), problem.empty(), problem);
  }

  {
    std::size_t tagged = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
      if (s.labels[i] != ChiralityTag::NA) {
        ++tagged;
        where = i;
      }
    }
    const bool ok = tagged == 1 && where == kChiralCenter && s.chiral_center == kChiralCenter;
    report.add(str(checks::kSingleCenter), ok,
               ok ? "" : std::to_string(tagged) + " R/S labels; chiral_center = " +
                             std::to_string(s.chiral_center));
  }

  if (!addressable) {
    for (auto name : {checks::kCenterDegree, checks::kDistinctFinalSpecies,
                      checks::kHomogeneousIntermediate, checks::kStpNonzero,
                      checks::kLabelMatches, checks::kStpAudit, checks::kRingNoncollinear}) {
      report.add(str(name), false, not_addressable);
    }
    return report;
  }

  const std::size_t k = nodes_per_layer(s.sample_type);
  {
    const auto adj = adjacency(s);
    const std::size_t degree = adj.empty() ? 0 : adj[kChiralCenter].size();
    report.add(str(checks::kCenterDegree), degree == k,
               degree == k ? ""
                           : "center degree " + std::to_string(degree) + ", expected " +
                                 std::to_string(k));
  }

  {
    std::set<std::uint32_t> final_species;
    for (std::size_t slot = 0; slot < k; ++slot) {
      final_species.insert(s.species[node_at(s.sample_type, s.distance, slot)]);
    }
    const bool ok = final_species.size() == k;
    report.add(str(checks::kDistinctFinalSpecies), ok,
               ok ? "" : "final layer has repeated species");
  }

  {
    std::string problem;
    for (std::size_t layer = 1; layer < s.distance && problem.empty(); ++layer) {
      const auto first = s.species[node_at(s.sample_type, layer, 0)];
      for (std::size_t slot = 1; slot < k; ++slot) {
        if (s.species[node_at(s.sample_type, layer, slot)] != first) {
          problem = "layer " + std::to_string(layer) + " is not homogeneous";
          break;
        }
      }
    }
    report.add(str(checks::kHomogeneousIntermediate), problem.empty(), problem);
  }

  const Recomputed rec = recompute(s);
  {
    const bool ok = std::abs(rec.stp) > kStpTolerance;
    std::ostringstream detail;
    if (!ok) detail << "|STP| = " << std::abs(rec.stp) << (rec.error.empty() ? "" : "; ") << rec.error;
    report.add(str(checks::kStpNonzero), ok, detail.str());
  }
  {
    const bool ok = rec.ok && s.center_label() == rec.tag;
    std::string detail;
    if (!rec.ok) {
      detail = "label not recomputable: " + rec.error;
    } else if (!ok) {
      detail = "stored " + str(to_string(s.center_label())) + ", recomputed " +
               str(to_string(rec.tag));
    }
    report.add(str(checks::kLabelMatches), ok, detail);
  }
  {
    const bool ok = rec.has_stp && close_relative(s.stp_value, rec.stp, kStpRelativeTolerance);
    std::ostringstream detail;
    if (!ok) {
      detail.precision(17);
      detail << "stored " << s.stp_value << ", recomputed " << rec.stp;
    }
    report.add(str(checks::kStpAudit), ok, detail.str());
  }
  {
    // The ring points lie on their circumcircle; each chord gives the central
    // angle between two of them, independent of the sample's rotation.
    const auto ring = stp_ring(s);
    const Vec3& a = s.positions[ring[0]];
    const Vec3& b = s.positions[ring[1]];
    const Vec3& c = s.positions[ring[2]];
    const double area = 0.5 * norm(cross(b - a, c - a));
    std::ostringstream detail;
    bool ok = area > kMinRingArea;
    if (!ok) {
      detail << "ring triangle area " << area;
    } else {
      const std::array<double, 3> chords{norm(b - a), norm(c - b), norm(a - c)};
      const double radius = chords[0] * chords[1] * chords[2] / (4.0 * area);
      double min_gap = 2.0 * std::numbers::pi;
      for (double chord : chords) {
        min_gap = std::min(min_gap, 2.0 * std::asin(std::min(1.0, chord / (2.0 * radius))));
      }
      ok = min_gap > kMinRingAngularGap;
      if (!ok) detail << "smallest angular gap " << min_gap << " rad";
    }
    report.add(str(checks::kRingNoncollinear), ok, detail.str());
  }
  return report;
}

VerificationReport metamorphic_suite(const GraphSample& s, SampleRng& rng,
                                     std::size_t n_transforms, std::size_t sample_index) {
  VerificationReport report;
  report.sample_index = sample_index;

  GraphSample base;
  try {
    base = label_sample(s);
  } catch (const Error& e) {
    for (auto name : {checks::kRigidMotion, checks::kReflection, checks::kMirrorX,
                      checks::kDoubleReflection}) {
      report.add(str(name), false, std::string("base sample not labelable: ") + e.what());
    }
    return report;
  }
  const ChiralityTag tag = base.center_label();
  const double stp = base.stp_value;

  auto relabel = [](const GraphSample& g, ChiralityTag& out_tag, double& out_stp) {
    try {
      const auto l = label_sample(g);
      out_tag = l.center_label();
      out_stp = l.stp_value;
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  auto random_shift = [&rng] {
    return Vec3{uniform_real(rng, -10.0, 10.0), uniform_real(rng, -10.0, 10.0),
                uniform_real(rng, -10.0, 10.0)};
  };

  std::size_t rigid_failures = 0;
  std::size_t reflect_failures = 0;
  for (std::size_t i = 0; i < n_transforms; ++i) {
    const Mat3 rot = random_rotation(rng);
    const Vec3 shift = random_shift();
    ChiralityTag t;
    double v;
    if (!relabel(transformed(base, rot, shift), t, v) || t != tag ||
        !close_relative(v, stp, kStpRelativeTolerance)) {
      ++rigid_failures;
    }
  }
  for (std::size_t i = 0; i < n_transforms; ++i) {
    const Mat3 improper = random_rotation(rng) * x_mirror();
    const Vec3 shift = random_shift();
    ChiralityTag t;
    double v;
    if (!relabel(transformed(base, improper, shift), t, v) || t != mirrored(tag) ||
        !close_relative(v, -stp, kStpRelativeTolerance)) {
      ++reflect_failures;
    }
  }
  auto tally = [n_transforms](std::size_t failures) {
    return std::to_string(n_transforms - failures) + "/" + std::to_string(n_transforms) +
           " passed";
  };
  report.add(str(checks::kRigidMotion), rigid_failures == 0, tally(rigid_failures));
  report.add(str(checks::kReflection), reflect_failures == 0, tally(reflect_failures));

  {
    ChiralityTag t;
    double v;
    const bool ok = relabel(transformed(base, x_mirror(), {}), t, v) && t == mirrored(tag) &&
                    close_relative(v, -stp, kStpRelativeTolerance);
    report.add(str(checks::kMirrorX), ok);
  }
  {
    const Mat3 first = random_rotation(rng) * x_mirror();
    const Mat3 second = x_mirror() * random_rotation(rng);
    ChiralityTag t;
    double v;
    const bool ok = relabel(transformed(base, second * first, random_shift()), t, v) &&
                    t == tag && close_relative(v, stp, kStpRelativeTolerance);
    report.add(str(checks::kDoubleReflection), ok);
  }
  return report;
}

DatasetReport verify_dataset(const std::vector<GraphSample>& samples,
                             const GenerationConfig& config,
                             std::size_t metamorphic_transforms) {
  DatasetReport out;
  out.total = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    VerificationReport r = verify_sample(s, i);
    const bool matches_config = s.sample_type == config.sample_type &&
                                s.distance == config.distance;
    r.add("config-match", matches_config,
          matches_config ? "" : "sample type/distance differ from dataset config");
    if (metamorphic_transforms > 0 && r.overall) {
      SampleRng rng(derive_sample_seed(s.sample_seed, 1));
      for (auto& c : metamorphic_suite(s, rng, metamorphic_transforms, i).checks) {
        r.add(std::move(c.name), c.passed, std::move(c.detail));
      }
    }
    if (r.overall) {
      ++out.passed;
    } else {
      out.failures.push_back(std::move(r));
    }
  }

  out.counts = count_classes(samples);
  const std::uint64_t per_center = nodes_per_layer(config.sample_type) * config.distance;
  const std::uint64_t centers = out.counts.r + out.counts.s;
  out.imbalance_identity = out.counts.na == per_center * centers;
  out.imbalance_detail = "n_NA = " + std::to_string(out.counts.na) + ", " +
                         std::to_string(per_center) + " x (n_R + n_S) = " +
                         std::to_string(per_center * centers);

  if (centers > 0) {
    const double n = static_cast<double>(centers);
    const double band = 3.0 * std::sqrt(n / 4.0);
    if (std::abs(static_cast<double>(out.counts.r) - n / 2.0) > band) {
      out.balance_warning = true;
      out.warnings.push_back("R:S balance " + std::to_string(out.counts.r) + ":" +
                             std::to_string(out.counts.s) + " lies outside N/2 +/- 3 sigma");
    }
  }
  out.overall = out.failures.empty() && out.imbalance_identity;
  return out;
}

namespace {

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["sample_index"] = r.sample_index;
  j["overall"] = r.overall;
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return j;
}

}  // namespace

std::string to_json(const VerificationReport& report) { return report_json(report).dump(); }

std::string to_json(const DatasetReport& r) {
  nlohmann::ordered_json j;
  j["overall"] = r.overall;
  j["total"] = r.total;
  j["passed"] = r.passed;
  j["failed"] = r.total - r.passed;
  j["class_counts"] = {{"NA", r.counts.na}, {"R", r.counts.r}, {"S", r.counts.s}};
  j["imbalance_identity"] = r.imbalance_identity;
  j["imbalance_detail"] = r.imbalance_detail;
  j["balance_warning"] = r.balance_warning;
  j["warnings"] = r.warnings;
  auto& arr = j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) arr.push_back(report_json(f));
  return j.dump(2);
}

std::string to_text(const DatasetReport& r) {
  std::ostringstream os;
  os << "samples verified: " << r.total << "\n";
  os << "passed: " << r.passed << "\n";
  os << "failed: " << (r.total - r.passed) << "\n";
  for (const auto& f : r.failures) {
    os << "  sample " << f.sample_index << ":";
    for (const auto& c : f.checks) {
      if (!c.passed) os << " " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")");
    }
    os << "\n";
  }
  os << "class counts: NA=" << r.counts.na << " R=" << r.counts.r << " S=" << r.counts.s << "\n";
  os << "imbalance identity: " << (r.imbalance_identity ? "holds" : "VIOLATED") << " ("
     << r.imbalance_detail << ")\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  os << "overall: " << (r.overall ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace chigraph
