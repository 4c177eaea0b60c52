#include "chigraph/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "chigraph/errors.hpp"
#include "chigraph/generator.hpp"

namespace chigraph {

using json = nlohmann::json;

std::vector<GraphSample> generate_samples(const GenerationConfig& config, unsigned threads) {
  validate(config);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t count = config.count;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));

  std::vector<GraphSample> samples(count);
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      samples[i] = generate_sample(config, derive_sample_seed(config.master_seed, i));
    }
    return samples;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < count && !failed; i = next++) {
        try {
          samples[i] = generate_sample(config, derive_sample_seed(config.master_seed, i));
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return samples;
}

void validate_ratios(const SplitRatios& ratios) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidArgumentError("split ratios must be positive and finite");
    }
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgumentError("split ratios must sum to 1 (got " + format_real(sum) + ")");
  }
}

std::array<std::uint64_t, 3> split_sizes(std::uint64_t count, const SplitRatios& ratios) {
  validate_ratios(ratios);
  auto portion = [count](double r) {
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(count) * r + 1e-9));
  };
  const std::uint64_t val = std::min(portion(ratios[1]), count);
  const std::uint64_t test = std::min(portion(ratios[2]), count - val);
  return {count - val - test, val, test};
}

namespace {

SplitIndices cut(const std::vector<std::uint64_t>& order,
                 const std::array<std::uint64_t, 3>& sizes, bool sort_each) {
  SplitIndices out;
  auto first = order.begin();
  out.train.assign(first, first + static_cast<std::ptrdiff_t>(sizes[0]));
  first += static_cast<std::ptrdiff_t>(sizes[0]);
  out.val.assign(first, first + static_cast<std::ptrdiff_t>(sizes[1]));
  first += static_cast<std::ptrdiff_t>(sizes[1]);
  out.test.assign(first, first + static_cast<std::ptrdiff_t>(sizes[2]));
  if (sort_each) {
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.val.begin(), out.val.end());
    std::sort(out.test.begin(), out.test.end());
  }
  return out;
}

}  // namespace

SplitIndices split_dataset(std::uint64_t count, const SplitRatios& ratios, SampleRng& rng) {
  const auto sizes = split_sizes(count, ratios);
  std::vector<std::uint64_t> order(count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  for (std::uint64_t i = count; i > 1; --i) {
    std::swap(order[i - 1], order[rng.next_below(i)]);
  }
  return cut(order, sizes, true);
}

SplitIndices split_sequential(std::uint64_t count, const SplitRatios& ratios) {
  const auto sizes = split_sizes(count, ratios);
  std::vector<std::uint64_t> order(count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  return cut(order, sizes, false);
}

std::array<double, 3> class_weights(double b, std::uint32_t distance) {
  if (distance < 1) throw InvalidArgumentError("distance must be >= 1");
  const double w = b + 3.0 * static_cast<double>(distance);
  return {1.0, w, w};
}

void resplit(DatasetManifest& m) {
  const std::uint64_t count = m.config.count;
  if (m.sequential_split) {
    m.split_indices = split_sequential(count, m.split_ratios);
  } else {
    SampleRng rng(m.split_seed);
    m.split_indices = split_dataset(count, m.split_ratios, rng);
  }
}

DatasetManifest build_manifest(const GenerationConfig& config,
                               const std::vector<GraphSample>& samples,
                               const DatasetOptions& options) {
  DatasetManifest m;
  m.config = config;
  m.config.count = samples.size();
  m.split_ratios = options.split_ratios;
  m.sequential_split = options.sequential_split;
  m.split_seed = derive_sample_seed(config.master_seed, kSplitStreamIndex);
  m.class_counts = count_classes(samples);
  m.weight_constant = options.weight_constant;
  m.class_weights = class_weights(options.weight_constant, config.distance);
  resplit(m);
  return m;
}

Dataset generate_dataset(const GenerationConfig& config, const DatasetOptions& options) {
  validate_ratios(options.split_ratios);
  Dataset d;
  d.samples = generate_samples(config, options.threads);
  d.manifest = build_manifest(config, d.samples, options);
  return d;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::filesystem::path manifest_path_for(const std::filesystem::path& samples_path) {
  std::filesystem::path p = samples_path;
  if (p.extension() == ".jsonl") p.replace_extension();
  p += ".manifest.json";
  return p;
}

std::string format_real(double value) {
  if (!std::isfinite(value)) throw InvalidArgumentError("cannot serialize non-finite real");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void append_real(std::string& out, double v) { out += format_real(v); }

template <typename Range, typename Fn>
void append_array(std::string& out, const Range& range, Fn&& each) {
  out += '[';
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += ',';
    first = false;
    each(item);
  }
  out += ']';
}

void append_uint_array(std::string& out, const std::vector<std::uint64_t>& v) {
  append_array(out, v, [&](std::uint64_t x) { out += std::to_string(x); });
}

}  // namespace

std::string serialize_sample(const GraphSample& s) {
  std::string out;
  out.reserve(64 + s.positions.size() * 72 + s.edges.size() * 8);
  out += "{\"sample_type\":\"";
  out += to_string(s.sample_type);
  out += "\",\"distance\":" + std::to_string(s.distance);
  out += ",\"sample_seed\":" + std::to_string(s.sample_seed);
  out += ",\"species\":";
  append_array(out, s.species, [&](std::uint32_t x) { out += std::to_string(x); });
  out += ",\"positions\":";
  append_array(out, s.positions, [&](const Vec3& p) {
    out += '[';
    append_real(out, p.x);
    out += ',';
    append_real(out, p.y);
    out += ',';
    append_real(out, p.z);
    out += ']';
  });
  out += ",\"edges\":";
  append_array(out, s.edges, [&](const Edge& e) {
    out += '[' + std::to_string(e.first) + ',' + std::to_string(e.second) + ']';
  });
  out += ",\"chiral_center\":" + std::to_string(s.chiral_center);
  out += ",\"labels\":";
  append_array(out, s.labels, [&](ChiralityTag t) {
    out += '"';
    out += to_string(t);
    out += '"';
  });
  out += ",\"stp_value\":";
  append_real(out, s.stp_value);
  out += '}';
  return out;
}

std::string serialize_samples(const std::vector<GraphSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += serialize_sample(s);
    out += '\n';
  }
  return out;
}

std::string serialize_manifest(const DatasetManifest& m) {
  std::string out = "{\n";
  auto quoted = [](const std::string& s) { return json(s).dump(); };
  out += "  \"format_version\": " + quoted(m.format_version) + ",\n";
  out += "  \"generator_version\": " + quoted(m.generator_version) + ",\n";
  out += "  \"samples_file\": " + quoted(m.samples_file) + ",\n";
  out += "  \"config\": {\"sample_type\": \"" + std::string(to_string(m.config.sample_type)) +
         "\", \"distance\": " + std::to_string(m.config.distance) +
         ", \"species_range\": " + std::to_string(m.config.species_range) +
         ", \"noise\": " + (m.config.noise ? "true" : "false") +
         ", \"count\": " + std::to_string(m.config.count) +
         ", \"master_seed\": " + std::to_string(m.config.master_seed) + "},\n";
  out += "  \"split\": {\"ratios\": [" + format_real(m.split_ratios[0]) + ", " +
         format_real(m.split_ratios[1]) + ", " + format_real(m.split_ratios[2]) +
         "], \"mode\": \"" + (m.sequential_split ? "sequential" : "random") +
         "\", \"seed\": " + std::to_string(m.split_seed) + "},\n";
  out += "  \"split_indices\": {\n    \"train\": ";
  append_uint_array(out, m.split_indices.train);
  out += ",\n    \"val\": ";
  append_uint_array(out, m.split_indices.val);
  out += ",\n    \"test\": ";
  append_uint_array(out, m.split_indices.test);
  out += "\n  },\n";
  out += "  \"class_counts\": {\"NA\": " + std::to_string(m.class_counts.na) +
         ", \"R\": " + std::to_string(m.class_counts.r) +
         ", \"S\": " + std::to_string(m.class_counts.s) + "},\n";
  out += "  \"class_weights\": [" + format_real(m.class_weights[0]) + ", " +
         format_real(m.class_weights[1]) + ", " + format_real(m.class_weights[2]) + "],\n";
  out += "  \"weight_constant\": " + format_real(m.weight_constant) + "\n";
  out += "}\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  write_file(path, serialize_manifest(manifest));
}

void serialize_dataset(const std::vector<GraphSample>& samples, const DatasetManifest& manifest,
                       const std::filesystem::path& samples_path) {
  DatasetManifest m = manifest;
  m.samples_file = samples_path.filename().string();
  write_file(samples_path, serialize_samples(samples));
  write_manifest(m, manifest_path_for(samples_path));
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

const std::set<std::string> kSampleKeys{"sample_type", "distance",      "sample_seed",
                                        "species",     "positions",     "edges",
                                        "chiral_center", "labels",      "stp_value"};

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw MalformedRecordError(line, what);
}

const json& field(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(line, std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t as_uint(const json& v, const std::string& what, std::size_t line) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  malformed(line, what + " must be a non-negative integer");
}

std::uint32_t as_uint32(const json& v, const std::string& what, std::size_t line) {
  const auto x = as_uint(v, what, line);
  if (x > std::numeric_limits<std::uint32_t>::max()) malformed(line, what + " is out of range");
  return static_cast<std::uint32_t>(x);
}

double as_real(const json& v, const std::string& what, std::size_t line) {
  if (!v.is_number()) malformed(line, what + " must be a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& what, std::size_t line) {
  if (!v.is_array()) malformed(line, what + " must be an array");
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  if (is.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

}  // namespace

GraphSample parse_sample(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) malformed(line, "record must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kSampleKeys.contains(key)) malformed(line, "unknown field \"" + key + "\"");
  }

  GraphSample s;
  const auto& type = field(j, "sample_type", line);
  if (!type.is_string()) malformed(line, "sample_type must be a string");
  const auto parsed_type = parse_sample_type(type.get<std::string>());
  if (!parsed_type) {
    malformed(line, "invalid enumeration value \"" + type.get<std::string>() +
                        "\" for sample_type (expected simple, crossed or classic)");
  }
  s.sample_type = *parsed_type;
  s.distance = as_uint32(field(j, "distance", line), "distance", line);
  s.sample_seed = as_uint(field(j, "sample_seed", line), "sample_seed", line);
  s.chiral_center = as_uint32(field(j, "chiral_center", line), "chiral_center", line);
  s.stp_value = as_real(field(j, "stp_value", line), "stp_value", line);

  for (const auto& v : as_array(field(j, "species", line), "species", line)) {
    s.species.push_back(as_uint32(v, "species entry", line));
  }
  for (const auto& p : as_array(field(j, "positions", line), "positions", line)) {
    if (!p.is_array() || p.size() != 3) malformed(line, "positions entries must be [x, y, z]");
    s.positions.push_back({as_real(p[0], "position", line), as_real(p[1], "position", line),
                           as_real(p[2], "position", line)});
  }
  for (const auto& e : as_array(field(j, "edges", line), "edges", line)) {
    if (!e.is_array() || e.size() != 2) malformed(line, "edges entries must be [u, v]");
    s.edges.emplace_back(as_uint32(e[0], "edge endpoint", line),
                         as_uint32(e[1], "edge endpoint", line));
  }
  std::size_t i = 0;
  for (const auto& t : as_array(field(j, "labels", line), "labels", line)) {
    if (!t.is_string()) malformed(line, "labels entries must be strings");
    const auto tag = parse_chirality_tag(t.get<std::string>());
    if (!tag) {
      malformed(line, "labels[" + std::to_string(i) + "]: invalid enumeration value \"" +
                          t.get<std::string>() + "\" (expected NA, R or S)");
    }
    s.labels.push_back(*tag);
    ++i;
  }
  return s;
}

std::vector<GraphSample> parse_samples(const std::filesystem::path& path,
                                       const ParseOptions& options) {
  const std::string content = read_file(path);
  std::vector<GraphSample> samples;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t end = content.find('\n', pos);
    const std::size_t stop = end == std::string::npos ? content.size() : end;
    std::string line = content.substr(pos, stop - pos);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) malformed(line_number, "empty record");
    GraphSample s = parse_sample(line, line_number);
    if (options.validate_invariants) {
      if (auto problem = find_invariant_violation(s)) {
        throw InvariantViolationError(samples.size(), *problem);
      }
    }
    samples.push_back(std::move(s));
    pos = end == std::string::npos ? content.size() : end + 1;
  }
  return samples;
}

DatasetManifest parse_manifest(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    malformed(1, path.string() + ": invalid JSON: " + e.what());
  }
  const std::size_t line = 1;
  try {
    DatasetManifest m;
    m.format_version = field(j, "format_version", line).get<std::string>();
    if (m.format_version != kFormatVersion) {
      malformed(line, "unsupported format_version \"" + m.format_version + "\"");
    }
    m.generator_version = field(j, "generator_version", line).get<std::string>();
    m.samples_file = field(j, "samples_file", line).get<std::string>();

    const auto& c = field(j, "config", line);
    const auto type = parse_sample_type(field(c, "sample_type", line).get<std::string>());
    if (!type) malformed(line, "invalid config.sample_type");
    m.config.sample_type = *type;
    m.config.distance = as_uint32(field(c, "distance", line), "config.distance", line);
    m.config.species_range =
        as_uint32(field(c, "species_range", line), "config.species_range", line);
    m.config.noise = field(c, "noise", line).get<bool>();
    m.config.count = as_uint(field(c, "count", line), "config.count", line);
    m.config.master_seed = as_uint(field(c, "master_seed", line), "config.master_seed", line);

    const auto& split = field(j, "split", line);
    const auto& ratios = as_array(field(split, "ratios", line), "split.ratios", line);
    if (ratios.size() != 3) malformed(line, "split.ratios must have three entries");
    for (std::size_t i = 0; i < 3; ++i) m.split_ratios[i] = as_real(ratios[i], "ratio", line);
    const auto mode = field(split, "mode", line).get<std::string>();
    if (mode != "random" && mode != "sequential") malformed(line, "invalid split.mode");
    m.sequential_split = mode == "sequential";
    m.split_seed = as_uint(field(split, "seed", line), "split.seed", line);

    const auto& idx = field(j, "split_indices", line);
    auto read_list = [&](const char* key, std::vector<std::uint64_t>& out) {
      for (const auto& v : as_array(field(idx, key, line), key, line)) {
        out.push_back(as_uint(v, key, line));
      }
    };
    read_list("train", m.split_indices.train);
    read_list("val", m.split_indices.val);
    read_list("test", m.split_indices.test);

    const auto& counts = field(j, "class_counts", line);
    m.class_counts.na = as_uint(field(counts, "NA", line), "class_counts.NA", line);
    m.class_counts.r = as_uint(field(counts, "R", line), "class_counts.R", line);
    m.class_counts.s = as_uint(field(counts, "S", line), "class_counts.S", line);

    const auto& weights = as_array(field(j, "class_weights", line), "class_weights", line);
    if (weights.size() != 3) malformed(line, "class_weights must have three entries");
    for (std::size_t i = 0; i < 3; ++i) m.class_weights[i] = as_real(weights[i], "weight", line);
    m.weight_constant = as_real(field(j, "weight_constant", line), "weight_constant", line);
    return m;
  } catch (const json::exception& e) {
    malformed(line, path.string() + ": " + e.what());
  }
}

Dataset parse_dataset(const std::filesystem::path& samples_path, const ParseOptions& options) {
  Dataset d;
  d.samples = parse_samples(samples_path, options);
  d.manifest = parse_manifest(manifest_path_for(samples_path));
  if (d.samples.size() != d.manifest.config.count) {
    throw Error(ErrorKind::InvariantViolation,
                "sample file has " + std::to_string(d.samples.size()) +
                    " records but the manifest declares " +
                    std::to_string(d.manifest.config.count));
  }
  if (options.validate_invariants && count_classes(d.samples) != d.manifest.class_counts) {
    throw Error(ErrorKind::InvariantViolation,
                "class counts in the sample file disagree with the manifest");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

std::string DatasetStats::ratio_text() const {
  const std::uint64_t g = std::gcd(counts.r, counts.s);
  if (g == 0) return "0:0";
  return std::to_string(counts.r / g) + ":" + std::to_string(counts.s / g);
}

DatasetStats dataset_stats(const std::vector<GraphSample>& samples, double weight_constant) {
  DatasetStats st;
  st.samples = samples.size();
  st.counts = count_classes(samples);
  st.weight_constant = weight_constant;
  std::uint32_t distance = 1;
  bool first = true;
  for (const auto& s : samples) {
    st.nodes += s.species.size();
    st.directed_edges += s.edges.size();
    distance = std::max(distance, s.distance);
    const double a = std::abs(s.stp_value);
    st.min_abs_stp = first ? a : std::min(st.min_abs_stp, a);
    st.max_abs_stp = first ? a : std::max(st.max_abs_stp, a);
    first = false;
  }
  st.undirected_edges = st.directed_edges / 2;
  st.weights = class_weights(weight_constant, distance);
  return st;
}

namespace {

std::string short_real(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

}  // namespace

std::string to_text(const DatasetStats& st) {
  std::ostringstream os;
  os << "samples: " << st.samples << "\n"
     << "nodes: " << st.nodes << "\n"
     << "edges: " << st.undirected_edges << " undirected (" << st.directed_edges
     << " directed)\n"
     << "n_NA: " << st.counts.na << "\n"
     << "n_R: " << st.counts.r << "\n"
     << "n_S: " << st.counts.s << "\n"
     << "R:S: " << st.ratio_text() << "\n"
     << "class weights (b=" << short_real(st.weight_constant) << "): "
     << format_real(st.weights[0]) << " " << format_real(st.weights[1]) << " "
     << format_real(st.weights[2]) << "\n"
     << "|STP| min: " << short_real(st.min_abs_stp) << "\n"
     << "|STP| max: " << short_real(st.max_abs_stp) << "\n";
  return os.str();
}

std::string to_json(const DatasetStats& st) {
  nlohmann::ordered_json j;
  j["samples"] = st.samples;
  j["nodes"] = st.nodes;
  j["undirected_edges"] = st.undirected_edges;
  j["directed_edges"] = st.directed_edges;
  j["class_counts"] = {{"NA", st.counts.na}, {"R", st.counts.r}, {"S", st.counts.s}};
  j["r_to_s"] = st.ratio_text();
  j["weight_constant"] = st.weight_constant;
  j["class_weights"] = st.weights;
  j["min_abs_stp"] = st.min_abs_stp;
  j["max_abs_stp"] = st.max_abs_stp;
  return j.dump(2);
}

}  // namespace chigraph
