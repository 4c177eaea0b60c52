#include "chigraph/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "chigraph/dataset.hpp"
#include "chigraph/errors.hpp"
#include "chigraph/oversquash.hpp"
#include "chigraph/verifier.hpp"

namespace chigraph::cli {
namespace {

// Shortest round-trip text, always with a decimal point ("13.0").
std::string human_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

SplitRatios to_ratios(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) {
    throw InvalidArgumentError(std::string(flag) + " expects three comma-separated values");
  }
  SplitRatios r{v[0], v[1], v[2]};
  validate_ratios(r);
  return r;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return kExitIo;
    case ErrorKind::InvalidArgument:
    case ErrorKind::InfeasibleSampling:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << "chigraph: error[" << kind << "]: " << message << "\n";
}

struct GenerateArgs {
  std::string type = "simple";
  std::uint32_t distance = 1;
  std::uint32_t species_range = 15;
  std::string noise = "true";
  std::uint64_t count = 25000;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<double> split{0.8, 0.1, 0.1};
  double weight_b = kDefaultWeightConstant;
  unsigned threads = 0;
};

struct VerifyArgs {
  std::string in;
  std::size_t metamorphic = 0;
  std::string report;
};

struct StatsArgs {
  std::string in;
  std::optional<double> weight_b;
  bool json = false;
};

struct SplitArgs {
  std::string in;
  std::vector<double> ratios;
  std::optional<std::uint64_t> seed;
  bool sequential = false;
};

struct WeightsArgs {
  double b = 0.0;
  std::uint32_t distance = 1;
};

struct OversquashArgs {
  std::string in;
  std::string gradients;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GenerationConfig config;
  config.sample_type = *parse_sample_type(a.type);
  config.distance = a.distance;
  config.species_range = a.species_range;
  config.noise = a.noise == "true";
  config.count = a.count;
  config.master_seed = a.seed;
  validate(config);

  DatasetOptions options;
  options.split_ratios = to_ratios(a.split, "--split");
  options.weight_constant = a.weight_b;
  options.threads = a.threads;

  const Dataset d = generate_dataset(config, options);
  serialize_dataset(d.samples, d.manifest, a.out);
  out << "wrote " << d.samples.size() << " samples to " << a.out << "\n";
  out << "manifest: " << manifest_path_for(a.out).string() << "\n";
  out << "split: " << d.manifest.split_indices.train.size() << "/"
      << d.manifest.split_indices.val.size() << "/" << d.manifest.split_indices.test.size()
      << "\n";
  out << to_text(dataset_stats(d.samples, a.weight_b));
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  ParseOptions parse;
  parse.validate_invariants = false;
  const Dataset d = parse_dataset(a.in, parse);
  const DatasetReport report = verify_dataset(d.samples, d.manifest.config, a.metamorphic);
  out << to_text(report);
  if (!a.report.empty()) {
    std::ofstream os(a.report, std::ios::trunc);
    if (!os) throw IoError("cannot open " + a.report + " for writing");
    os << to_json(report) << "\n";
  }
  if (report.overall) return kExitOk;
  for (const auto& f : report.failures) {
    std::string names;
    for (const auto& n : f.failed_checks()) names += (names.empty() ? "" : ",") + n;
    report_error(err, "validation", "sample " + std::to_string(f.sample_index) +
                                        " failed: " + names);
  }
  if (!report.imbalance_identity) {
    report_error(err, "validation", "class imbalance identity violated: " +
                                        report.imbalance_detail);
  }
  return kExitValidation;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  const Dataset d = parse_dataset(a.in);
  const double b = a.weight_b.value_or(d.manifest.weight_constant);
  const auto st = dataset_stats(d.samples, b);
  out << (a.json ? to_json(st) + "\n" : to_text(st));
  return kExitOk;
}

int cmd_split(const SplitArgs& a, std::ostream& out) {
  const SplitRatios ratios = to_ratios(a.ratios, "--ratios");
  const auto manifest_path = manifest_path_for(a.in);
  DatasetManifest m = parse_manifest(manifest_path);
  m.split_ratios = ratios;
  m.sequential_split = a.sequential;
  m.split_seed = derive_sample_seed(a.seed.value_or(m.config.master_seed), kSplitStreamIndex);
  resplit(m);
  write_manifest(m, manifest_path);
  out << "split: " << m.split_indices.train.size() << "/" << m.split_indices.val.size() << "/"
      << m.split_indices.test.size() << " (" << (a.sequential ? "sequential" : "random")
      << ")\n";
  return kExitOk;
}

int cmd_weights(const WeightsArgs& a, std::ostream& out) {
  const auto w = class_weights(a.b, a.distance);
  out << human_real(w[0]) << " " << human_real(w[1]) << " " << human_real(w[2]) << "\n";
  return kExitOk;
}

int cmd_oversquash(const OversquashArgs& a, std::ostream& out) {
  const Dataset d = parse_dataset(a.in);
  const auto norms = load_gradient_norms(a.gradients, d.samples.size());
  const auto profile = aggregate_gradient_profile(d.samples, norms, d.manifest.config.distance);
  write_profile_csv(profile, a.out);
  out << profile_csv(profile);
  for (auto bucket : profile.empty_buckets) {
    out << "note: no nodes at hop distance " << bucket << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic chiral graph dataset generator and verifier", "chigraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kGeneratorVersion));

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a dataset and its manifest");
  generate->add_option("--type", gen.type, "Chirality type")
      ->check(CLI::IsMember({"simple", "crossed", "classic"}))
      ->capture_default_str();
  generate->add_option("--distance", gen.distance, "Chirality distance D (number of layers)")
      ->check(CLI::Range(1u, 1000u))
      ->capture_default_str();
  generate->add_option("--species-range", gen.species_range, "Upper bound of species sampling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--noise", gen.noise, "Randomize positions")
      ->check(CLI::IsMember({"true", "false"}))
      ->capture_default_str();
  generate->add_option("--count", gen.count, "Number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output sample file (.jsonl)")->required();
  generate->add_option("--split", gen.split, "Train/val/test ratios")
      ->delimiter(',')
      ->expected(1, 3)
      ->capture_default_str();
  generate->add_option("--weight-b", gen.weight_b, "Class-weight constant b")
      ->capture_default_str();
  generate->add_option("--threads", gen.threads, "Worker threads (0 = all cores)")
      ->envname("CHIGRAPH_THREADS")
      ->capture_default_str();

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Verify every sample of a dataset");
  verify->add_option("--in", ver.in, "Sample file (.jsonl)")->required();
  verify->add_option("--metamorphic", ver.metamorphic,
                     "Random rigid motions and reflections per sample")
      ->capture_default_str();
  verify->add_option("--report", ver.report, "Write a JSON report to this path");

  StatsArgs sta;
  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  stats->add_option("--in", sta.in, "Sample file (.jsonl)")->required();
  stats->add_option("--weight-b", sta.weight_b, "Class-weight constant b (default: manifest)");
  stats->add_flag("--json", sta.json, "Emit JSON");

  SplitArgs spl;
  auto* split = app.add_subcommand("split", "Recompute the manifest's train/val/test split");
  split->add_option("--in", spl.in, "Sample file (.jsonl)")->required();
  split->add_option("--ratios", spl.ratios, "Train/val/test ratios")
      ->delimiter(',')
      ->expected(1, 3)
      ->required();
  split->add_option("--seed", spl.seed, "Split seed (default: the dataset's master seed)");
  split->add_flag("--sequential", spl.sequential, "Contiguous blocks instead of a shuffle");

  WeightsArgs wts;
  auto* weights = app.add_subcommand("weights", "Print class weights");
  weights->add_option("--b", wts.b, "Class-weight constant b")->required();
  weights->add_option("--distance", wts.distance, "Chirality distance D")
      ->check(CLI::PositiveNumber)
      ->required();

  OversquashArgs ovs;
  auto* oversquash =
      app.add_subcommand("oversquash", "Aggregate gradient norms by hop distance");
  oversquash->add_option("--in", ovs.in, "Sample file (.jsonl)")->required();
  oversquash->add_option("--gradients", ovs.gradients, "Gradient-norm file (.jsonl)")
      ->required();
  oversquash->add_option("--out", ovs.out, "Output CSV")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    report_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*verify) return cmd_verify(ver, out, err);
    if (*stats) return cmd_stats(sta, out);
    if (*split) return cmd_split(spl, out);
    if (*weights) return cmd_weights(wts, out);
    if (*oversquash) return cmd_oversquash(ovs, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace chigraph::cli
