//
// Copyright 2026 The TEM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "corpus.h"
#include "nlohmann/json.hpp"
#include "tem/candidate_index.h"
#include "tem/embedding_store.h"
#include "tem/madlib.h"
#include "tem/privacy_params.h"
#include "tem/status_macros.h"
#include "tem/tem.h"
#include "verify_suite.h"

namespace tem::cli {
namespace {

using json = nlohmann::json;

struct Flags {
  std::string embeddings;
  std::vector<std::string> mechanisms;
  double epsilon = 0.0;
  std::vector<double> epsilons;
  double gamma = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  std::string oov = "error";
  bool lowercase = false;
  bool skip_header = false;
  std::string index;
  std::string input;
  std::string output;
  std::string report;
  unsigned threads = 1;
  size_t trials = 20000;
  std::string break_mode;

  // Set when the option came from the command line or the config file.
  bool has_epsilon = false;
  bool has_epsilons = false;
  bool has_gamma = false;
  bool has_beta = false;
  bool has_seed = false;
};

std::string Num(double v) { return absl::StrFormat("%.10g", v); }

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open input file: ", path));
  return std::string(std::istreambuf_iterator<char>(in), {});
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("Cannot open for writing: ", path));
  out << content;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("Failed writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<MetricSpace> LoadSpace(const Flags& flags, std::ostream& err) {
  if (flags.embeddings.empty()) {
    return absl::InvalidArgumentError("--embeddings is required.");
  }
  LoadOptions options;
  options.skip_header = flags.skip_header;
  options.lowercase = flags.lowercase;
  TEM_ASSIGN_OR_RETURN(LoadedEmbeddings loaded, LoadEmbeddingsFile(flags.embeddings, options));
  for (const std::string& w : loaded.warnings) err << "warning: " << w << "\n";
  return MetricSpace::Create(std::move(loaded.vocabulary), std::move(loaded.embeddings));
}

uint64_t ResolveSeed(const Flags& flags) {
  if (flags.has_seed) return flags.seed;
  std::random_device device;
  return (static_cast<uint64_t>(device()) << 32) ^ device();
}

absl::StatusOr<PrivacyParams> ResolveTemParams(const Flags& flags, double epsilon,
                                               size_t vocab_size,
                                               const TruncationIndex* index) {
  if (flags.has_gamma && flags.has_beta) {
    return absl::InvalidArgumentError("Give either --gamma or --beta, not both.");
  }
  PrivacyParams params;
  if (flags.has_gamma) {
    TEM_ASSIGN_OR_RETURN(params, PrivacyParams::Create(epsilon, flags.gamma));
  } else if (flags.has_beta) {
    TEM_ASSIGN_OR_RETURN(params, PrivacyParams::Calibrated(epsilon, flags.beta, vocab_size));
  } else if (index != nullptr) {
    TEM_ASSIGN_OR_RETURN(params, PrivacyParams::Create(epsilon, index->gamma()));
  } else {
    return absl::InvalidArgumentError("The tem mechanism needs --gamma or --beta.");
  }
  if (index != nullptr && index->gamma() != params.gamma) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Index was built for gamma ", Num(index->gamma()), " but the requested gamma is ",
        Num(params.gamma)));
  }
  return params;
}

absl::StatusOr<std::unique_ptr<WordMechanism>> MakeMechanism(
    const std::string& name, const MetricSpace& space, const Flags& flags, double epsilon,
    std::shared_ptr<const TruncationIndex> index, std::optional<double>* gamma_used) {
  if (name == "madlib") {
    TEM_ASSIGN_OR_RETURN(MadlibMechanism m, MadlibMechanism::Create(space, epsilon));
    return std::make_unique<MadlibMechanism>(std::move(m));
  }
  TEM_ASSIGN_OR_RETURN(PrivacyParams params,
                       ResolveTemParams(flags, epsilon, space.size(), index.get()));
  if (index == nullptr) {
    TEM_ASSIGN_OR_RETURN(TruncationIndex built,
                         TruncationIndex::Build(space, params.gamma,
                                                {ScanStrategy::kAuto, flags.threads}));
    index = std::make_shared<const TruncationIndex>(std::move(built));
  }
  *gamma_used = params.gamma;
  TEM_ASSIGN_OR_RETURN(TemMechanism m, TemMechanism::Create(space, params, std::move(index)));
  return std::make_unique<TemMechanism>(std::move(m));
}

absl::StatusOr<int> BuildIndexCommand(const Flags& flags, std::ostream& out, std::ostream& err) {
  const std::string path = !flags.index.empty() ? flags.index : flags.output;
  if (path.empty()) return absl::InvalidArgumentError("build-index needs --index (output path).");
  if (flags.has_gamma && flags.has_beta) {
    return absl::InvalidArgumentError("Give either --gamma or --beta, not both.");
  }
  if (!flags.has_gamma && !flags.has_beta) {
    return absl::InvalidArgumentError("build-index needs --gamma, or --epsilon with --beta.");
  }
  if (flags.has_beta && !flags.has_epsilon) {
    return absl::InvalidArgumentError("Calibrating gamma from --beta also needs --epsilon.");
  }
  TEM_ASSIGN_OR_RETURN(MetricSpace space, LoadSpace(flags, err));
  double gamma = flags.gamma;
  if (flags.has_beta) {
    TEM_ASSIGN_OR_RETURN(gamma, CalibrateGamma(flags.epsilon, flags.beta, space.size()));
  }
  TEM_ASSIGN_OR_RETURN(TruncationIndex index,
                       TruncationIndex::Build(space, gamma, {ScanStrategy::kAuto, flags.threads}));
  TEM_RETURN_IF_ERROR(index.SaveFile(path));

  std::map<size_t, size_t> histogram;
  for (WordId w = 0; w < index.size(); ++w) ++histogram[index.candidates(w).members.size()];
  out << "gamma: " << Num(gamma) << "\n";
  out << "words: " << index.size() << "\n";
  out << "candidates: " << index.total_members() << "\n";
  out << "candidate-list sizes (size: words):\n";
  for (const auto& [size, count] : histogram) out << "  " << size << ": " << count << "\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

absl::StatusOr<int> PrivatizeCommand(const Flags& flags, std::ostream& out, std::ostream& err) {
  if (!flags.has_epsilon) return absl::InvalidArgumentError("privatize needs --epsilon.");
  TEM_RETURN_IF_ERROR(ValidateEpsilon(flags.epsilon));
  if (flags.mechanisms.size() > 1) {
    return absl::InvalidArgumentError("privatize takes a single --mechanism.");
  }
  const std::string mechanism = flags.mechanisms.empty() ? "tem" : flags.mechanisms[0];
  if (flags.input.empty()) return absl::InvalidArgumentError("privatize needs --input.");
  TEM_ASSIGN_OR_RETURN(OovPolicy oov, ParseOovPolicy(flags.oov));
  if (mechanism == "madlib" && (flags.has_gamma || flags.has_beta || !flags.index.empty())) {
    err << "warning: --gamma, --beta, and --index are ignored by madlib\n";
  }

  TEM_ASSIGN_OR_RETURN(MetricSpace space, LoadSpace(flags, err));
  std::shared_ptr<const TruncationIndex> index;
  if (mechanism == "tem" && !flags.index.empty()) {
    TEM_ASSIGN_OR_RETURN(TruncationIndex loaded, TruncationIndex::LoadFile(flags.index, space));
    index = std::make_shared<const TruncationIndex>(std::move(loaded));
  }
  std::optional<double> gamma;
  TEM_ASSIGN_OR_RETURN(std::unique_ptr<WordMechanism> mech,
                       MakeMechanism(mechanism, space, flags, flags.epsilon, index, &gamma));

  TEM_ASSIGN_OR_RETURN(std::string text, ReadFile(flags.input));
  const SplitText split = SplitLines(text);
  const uint64_t seed = ResolveSeed(flags);
  TEM_ASSIGN_OR_RETURN(PrivatizedCorpus corpus,
                       PrivatizeCorpus(split.lines, *mech,
                                       {oov, flags.lowercase, seed, flags.threads}));
  const std::string result = JoinLines(corpus.lines, split.trailing_newline);
  if (flags.output.empty()) {
    out << result;
  } else {
    TEM_RETURN_IF_ERROR(WriteFile(flags.output, result));
  }

  json stats = ToJson(corpus.stats);
  stats["mechanism"] = mechanism;
  stats["epsilon"] = flags.epsilon;
  if (gamma.has_value()) stats["gamma"] = *gamma;
  stats["seed"] = seed;
  stats["oov"] = flags.oov;
  const std::string stats_path =
      !flags.report.empty() ? flags.report
                            : (flags.output.empty() ? "" : flags.output + ".stats.json");
  if (stats_path.empty()) {
    err << stats.dump(2) << "\n";
  } else {
    TEM_RETURN_IF_ERROR(WriteFile(stats_path, stats.dump(2) + "\n"));
  }
  return kExitOk;
}

absl::StatusOr<int> SweepCommand(const Flags& flags, std::ostream& out, std::ostream& err) {
  if (!flags.has_epsilons || flags.epsilons.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one value in --epsilons.");
  }
  for (double eps : flags.epsilons) TEM_RETURN_IF_ERROR(ValidateEpsilon(eps));
  if (flags.input.empty()) return absl::InvalidArgumentError("sweep needs --input.");
  if (!flags.index.empty()) {
    return absl::InvalidArgumentError("sweep builds its own indexes; drop --index.");
  }
  const std::vector<std::string> mechanisms =
      flags.mechanisms.empty() ? std::vector<std::string>{"tem", "madlib"} : flags.mechanisms;
  TEM_ASSIGN_OR_RETURN(OovPolicy oov, ParseOovPolicy(flags.oov));
  TEM_ASSIGN_OR_RETURN(MetricSpace space, LoadSpace(flags, err));
  TEM_ASSIGN_OR_RETURN(std::string text, ReadFile(flags.input));
  const SplitText split = SplitLines(text);
  const uint64_t seed = ResolveSeed(flags);

  std::string csv =
      "mechanism,epsilon,gamma,tokens_total,tokens_in_vocab,tokens_unchanged,"
      "unchanged_rate,mean_output_distance\n";
  json rows = json::array();
  for (const std::string& name : mechanisms) {
    for (double eps : flags.epsilons) {
      std::optional<double> gamma;
      TEM_ASSIGN_OR_RETURN(std::unique_ptr<WordMechanism> mech,
                           MakeMechanism(name, space, flags, eps, nullptr, &gamma));
      TEM_ASSIGN_OR_RETURN(PrivatizedCorpus corpus,
                           PrivatizeCorpus(split.lines, *mech,
                                           {oov, flags.lowercase, seed, flags.threads}));
      const CorpusStats& s = corpus.stats;
      absl::StrAppend(&csv, name, ",", Num(eps), ",", gamma ? Num(*gamma) : "", ",",
                      s.tokens_total, ",", s.tokens_in_vocab, ",", s.tokens_unchanged, ",",
                      Num(s.unchanged_rate()), ",", Num(s.mean_output_distance()), "\n");
      json row = ToJson(s);
      row["mechanism"] = name;
      row["epsilon"] = eps;
      if (gamma.has_value()) row["gamma"] = *gamma;
      rows.push_back(std::move(row));
    }
  }
  if (flags.output.empty()) {
    out << csv;
  } else {
    TEM_RETURN_IF_ERROR(WriteFile(flags.output, csv));
  }
  if (!flags.report.empty()) {
    const json report{{"seed", seed}, {"oov", flags.oov}, {"rows", std::move(rows)}};
    TEM_RETURN_IF_ERROR(WriteFile(flags.report, report.dump(2) + "\n"));
  }
  return kExitOk;
}

std::string Summary(const json& check) {
  std::string line = absl::StrCat(check["passed"].get<bool>() ? "PASS " : "FAIL ",
                                  check["check"].get<std::string>());
  const json& params = check["params"];
  if (params.contains("mechanism")) {
    absl::StrAppend(&line, " mechanism=", params["mechanism"].get<std::string>());
  }
  if (params.contains("gamma")) absl::StrAppend(&line, " gamma=", Num(params["gamma"]));
  if (!check["passed"].get<bool>()) absl::StrAppend(&line, " worst=", check["worst_case"].dump());
  return line;
}

absl::StatusOr<int> VerifyCommand(const Flags& flags, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  if (flags.has_epsilon) options.epsilon = flags.epsilon;
  if (flags.has_gamma) options.gamma = flags.gamma;
  if (flags.has_beta) options.beta = flags.beta;
  options.trials = flags.trials;
  options.seed = flags.has_seed ? flags.seed : 0;
  options.break_bottom_weight = flags.break_mode == "tem-bot-weight";

  std::optional<MetricSpace> space;
  if (flags.embeddings.empty()) {
    space = BuiltinVerifySpace();
  } else {
    TEM_ASSIGN_OR_RETURN(space, LoadSpace(flags, err));
  }
  TEM_ASSIGN_OR_RETURN(VerifyResult result, RunVerifySuite(*space, options));

  std::ostream& summary = flags.report.empty() ? err : out;
  for (const json& check : result.report["checks"]) summary << Summary(check) << "\n";
  summary << (result.passed ? "all checks passed" : "some checks failed") << "\n";
  if (flags.report.empty()) {
    out << result.report.dump(2) << "\n";
  } else {
    TEM_RETURN_IF_ERROR(WriteFile(flags.report, result.report.dump(2) + "\n"));
  }
  return result.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word-level metric differential privacy with truncated exponential and Madlib mechanisms.",
               "tem"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
  app.fallthrough();
  app.require_subcommand(1);

  Flags flags;
  app.add_option("--embeddings", flags.embeddings, "GloVe-format text embeddings");
  app.add_option("--mechanism", flags.mechanisms, "tem or madlib (sweep accepts a list)")
      ->delimiter(',')
      ->check(CLI::IsMember({"tem", "madlib"}));
  auto* epsilon = app.add_option("--epsilon", flags.epsilon, "Privacy parameter (> 0)");
  auto* epsilons =
      app.add_option("--epsilons", flags.epsilons, "Comma-separated epsilons for sweep")
          ->delimiter(',');
  auto* gamma = app.add_option("--gamma", flags.gamma, "Truncation threshold (>= 0)");
  auto* beta = app.add_option("--beta", flags.beta, "Calibrate gamma for this failure probability");
  auto* seed = app.add_option("--seed", flags.seed, "Random seed (default: nondeterministic)");
  app.add_option("--oov", flags.oov, "Out-of-vocabulary policy")
      ->check(CLI::IsMember({"error", "drop", "passthrough"}));
  app.add_flag("--lowercase", flags.lowercase, "Lowercase embedding words and input tokens");
  app.add_flag("--skip-header", flags.skip_header, "Skip a word2vec 'count dim' header line");
  app.add_option("--index", flags.index, "Truncation index file");
  app.add_option("--input", flags.input, "Input text, one document per line ('-' for stdin)");
  app.add_option("--output", flags.output, "Output path (default: stdout)");
  app.add_option("--report", flags.report, "JSON report path");
  app.add_option("--threads", flags.threads, "Worker threads (0: all cores)");
  app.add_option("--trials", flags.trials, "Monte Carlo trials per input for verify")
      ->check(CLI::Range(static_cast<size_t>(10000), static_cast<size_t>(100000000)));
  app.add_option("--break", flags.break_mode, "Deliberately break a check (testing)")
      ->check(CLI::IsMember({"tem-bot-weight"}));

  auto* build = app.add_subcommand("build-index", "Precompute candidate lists for one gamma");
  auto* privatize = app.add_subcommand("privatize", "Privatize a corpus word by word");
  auto* verify = app.add_subcommand("verify", "Run the privacy and utility checks");
  auto* sweep = app.add_subcommand("sweep", "Corpus statistics for a list of epsilons");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  flags.has_epsilon = epsilon->count() > 0;
  flags.has_epsilons = epsilons->count() > 0;
  flags.has_gamma = gamma->count() > 0;
  flags.has_beta = beta->count() > 0;
  flags.has_seed = seed->count() > 0;

  absl::StatusOr<int> result;
  if (build->parsed()) {
    result = BuildIndexCommand(flags, out, err);
  } else if (privatize->parsed()) {
    result = PrivatizeCommand(flags, out, err);
  } else if (verify->parsed()) {
    result = VerifyCommand(flags, out, err);
  } else if (sweep->parsed()) {
    result = SweepCommand(flags, out, err);
  }
  if (!result.ok()) {
    err << "error: " << result.status().message() << "\n";
    return kExitError;
  }
  return *result;
}

}  // namespace tem::cli
