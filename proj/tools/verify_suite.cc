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

#include "verify_suite.h"

#include <algorithm>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tem/candidate_index.h"
#include "tem/dp_verifier.h"
#include "tem/privacy_params.h"
#include "tem/report_json.h"
#include "tem/status_macros.h"
#include "tem/synthetic.h"

namespace tem::cli {
namespace {

using json = nlohmann::json;

json Tagged(json check, const char* mechanism, std::optional<double> gamma) {
  check["params"]["mechanism"] = mechanism;
  if (gamma.has_value()) check["params"]["gamma"] = *gamma;
  return check;
}

}  // namespace

MetricSpace BuiltinVerifySpace() {
  return MakeClusteredSpace(/*words=*/12, /*dim=*/2, /*clusters=*/3,
                            /*center_scale=*/3.0, /*spread=*/0.3, /*seed=*/2026);
}

absl::StatusOr<VerifyResult> RunVerifySuite(const MetricSpace& space,
                                            const VerifyOptions& options) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(options.epsilon));
  if (options.gamma.has_value() && options.beta.has_value()) {
    return absl::InvalidArgumentError("Give either gamma or beta, not both.");
  }
  if (space.size() > kMaxSensitivityVocab) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "verify runs exhaustive checks and supports at most ", kMaxSensitivityVocab,
        " words; the embeddings have ", space.size(),
        ". Subsample the vocabulary and retry."));
  }
  const double beta = options.beta.value_or(kDefaultVerifyBeta);
  TEM_RETURN_IF_ERROR(ValidateBeta(beta));
  double primary_gamma;
  if (options.gamma.has_value()) {
    primary_gamma = *options.gamma;
  } else {
    TEM_ASSIGN_OR_RETURN(primary_gamma, CalibrateGamma(options.epsilon, beta, space.size()));
  }
  TEM_RETURN_IF_ERROR(PrivacyParams::Create(options.epsilon, primary_gamma).status());

  std::vector<double> gammas{primary_gamma};
  for (double g : {0.0, MedianPairwiseDistance(space), Diameter(space)}) {
    if (std::find(gammas.begin(), gammas.end(), g) == gammas.end()) gammas.push_back(g);
  }

  json checks = json::array();
  bool all_passed = true;
  auto add = [&](json check) {
    all_passed = all_passed && check["passed"].get<bool>();
    checks.push_back(std::move(check));
  };

  for (double gamma : gammas) {
    TEM_ASSIGN_OR_RETURN(PrivacyParams params, PrivacyParams::Create(options.epsilon, gamma));
    TEM_ASSIGN_OR_RETURN(SensitivityReport sensitivity, CheckSensitivityLemma(space, gamma));
    add(Tagged(ToJson(sensitivity, space), "tem", gamma));

    const TemOracleMutation mutation = options.break_bottom_weight
                                           ? TemOracleMutation::kDoubleBottomWeight
                                           : TemOracleMutation::kNone;
    TEM_ASSIGN_OR_RETURN(
        DpCheckReport dp,
        CheckMetricDpExact(MakeTemOracle(space, params, mutation), space, options.epsilon));
    json dp_json = Tagged(ToJson(dp, space), "tem", gamma);
    if (options.break_bottom_weight) dp_json["params"]["mutation"] = "tem-bot-weight";
    add(std::move(dp_json));

    TEM_ASSIGN_OR_RETURN(TruncationIndex index, TruncationIndex::Build(space, gamma));
    TEM_ASSIGN_OR_RETURN(EquivalenceReport equivalence,
                         CheckAlgEquivalence(space, params, index, options.seed));
    add(Tagged(ToJson(equivalence, space), "tem", gamma));
    TEM_ASSIGN_OR_RETURN(BottomEquivalenceReport bottom, CheckBottomEquivalence(space, params));
    add(Tagged(ToJson(bottom, space), "tem", gamma));
  }

  TEM_ASSIGN_OR_RETURN(UtilityReport utility, CheckUtilityBound(space, options.epsilon, beta));
  add(Tagged(ToJson(utility, space), "tem", std::nullopt));

  const MonteCarloOptions mc{options.trials, options.alpha, options.seed};
  TEM_ASSIGN_OR_RETURN(PrivacyParams primary, PrivacyParams::Create(options.epsilon, primary_gamma));
  TEM_ASSIGN_OR_RETURN(MonteCarloReport tem_mc,
                       CheckMetricDpMonteCarlo(MakeTemSampler(space, primary), space,
                                               options.epsilon, mc));
  add(Tagged(ToJson(tem_mc, space), "tem", primary_gamma));
  TEM_ASSIGN_OR_RETURN(MonteCarloReport madlib_mc,
                       CheckMetricDpMonteCarlo(MakeMadlibSampler(space, options.epsilon), space,
                                               options.epsilon, mc));
  add(Tagged(ToJson(madlib_mc, space), "madlib", std::nullopt));
  TEM_ASSIGN_OR_RETURN(KsReport ks, CheckExpBallRadius(space.dim(), options.epsilon,
                                                       options.trials, options.alpha,
                                                       options.seed));
  add(Tagged(ToJson(ks), "madlib", std::nullopt));

  VerifyResult result;
  result.passed = all_passed;
  result.report = {
      {"passed", all_passed},
      {"vocab_size", space.size()},
      {"dim", space.dim()},
      {"epsilon", options.epsilon},
      {"primary_gamma", primary_gamma},
      {"beta", beta},
      {"gammas", gammas},
      {"seed", options.seed},
      {"checks", std::move(checks)},
  };
  return result;
}

}  // namespace tem::cli
