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

#include "tem/report_json.h"

#include <string>

namespace tem {
namespace {

using json = nlohmann::json;

std::string Word(const MetricSpace& space, WordId id) {
  return id < space.size() ? space.vocabulary().word(id) : std::to_string(id);
}

json Envelope(std::string check, json params, bool passed, json worst, json stats) {
  return json{{"check", std::move(check)},
              {"params", std::move(params)},
              {"passed", passed},
              {"worst_case", std::move(worst)},
              {"stats", std::move(stats)}};
}

}  // namespace

json ToJson(const SensitivityReport& r, const MetricSpace& space) {
  json cases = json::object();
  for (int c = 0; c < 4; ++c) cases[std::to_string(c + 1)] = r.case_counts[c];
  return Envelope(
      "sensitivity_lemma", {{"gamma", r.gamma}, {"tolerance", r.tolerance}}, r.passed,
      {{"i", Word(space, r.worst.first)},
       {"w", Word(space, r.worst.second)},
       {"w_prime", Word(space, r.worst.third)},
       {"case", static_cast<int>(r.worst_case)},
       {"violation", r.max_violation}},
      {{"triples_checked", r.triples_checked}, {"case_counts", cases}});
}

json ToJson(const DpCheckReport& r, const MetricSpace& space) {
  return Envelope(
      "metric_dp_exact", {{"epsilon", r.epsilon}, {"tolerance", r.tolerance}}, r.passed,
      {{"w", Word(space, r.worst.first)},
       {"w_prime", Word(space, r.worst.second)},
       {"y", Word(space, r.worst.third)},
       {"log_ratio_violation", r.max_log_ratio_violation}},
      {{"pairs_checked", r.pairs_checked}, {"triples_checked", r.triples_checked}});
}

json ToJson(const UtilityReport& r, const MetricSpace& space) {
  return Envelope("utility_bound",
                  {{"epsilon", r.epsilon},
                   {"beta", r.beta},
                   {"gamma", r.gamma},
                   {"tolerance", r.tolerance}},
                  r.passed,
                  {{"w", Word(space, r.min_input)}, {"mass_within_gamma", r.min_mass}},
                  {{"min_mass_within_gamma", r.min_mass},
                   {"analytic_outside_mass", r.analytic_outside_mass},
                   {"analytic_passed", r.analytic_passed},
                   {"inputs", r.mass_within_gamma.size()}});
}

json ToJson(const MonteCarloReport& r, const MetricSpace& space) {
  return Envelope("metric_dp_monte_carlo",
                  {{"epsilon", r.epsilon},
                   {"trials", r.options.trials},
                   {"alpha", r.options.alpha},
                   {"seed", r.options.seed}},
                  !r.violation_certified,
                  {{"w", Word(space, r.worst.first)},
                   {"w_prime", Word(space, r.worst.second)},
                   {"y", Word(space, r.worst.third)},
                   {"certified_log_gap", r.max_certified_gap}},
                  {{"verdict", r.verdict}, {"z", r.z}});
}

json ToJson(const EquivalenceReport& r, const MetricSpace& space) {
  return Envelope("index_equivalence", json::object(), r.passed,
                  {{"w", Word(space, r.worst_word)},
                   {"max_abs_difference", r.max_abs_difference}},
                  {{"words_checked", r.words_checked},
                   {"samples_compared", r.samples_compared},
                   {"sample_mismatches", r.sample_mismatches}});
}

json ToJson(const BottomEquivalenceReport& r, const MetricSpace& space) {
  return Envelope("bottom_equivalence", json::object(), r.passed,
                  {{"w", Word(space, r.worst_word)},
                   {"max_abs_difference", r.max_abs_difference}},
                  {{"words_checked", r.words_checked}});
}

json ToJson(const KsReport& r) {
  return Envelope("madlib_radius_ks",
                  {{"dim", r.dim},
                   {"epsilon", r.epsilon},
                   {"samples", r.samples},
                   {"alpha", r.alpha}},
                  r.passed, {{"statistic", r.statistic}},
                  {{"p_value", r.p_value}, {"mean_radius", r.mean_radius}});
}

}  // namespace tem
