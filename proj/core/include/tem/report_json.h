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

// JSON rendering of verification reports. Every report has the shape
// {"check", "params", "passed", "worst_case", "stats"}.

#ifndef TEM_REPORT_JSON_H_
#define TEM_REPORT_JSON_H_

#include <nlohmann/json.hpp>

#include "tem/dp_verifier.h"
#include "tem/embedding_store.h"

namespace tem {

nlohmann::json ToJson(const SensitivityReport& report, const MetricSpace& space);
nlohmann::json ToJson(const DpCheckReport& report, const MetricSpace& space);
nlohmann::json ToJson(const UtilityReport& report, const MetricSpace& space);
nlohmann::json ToJson(const MonteCarloReport& report, const MetricSpace& space);
nlohmann::json ToJson(const EquivalenceReport& report, const MetricSpace& space);
nlohmann::json ToJson(const BottomEquivalenceReport& report, const MetricSpace& space);
nlohmann::json ToJson(const KsReport& report);

}  // namespace tem

#endif  // TEM_REPORT_JSON_H_
