// Copyright 2026 The pres Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Explicit refutations of the families. Tree-like ones are written as
// decision trees and translated; the RLNP refutation is a DAG written line by
// line. Builders do not self-check: run Check() on the result.

#ifndef PRES_BUILDERS_H_
#define PRES_BUILDERS_H_

#include <optional>
#include <string>

#include "pres/core.h"
#include "pres/decision_tree.h"
#include "pres/families.h"
#include "pres/proof.h"

namespace pres {

enum class BuildMethod {
  kIpRes1,
  kFptPres1,
  kRipRes2,
  kRvipResJ,
  kRlnpRes2,
  kPstPres2,
  kSigmaPrimeLift,
};

std::string BuildMethodName(BuildMethod m);
// Accepts "ip-res1", "IpRes1", "fpt" and similar spellings.
BuildMethod ParseBuildMethod(std::string_view name);

struct BuildRequest {
  BuildMethod method = BuildMethod::kIpRes1;
  int n = 2;
  std::optional<int> k;
  // kRvipResJ: unset means RVIP (r = 1, plain R names); set means RVIPr.
  std::optional<int> r;
  // kFptPres1: IP or RIP.
  Family family = Family::IP;
};

struct BuildResult {
  Formula formula;
  Proof proof;
  // Set for tree-like builders that go through a decision tree.
  std::optional<DecisionTree> tree;
  long long query_nodes = 0;
};

BuildResult BuildIpRes1(int n);
BuildResult BuildFptPres1(Family family, int n, int k);
BuildResult BuildRipRes2(int n);
// r unset: RVIP_n in Res*(2). r set: RVIP^r_n in Res*(r+1).
BuildResult BuildRvipResJ(int n, std::optional<int> r);
BuildResult BuildRlnpRes2(int n);
BuildResult BuildPstPres2(int n, int k);
// Lifts an accepted refutation `p` of `base` to SigmaPrime(base, k).
// Throws ParameterError when `p` is not accepted for `base`.
BuildResult BuildSigmaPrime(const Proof& p, const Formula& base, int k);

// Dispatches on the method. kSigmaPrimeLift pads SigmaPST_n and lifts the
// output of BuildPstPres2(n, k).
BuildResult Build(const BuildRequest& request);

}  // namespace pres

#endif  // PRES_BUILDERS_H_
