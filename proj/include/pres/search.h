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

// Exhaustive oracles: satisfiability, weight-bounded satisfiability,
// classification of parameterized contradictions and minimum decision-tree
// size. All of them refuse instances above an explicit size guard.

#ifndef PRES_SEARCH_H_
#define PRES_SEARCH_H_

#include <optional>
#include <string>

#include "pres/core.h"
#include "pres/decision_tree.h"

namespace pres {

struct SatOptions {
  int max_vars = 24;
};

// Complete backtracking search in variable order with unit propagation over
// j-clauses. Returns a total model or nullopt if none exists.
std::optional<Assignment> FindModel(const Formula& f, SatOptions options = {});

// A satisfying total assignment of weight <= k, searched by weight and then
// lexicographically by the set of true variables. Refuses when more than
// `max_candidates` assignments would have to be enumerated.
std::optional<Assignment> WeightBoundedSat(const Formula& f, int k,
                                           long long max_candidates = 10'000'000);

enum class Classification { kStrong, kParameterizedOnly, kNotPCon };
std::string ClassificationName(Classification c);

Classification Classify(const Formula& f, int k);

struct MinTreeResult {
  long long size = 0;  // Query nodes.
  DecisionTree tree;
};

// Minimum number of query nodes of a decision tree over single variables
// that solves the search problem for `f` (plus, if `k` is set, all
// parameterized axioms for k). Refuses above `max_vars` variables.
MinTreeResult MinTreeSize(const Formula& f, std::optional<int> k,
                          int max_vars = 16);

}  // namespace pres

#endif  // PRES_SEARCH_H_
