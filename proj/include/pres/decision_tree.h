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

// Branching j-programs without merges (decision trees over j-disjunctions)
// and their translation into tree-like Res(j) refutations.
//
// Each internal node asks whether a disjunction of literals holds. A leaf
// names the input clause its record falsifies, or a conjunction of such
// clauses joined by and-introduction: for a record containing the fact
// ~(x & y), the leaf "a | x" + "b | y" closes it through a | b | (x & y).

#ifndef PRES_DECISION_TREE_H_
#define PRES_DECISION_TREE_H_

#include <optional>
#include <vector>

#include "pres/core.h"
#include "pres/proof.h"

namespace pres {

struct LeafPart {
  std::optional<int> axiom;     // Clause index in the formula...
  std::vector<VarId> param_vars;  // ...or a parameterized axiom.
  std::optional<Literal> conjoin;  // Literal contributed to the joined term.
};

struct DecisionNode {
  std::vector<Literal> query;  // Empty for leaves.
  int if_true = -1;
  int if_false = -1;
  std::vector<LeafPart> leaf;
  bool is_leaf() const { return query.empty(); }
};

class DecisionTree {
 public:
  int AddQuery(std::vector<Literal> query, int if_true, int if_false);
  int AddLeaf(std::vector<LeafPart> parts);
  int AddAxiomLeaf(int index) { return AddLeaf({LeafPart{index, {}, {}}}); }
  int AddParamLeaf(std::vector<VarId> vars) {
    return AddLeaf({LeafPart{std::nullopt, std::move(vars), {}}});
  }

  void set_root(int root) { root_ = root; }
  int root() const { return root_; }
  const DecisionNode& node(int id) const { return nodes_.at(id); }
  int size() const { return static_cast<int>(nodes_.size()); }
  // Number of internal nodes reachable from the root.
  long long QueryNodes() const;
  // Largest query width.
  int Width() const;

 private:
  std::vector<DecisionNode> nodes_;
  int root_ = -1;
};

// Emits a tree-mode proof whose last line is the empty clause when the tree
// is a correct refutation. Branches whose facts are never used are pruned
// from the output. Check() is the arbiter; the translation does not verify.
Proof TreeToProof(const DecisionTree& tree, const Formula& formula, int j,
                  std::optional<int> k = std::nullopt);

// Same, appending to an existing writer; returns the id of the root line.
int EmitTree(const DecisionTree& tree, const Formula& formula,
             ProofWriter* writer);

}  // namespace pres

#endif  // PRES_DECISION_TREE_H_
