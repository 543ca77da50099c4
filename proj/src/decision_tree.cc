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

#include "pres/decision_tree.h"

#include <algorithm>

namespace pres {

int DecisionTree::AddQuery(std::vector<Literal> query, int if_true,
                           int if_false) {
  if (query.empty()) throw ParameterError("empty query");
  std::sort(query.begin(), query.end());
  nodes_.push_back({std::move(query), if_true, if_false, {}});
  return size() - 1;
}

int DecisionTree::AddLeaf(std::vector<LeafPart> parts) {
  if (parts.empty()) throw ParameterError("leaf without axioms");
  nodes_.push_back({{}, -1, -1, std::move(parts)});
  return size() - 1;
}

long long DecisionTree::QueryNodes() const {
  long long count = 0;
  std::vector<int> stack = {root_};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const DecisionNode& n = nodes_.at(id);
    if (n.is_leaf()) continue;
    ++count;
    stack.push_back(n.if_true);
    stack.push_back(n.if_false);
  }
  return count;
}

int DecisionTree::Width() const {
  int w = 0;
  for (const DecisionNode& n : nodes_) {
    w = std::max(w, static_cast<int>(n.query.size()));
  }
  return w;
}

namespace {

// How an internal node's clause is obtained from its children.
enum class Use { kCut, kTrueOnly, kFalseOnly };

class Translator {
 public:
  Translator(const DecisionTree& tree, const Formula& f, ProofWriter* w)
      : tree_(tree), f_(f), w_(w), clause_(tree.size()), use_(tree.size()) {}

  int Run() {
    Plan(tree_.root());
    return Emit(tree_.root());
  }

 private:
  static std::vector<Term> Singles(const std::vector<Literal>& q) {
    std::vector<Term> out;
    for (Literal l : q) out.push_back({l});
    return out;
  }
  static Term NegTerm(const std::vector<Literal>& q) {
    Term t;
    for (Literal l : q) t.push_back(l.Negated());
    std::sort(t.begin(), t.end());
    return t;
  }

  JClause LeafClause(const LeafPart& part) const {
    if (part.axiom) return f_.clauses().at(*part.axiom);
    std::vector<Literal> lits;
    for (VarId v : part.param_vars) lits.push_back({v, false});
    return JClause::FromLiterals(lits);
  }

  // First pass: the clause each node will yield, computed without output.
  void Plan(int id) {
    const DecisionNode& n = tree_.node(id);
    if (n.is_leaf()) {
      JClause c = LeafClause(n.leaf[0]);
      if (n.leaf.size() > 1 || n.leaf[0].conjoin) {
        Term term = {*n.leaf[0].conjoin};
        c = Without(c, {&term, 1});
        for (size_t i = 1; i < n.leaf.size(); ++i) {
          Term t = {*n.leaf[i].conjoin};
          c = Union(c, Without(LeafClause(n.leaf[i]), {&t, 1}));
          term.push_back(*n.leaf[i].conjoin);
        }
        std::sort(term.begin(), term.end());
        c = With(c, term);
      }
      clause_[id] = std::move(c);
      return;
    }
    Plan(n.if_true);
    Plan(n.if_false);
    const JClause& t = clause_[n.if_true];
    const JClause& fl = clause_[n.if_false];
    Term neg = NegTerm(n.query);
    auto singles = Singles(n.query);
    bool f_uses = std::any_of(singles.begin(), singles.end(),
                              [&](const Term& s) { return fl.Contains(s); });
    if (!t.Contains(neg)) {
      use_[id] = Use::kTrueOnly;
      clause_[id] = t;
    } else if (!f_uses) {
      use_[id] = Use::kFalseOnly;
      clause_[id] = fl;
    } else {
      use_[id] = Use::kCut;
      clause_[id] = Union(Without(fl, singles), Without(t, {&neg, 1}));
    }
  }

  int EmitLeaf(const DecisionNode& n) {
    auto line = [&](const LeafPart& part) {
      return part.axiom ? w_->Axiom(f_, *part.axiom)
                        : w_->ParamAxiom(part.param_vars);
    };
    int id = line(n.leaf[0]);
    if (n.leaf.size() == 1 && !n.leaf[0].conjoin) return id;
    Term term = {*n.leaf[0].conjoin};
    for (size_t i = 1; i < n.leaf.size(); ++i) {
      int other = line(n.leaf[i]);
      Term t = {*n.leaf[i].conjoin};
      id = w_->AndIntro(id, term, other, t);
      term.push_back(t[0]);
      std::sort(term.begin(), term.end());
    }
    return id;
  }

  int Emit(int id) {
    const DecisionNode& n = tree_.node(id);
    if (n.is_leaf()) return EmitLeaf(n);
    switch (use_[id]) {
      case Use::kTrueOnly:
        return Emit(n.if_true);
      case Use::kFalseOnly:
        return Emit(n.if_false);
      case Use::kCut:
        break;
    }
    int t = Emit(n.if_true);
    int fl = Emit(n.if_false);
    for (const Term& s : Singles(n.query)) {
      if (!w_->clause(fl).Contains(s)) fl = w_->WeakenAdd(fl, s);
    }
    return w_->Cut(fl, t, n.query);
  }

  const DecisionTree& tree_;
  const Formula& f_;
  ProofWriter* w_;
  std::vector<JClause> clause_;
  std::vector<Use> use_;
};

}  // namespace

int EmitTree(const DecisionTree& tree, const Formula& formula,
             ProofWriter* writer) {
  return Translator(tree, formula, writer).Run();
}

Proof TreeToProof(const DecisionTree& tree, const Formula& formula, int j,
                  std::optional<int> k) {
  ProofWriter writer(ProofMode::kTree, j, k);
  EmitTree(tree, formula, &writer);
  return writer.Release();
}

}  // namespace pres
