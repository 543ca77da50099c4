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

#include "pres/proof.h"

#include <gtest/gtest.h>

#include <random>

#include "pres/builders.h"
#include "pres/decision_tree.h"
#include "pres/families.h"

namespace pres {
namespace {

Term T(std::initializer_list<int> lits) {
  std::vector<Literal> out;
  for (int x : lits) out.push_back(Literal::FromInt(x));
  return MakeTerm(out);
}

// Queries variables 1, 2, ... in order; a node becomes a leaf as soon as an
// axiom is falsified or more than k variables are true.
int NaiveTree(const Formula& f, std::optional<int> k, Assignment* a, VarId next,
              DecisionTree* tree) {
  for (int i = 0; i < f.num_clauses(); ++i) {
    if (EvalClause(*a, f.clauses()[i]) == Truth::kFalse) {
      return tree->AddAxiomLeaf(i);
    }
  }
  if (k && a->Weight() > *k) {
    std::vector<VarId> trues;
    for (VarId v = 1; v <= f.num_vars(); ++v) {
      if (a->Get(v) == true) trues.push_back(v);
    }
    return tree->AddParamLeaf(trues);
  }
  if (next > f.num_vars()) throw std::logic_error("formula is satisfiable");
  a->Set(next, true);
  int t = NaiveTree(f, k, a, next + 1, tree);
  a->Set(next, false);
  int e = NaiveTree(f, k, a, next + 1, tree);
  a->Unset(next);
  return tree->AddQuery({{next, true}}, t, e);
}

Proof NaiveRefutation(const Formula& f, std::optional<int> k) {
  DecisionTree tree;
  Assignment a(f.num_vars());
  tree.set_root(NaiveTree(f, k, &a, 1, &tree));
  return TreeToProof(tree, f, 1, k);
}

TEST(Check, TwoAxiomsAndCut) {
  Formula f = ParseJcnf("p jcnf 1 2 1\n1 0\n-1 0\n");
  ProofWriter w(ProofMode::kTree, 1);
  int a = w.Axiom(f, 0);
  int b = w.Axiom(f, 1);
  w.Cut(a, b, {{1, true}});
  CheckReport r = Check(w.proof(), f);
  EXPECT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(r.size_lines, 3);
  EXPECT_EQ(r.size_literal_occurrences, 2);
  EXPECT_EQ(r.param_axioms_used, 0);
}

TEST(Check, AndIntroWidth) {
  Formula f = ParseJcnf("p jcnf 3 2 2\n1&2 0\n2&3 0\n");
  ProofWriter w(ProofMode::kDag, 2);
  int a = w.Axiom(f, 0);
  int b = w.Axiom(f, 1);
  w.AndIntro(a, T({1, 2}), b, T({2, 3}));
  CheckReport r = Check(w.proof(), f);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failure, Failure::kWidth);
  EXPECT_EQ(r.failure_line, 3);
  EXPECT_NE(r.reason.find("width 3 > j=2"), std::string::npos);
}

TEST(Check, FinalLineMustBeEmpty) {
  Formula f = ParseJcnf("p jcnf 1 1 1\n1 0\n");
  ProofWriter w(ProofMode::kTree, 1);
  w.Axiom(f, 0);
  CheckReport r = Check(w.proof(), f);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failure, Failure::kFinalClause);
}

TEST(Check, DistinctReasons) {
  Formula f = ParseJcnf("p jcnf 2 2 1\n1 2 0\n-1 0\n");
  {
    Proof p;
    p.lines = {{1, JClause::FromInts({-1, -2}), rule::ParamAxiom{{1, 2}}}};
    EXPECT_EQ(Check(p, f).failure, Failure::kParamAxiom);
  }
  {
    Proof p;
    p.lines = {{1, JClause::FromInts({2}), rule::Axiom{0}}};
    EXPECT_EQ(Check(p, f).failure, Failure::kAxiomMismatch);
  }
  {
    Proof p;
    p.lines = {{1, JClause::FromInts({2}), rule::Cut{1, 2, {{1, true}}}}};
    EXPECT_EQ(Check(p, f).failure, Failure::kPremiseOrder);
  }
  {
    ProofWriter w(ProofMode::kDag, 1);
    int a = w.Axiom(f, 0);
    int b = w.Axiom(f, 1);
    Proof p = w.Release();
    p.lines.push_back({3, JClause::FromInts({2}), rule::Cut{a, b, {{2, true}}}});
    EXPECT_EQ(Check(p, f).failure, Failure::kPivotMismatch);
  }
  {
    ProofWriter w(ProofMode::kDag, 1);
    w.ExpandedAxiom(f, 0, {{1, true}, {2, true}});
    EXPECT_EQ(Check(w.proof(), f).failure, Failure::kRuleNotAllowed);
  }
}

TEST(Check, ExpandedAxiomOverTwoClauses) {
  Formula f = ParseJcnf("p jcnf 3 3 2\n1&2 3 0\n-1 0\n-3 0\n");
  ProofWriter w(ProofMode::kTree, 1);
  int e = w.ExpandedAxiom(f, 0, {{1, true}, {3, true}});
  int a = w.Axiom(f, 1);
  int c = w.Cut(e, a, {{1, true}});
  int b = w.Axiom(f, 2);
  w.Cut(c, b, {{3, true}});
  CheckReport r = Check(w.proof(), f);
  EXPECT_TRUE(r.ok) << r.reason;
}

TEST(Check, TreeDisciplineRejectsReuse) {
  Formula f = ParseJcnf("p jcnf 2 3 1\n1 0\n-1 2 0\n-1 -2 0\n");
  ProofWriter w(ProofMode::kDag, 1);
  int a = w.Axiom(f, 0);
  int b = w.Axiom(f, 1);
  int c = w.Axiom(f, 2);
  int x2 = w.Cut(a, b, {{1, true}});
  int nx2 = w.Cut(a, c, {{1, true}});
  w.Cut(x2, nx2, {{2, true}});
  Proof dag = w.Release();
  EXPECT_TRUE(Check(dag, f).ok);
  Proof tree = dag;
  tree.mode = ProofMode::kTree;
  CheckReport r = Check(tree, f);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failure, Failure::kTreeViolation);
}

TEST(Check, RipSixBuilderAccepted) {
  BuildResult b = BuildRipRes2(6);
  EXPECT_TRUE(Check(b.proof, b.formula).ok);
}

TEST(Soundness, IpThree) {
  BuildResult b = BuildIpRes1(3);
  ASSERT_TRUE(Check(b.proof, b.formula).ok);
  EXPECT_TRUE(SoundnessProbe(b.proof, b.formula));
}

TEST(Soundness, RipFourWithParameterTwo) {
  Formula f = Generate({.family = Family::RIP, .n = 4});
  Proof p = NaiveRefutation(f, 2);
  CheckReport r = Check(p, f);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_GT(r.param_axioms_used, 0);
  EXPECT_TRUE(SoundnessProbe(p, f));
}

TEST(Soundness, RefusesLargeFormulas) {
  BuildResult b = BuildIpRes1(6);
  EXPECT_THROW(SoundnessProbe(b.proof, b.formula), ParameterError);
}

// The padded formula has a model, so the probe can only succeed through the
// cited parameterized axioms.
TEST(Soundness, CitedParamAxiomsMatter) {
  Formula f = SigmaPrime(Generate({.family = Family::IP, .n = 2}), 1);
  Proof p = NaiveRefutation(f, 1);
  CheckReport r = Check(p, f);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_GT(r.param_axioms_used, 0);
  EXPECT_TRUE(SoundnessProbe(p, f));
  Proof stripped = p;
  stripped.lines.clear();
  EXPECT_FALSE(SoundnessProbe(stripped, f));
}

// Every small refutation in the corpus is confirmed semantically.
TEST(Properties, AcceptedImpliesProbe) {
  std::vector<std::pair<Formula, Proof>> corpus;
  for (int n = 2; n <= 4; ++n) {
    BuildResult ip = BuildIpRes1(n);
    corpus.emplace_back(ip.formula, ip.proof);
  }
  for (int n = 2; n <= 3; ++n) {
    BuildResult rip = BuildRipRes2(n);
    corpus.emplace_back(rip.formula, rip.proof);
  }
  BuildResult rlnp = BuildRlnpRes2(2);
  corpus.emplace_back(rlnp.formula, rlnp.proof);
  Formula rip3 = Generate({.family = Family::RIP, .n = 3});
  for (int k = 0; k <= 3; ++k) corpus.emplace_back(rip3, NaiveRefutation(rip3, k));
  for (const auto& [f, p] : corpus) {
    ASSERT_TRUE(Check(p, f).ok);
    EXPECT_TRUE(SoundnessProbe(p, f));
  }
}

// Removing a line that later lines cite, and renumbering the rest, makes the
// proof fail.
TEST(Properties, DeletingAPremiseIsRejected) {
  BuildResult b = BuildRipRes2(3);
  const Proof& p = b.proof;
  std::vector<bool> cited(p.lines.size() + 1, false);
  for (const ProofLine& line : p.lines) {
    for (int q : Premises(line.just)) cited[q] = true;
  }
  int tested = 0;
  for (const ProofLine& victim : p.lines) {
    if (!cited[victim.id]) continue;
    Proof q = p;
    q.lines.erase(q.lines.begin() + (victim.id - 1));
    auto shift = [&](int& id) {
      if (id > victim.id) --id;
    };
    for (ProofLine& line : q.lines) {
      shift(line.id);
      std::visit(
          [&](auto& r) {
            if constexpr (requires { r.premise; }) shift(r.premise);
            if constexpr (requires { r.premise1; }) {
              shift(r.premise1);
              shift(r.premise2);
            }
          },
          line.just);
    }
    EXPECT_FALSE(Check(q, b.formula).ok) << victim.id;
    ++tested;
  }
  EXPECT_GT(tested, 5);
}

TEST(Properties, AlteredLineIsRejected) {
  BuildResult b = BuildIpRes1(4);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    Proof q = b.proof;
    ProofLine& line = q.lines[rng() % (q.lines.size() - 1)];
    VarId v = 1 + rng() % b.formula.num_vars();
    Literal l{v, (rng() & 1) != 0};
    if (line.clause.Contains(MakeTerm({l}))) {
      Term gone = MakeTerm({l});
      line.clause = Without(line.clause, {&gone, 1});
    } else {
      line.clause = With(line.clause, MakeTerm({l}));
    }
    EXPECT_FALSE(Check(q, b.formula).ok);
  }
}

TEST(Format, ProofRoundTrip) {
  BuildResult b = BuildPstPres2(3, 1);
  std::string s = SerializeProof(b.proof);
  Proof q = ParseProof(s);
  EXPECT_EQ(SerializeProof(q), s);
  EXPECT_TRUE(Check(q, b.formula).ok);
}

TEST(DecisionTree, TranslationMatchesQueryCount) {
  Formula f = Generate({.family = Family::IP, .n = 3});
  DecisionTree tree;
  Assignment a(f.num_vars());
  tree.set_root(NaiveTree(f, std::nullopt, &a, 1, &tree));
  EXPECT_EQ(tree.Width(), 1);
  Proof p = TreeToProof(tree, f, 1);
  CheckReport r = Check(p, f);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(p.mode, ProofMode::kTree);
  EXPECT_LE(r.size_lines, 2 * tree.QueryNodes() + tree.QueryNodes() + 1);
}

}  // namespace
}  // namespace pres
