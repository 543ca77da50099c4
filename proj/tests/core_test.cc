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

#include "pres/core.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace pres {
namespace {

Term T(std::initializer_list<int> lits) {
  std::vector<Literal> out;
  for (int x : lits) out.push_back(Literal::FromInt(x));
  return MakeTerm(out);
}

Assignment Assign(int num_vars, std::initializer_list<int> lits) {
  Assignment a(num_vars);
  for (int x : lits) a.Set(std::abs(x), x > 0);
  return a;
}

TEST(EvalClause, Examples) {
  JClause c({T({1, 2}), T({2})});
  EXPECT_EQ(EvalClause(Assignment(2), JClause()), Truth::kFalse);
  EXPECT_EQ(EvalClause(Assign(2, {1, -2}), c), Truth::kFalse);
  EXPECT_EQ(EvalClause(Assign(2, {1}), c), Truth::kUndetermined);
  EXPECT_EQ(EvalClause(Assign(2, {1, 2}), c), Truth::kTrue);
  EXPECT_THROW(EvalClause(Assign(2, {}), JClause({T({3})})), FormatError);
}

TEST(RestrictFormula, Examples) {
  Formula f = ParseJcnf("p jcnf 2 1 1\n1 2 0\n");
  EXPECT_EQ(RestrictFormula(f, Assign(2, {1})).num_clauses(), 0);
  Formula g = RestrictFormula(f, Assign(2, {-1}));
  ASSERT_EQ(g.num_clauses(), 1);
  EXPECT_EQ(g.num_vars(), 1);
  EXPECT_EQ(g.symbol(1), f.symbol(2));
  EXPECT_EQ(g.clauses()[0], JClause::FromInts({1}));

  Formula h = ParseJcnf("p jcnf 3 1 2\n1&2 3 0\n");
  Formula hr = RestrictFormula(h, Assign(3, {-2}));
  ASSERT_EQ(hr.num_clauses(), 1);
  // Unassigned variables stay in the table; x3 is found by name.
  EXPECT_EQ(hr.num_vars(), 2);
  VarId x3 = hr.Var(h.symbol(3));
  EXPECT_EQ(hr.clauses()[0], JClause::FromLiterals(std::vector<Literal>{{x3, true}}));

  Formula e = RestrictFormula(f, Assign(2, {-1, -2}));
  ASSERT_EQ(e.num_clauses(), 1);
  EXPECT_TRUE(e.clauses()[0].empty());
}

TEST(Jcnf, Examples) {
  Formula f = ParseJcnf("p jcnf 3 1 2\n1&-2 3 0\n");
  EXPECT_EQ(f.j(), 2);
  ASSERT_EQ(f.num_clauses(), 1);
  EXPECT_EQ(f.clauses()[0], JClause({T({1, -2}), T({3})}));
  try {
    ParseJcnf("p jcnf 3 1 2\n1&2&3 0\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("term width 3 exceeds j=2"),
              std::string::npos);
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ParseJcnf("p jcnf 2 1 1\n3 0\n"), FormatError);
  EXPECT_THROW(ParseJcnf("p cnf 2 1\n1 0\n"), FormatError);
}

TEST(Jcnf, EmptyClauseAndParameter) {
  Formula f = ParseJcnf("p jcnf 1 2 1 3\n1 0\n0\n");
  EXPECT_EQ(f.k(), 3);
  EXPECT_TRUE(f.clauses()[1].empty());
  EXPECT_EQ(SerializeJcnf(ParseJcnf(SerializeJcnf(f))), SerializeJcnf(f));
}

TEST(Canonical, IdempotentAndOrderFree) {
  JClause a({T({3, -1}), T({2})});
  JClause b({T({2}), T({-1, 3}), T({2})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(JClause(a.terms()), a);
  EXPECT_EQ(ClauseToString(a), "-1&3 2 0");
  EXPECT_THROW(T({1, -1}), FormatError);
}

Formula RandomFormula(std::mt19937_64& rng, int nv, int nc, int j) {
  std::ostringstream os;
  os << "p jcnf " << nv << " " << nc << " " << j << "\n";
  for (int c = 0; c < nc; ++c) {
    int terms = 1 + rng() % 3;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> vars(nv);
      for (int v = 0; v < nv; ++v) vars[v] = v + 1;
      std::shuffle(vars.begin(), vars.end(), rng);
      int width = 1 + rng() % j;
      for (int w = 0; w < width; ++w) {
        os << (w ? "&" : "") << (rng() % 2 ? vars[w] : -vars[w]);
      }
      os << " ";
    }
    os << "0\n";
  }
  return ParseJcnf(os.str());
}

// Restricting by a total assignment decides the formula the same way.
TEST(Properties, RestrictPreservesEvaluation) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const int nv = 2 + rng() % 7;
    Formula f = RandomFormula(rng, nv, 1 + rng() % 6, 2);
    for (uint32_t mask = 0; mask < (1u << nv); ++mask) {
      Assignment a(nv);
      for (int v = 1; v <= nv; ++v) a.Set(v, (mask >> (v - 1)) & 1);
      Formula g = RestrictFormula(f, a);
      EXPECT_EQ(f.Eval(a), g.Eval(Assignment(g.num_vars())));
    }
  }
}

TEST(Properties, WeightMatchesFold) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int nv = 1 + rng() % 30;
    Assignment a(nv);
    int expected = 0, assigned = 0;
    for (int v = 1; v <= nv; ++v) {
      int r = rng() % 3;
      if (r == 2) continue;
      a.Set(v, r == 1);
      expected += r == 1;
      ++assigned;
    }
    EXPECT_EQ(a.Weight(), expected);
    EXPECT_EQ(a.NumAssigned(), assigned);
  }
}

TEST(Properties, SerializationIsStable) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Formula f = RandomFormula(rng, 6, 5, 3);
    std::string s = SerializeJcnf(f);
    EXPECT_EQ(SerializeJcnf(ParseJcnf(s)), s);
    std::string js = SerializeStructured(f);
    EXPECT_EQ(SerializeStructured(ParseStructured(js)), js);
    EXPECT_EQ(SerializeJcnf(ParseFormula(js)), s);
  }
}

TEST(Symbols, RoundTrip) {
  for (const char* name : {"R^2_3", "S_1,2,3,4", "Bp_2", "A", "p_3,1"}) {
    EXPECT_EQ(VarSymbol::Parse(name).Name(), name);
  }
  EXPECT_THROW(VarSymbol::Parse("Z_1"), FormatError);
}

}  // namespace
}  // namespace pres
