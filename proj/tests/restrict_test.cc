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

#include "pres/restrict.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "pres/families.h"
#include "pres/search.h"

namespace pres {
namespace {

VarId R(int n, int i) { return EncodeRlnpVar(n, {VarKind::R, i, 0}); }
VarId L(int n, int i, int j) { return EncodeRlnpVar(n, {VarKind::L, i, j}); }
VarId S(int n, int i, int j) { return EncodeRlnpVar(n, {VarKind::S, i, j}); }

JClause NegClause(std::vector<VarId> vars) {
  std::vector<Literal> lits;
  for (VarId v : vars) lits.push_back({v, false});
  return JClause::FromLiterals(lits);
}

std::vector<int> FreeElements(const Restriction& rho) {
  std::vector<int> out;
  for (int i = 1; i < rho.n(); ++i) {
    if (!rho.InC(i) && i != rho.i0()) out.push_back(i);
  }
  return out;
}

TEST(Encoding, MatchesGeneratorOrder) {
  Formula f = Generate({.family = Family::RLNP, .n = 4});
  ASSERT_EQ(f.num_vars(), RlnpNumVars(4));
  for (VarId v = 1; v <= f.num_vars(); ++v) {
    RlnpVar x = DecodeRlnpVar(4, v);
    const VarSymbol& s = f.symbol(v);
    EXPECT_EQ(s.kind, x.kind);
    EXPECT_EQ(s.coords[0], x.i);
    if (x.kind != VarKind::R) EXPECT_EQ(s.coords[1], x.j);
    EXPECT_EQ(EncodeRlnpVar(4, x), v);
  }
  EXPECT_THROW(DecodeRlnpVar(4, 0), ParameterError);
  EXPECT_THROW(DecodeRlnpVar(4, 37), ParameterError);
}

TEST(Sample, SetSizesAtSixteen) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Restriction rho = SampleRlnpRestriction(16, seed);
    EXPECT_EQ(rho.C().size(), 12u);
    EXPECT_EQ(FreeElements(rho).size(), 2u);
    EXPECT_FALSE(rho.InC(rho.i0()));
    EXPECT_FALSE(rho.InC(16));
    EXPECT_GE(rho.i0(), 1);
    EXPECT_LE(rho.i0(), 15);
    std::set<int> image;
    for (int c : rho.C()) {
      EXPECT_TRUE(rho.InC(rho.Pi(c)));
      image.insert(rho.Pi(c));
    }
    EXPECT_EQ(image.size(), rho.C().size());
  }
}

TEST(Sample, RejectsNonSquares) {
  EXPECT_THROW(SampleRlnpRestriction(15, 1), ParameterError);
  EXPECT_THROW(SampleRlnpRestriction(4, 1), ParameterError);
  EXPECT_NO_THROW(SampleRlnpRestriction(9, 1));
}

TEST(Sample, DeterministicAndVaried) {
  Restriction a = SampleRlnpRestriction(25, 9);
  Restriction b = SampleRlnpRestriction(25, 9);
  EXPECT_EQ(a.i0(), b.i0());
  EXPECT_EQ(a.C(), b.C());
  for (int c : a.C()) EXPECT_EQ(a.Pi(c), b.Pi(c));
  std::set<int> seen;
  int differs = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    int x = SampleRlnpRestriction(100, 2 * seed).i0();
    int y = SampleRlnpRestriction(100, 2 * seed + 1).i0();
    differs += x != y;
    seen.insert(x);
  }
  EXPECT_GE(differs, 90);
  EXPECT_GT(seen.size(), 40u);
}

// Every value checked against the listed rules, recomputed from i0, C, pi.
TEST(Sample, ValuesFollowRules) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 16;
    Restriction rho = SampleRlnpRestriction(n, seed);
    const int i0 = rho.i0();
    auto c = [&](int i) { return rho.InC(i); };
    EXPECT_EQ(rho.Value(R(n, n)), true);
    for (int i = 1; i <= n; ++i) {
      std::optional<bool> r = i == n || i == i0 ? std::optional(true)
                              : c(i)            ? std::optional(false)
                                                : std::nullopt;
      EXPECT_EQ(rho.Value(R(n, i)), r);
      for (int j = 1; j <= n; ++j) {
        std::optional<bool> s, l;
        if (i == i0 && j == n) {
          s = l = true;
        } else if (c(i) && c(j)) {
          s = l = rho.Pi(j) == i;
        } else if ((c(j) && !c(i) && i != i0) || (c(i) && !c(j) && j != i0)) {
          l = false;
        }
        EXPECT_EQ(rho.Value(S(n, i, j)), s) << i << "," << j;
        EXPECT_EQ(rho.Value(L(n, i, j)), l) << i << "," << j;
      }
    }
  }
}

TEST(Survives, Examples) {
  const int n = 16;
  Restriction rho = SampleRlnpRestriction(n, 3);
  int c = rho.C().front();
  EXPECT_FALSE(Survives(NegClause({R(n, c), R(n, n)}), rho));
  EXPECT_TRUE(Survives(NegClause({R(n, n), R(n, rho.i0())}), rho));
  EXPECT_THROW(Survives(JClause::FromInts({1, 2}), rho), ParameterError);
}

TEST(Survives, AddingLiteralNeverHelps) {
  std::mt19937_64 rng(5);
  const int n = 25;
  for (int t = 0; t < 2000; ++t) {
    Restriction rho = Restriction::Sample(n, rng);
    JClause base = SampleParamClause(n, 4, ClauseSampler::kStratified, rng);
    auto vars = *ParamAxioms::VarsOf(base);
    VarId extra = 1 + rng() % RlnpNumVars(n);
    if (std::find(vars.begin(), vars.end(), extra) != vars.end()) continue;
    vars.push_back(extra);
    if (Survives(NegClause(vars), rho)) EXPECT_TRUE(Survives(base, rho));
  }
}

TEST(Bounds, Values) {
  // 100^{-1.3229} = 2.2607e-3; the quoted 2.27e-3 holds to 1%.
  EXPECT_NEAR(SurvivalBound(100, 7), 2.27e-3, 0.01 * 2.27e-3);
  EXPECT_DOUBLE_EQ(SurvivalBound(100, 7), std::pow(100.0, -std::sqrt(1.75)));
  EXPECT_DOUBLE_EQ(PerLiteralBound(10000), 0.02);
}

// Exactly sqrt(n) elements keep ~R_i open, so the rate is 1/sqrt(n).
TEST(Estimate, PerLiteralRateMatchesSetSizes) {
  Restriction rho = SampleRlnpRestriction(10000, 1);
  int open = 0;
  for (int i = 1; i <= 10000; ++i) open += rho.Value(R(10000, i)) != false;
  EXPECT_EQ(open, 100);

  EstimateReport r = EstimatePerLiteral(10000, 100000, 17);
  EXPECT_EQ(r.trials, 100000);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.empirical_rate, 0.01, 5 * std::sqrt(0.01 * 0.99 / 1e5));
  EXPECT_LE(r.empirical_rate, r.bound + 3 * r.sigma);
}

TEST(Estimate, SurvivalAtHundredSeven) {
  EstimateReport r = EstimateSurvival(100, 7, 1000000, 23);
  EXPECT_DOUBLE_EQ(r.bound, SurvivalBound(100, 7));
  EXPECT_NEAR(r.sigma, std::sqrt(r.bound * (1 - r.bound) / 1e6), 1e-12);
  EXPECT_TRUE(r.pass) << EstimateToJson(r);
  RecordProperty("empirical_rate", std::to_string(r.empirical_rate));
}

TEST(Estimate, IndependentOfThreadCount) {
  EstimateReport a = EstimateSurvival(36, 4, 20000, 3, ClauseSampler::kUniform, 1);
  EstimateReport b = EstimateSurvival(36, 4, 20000, 3, ClauseSampler::kUniform, 3);
  EXPECT_EQ(a.hits, b.hits);
}

// Independent count: coordinates of all variables except one occurrence of
// each special variable.
int CountCoordinates(const std::vector<VarId>& vars, int n, int i0) {
  std::set<VarId> specials = {R(n, n), R(n, i0), L(n, i0, n), S(n, i0, n)};
  std::set<int> coords;
  for (VarId v : vars) {
    if (specials.erase(v)) continue;
    RlnpVar x = DecodeRlnpVar(n, v);
    coords.insert(x.i);
    if (x.kind != VarKind::R) coords.insert(x.j);
  }
  return static_cast<int>(coords.size());
}

TEST(DistinctCoordinates, Examples) {
  const int n = 16;
  Restriction rho = SampleRlnpRestriction(n, 4);
  const int i0 = rho.i0();
  EXPECT_EQ(DistinctCoordinates(NegClause({R(n, 1), R(n, 2), R(n, 3)}), rho), 3);
  int other = i0 == 5 ? 6 : 5;
  EXPECT_EQ(DistinctCoordinates(NegClause({R(n, n), R(n, i0), L(n, i0, n),
                                           S(n, i0, n), R(n, other)}),
                                rho),
            1);
}

// Clauses drawn from a small coordinate pool so the lower bound is tight.
TEST(DistinctCoordinates, LowerBoundOnRandomClauses) {
  const int n = 36;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20000; ++t) {
    Restriction rho = Restriction::Sample(n, rng);
    int k = 4 + rng() % 8;
    int pool = 1 + rng() % 4;
    std::vector<int> coords(pool);
    for (int& c : coords) c = 1 + rng() % n;
    std::set<VarId> chosen;
    for (VarId s : {R(n, n), R(n, rho.i0()), L(n, rho.i0(), n), S(n, rho.i0(), n)}) {
      if (rng() % 2) chosen.insert(s);
    }
    int guard = 0;
    while (static_cast<int>(chosen.size()) < k + 1 && guard++ < 1000) {
      int a = coords[rng() % pool], b = coords[rng() % pool];
      int kind = rng() % 3;
      chosen.insert(kind == 0 ? R(n, a) : kind == 1 ? L(n, a, b) : S(n, a, b));
    }
    if (static_cast<int>(chosen.size()) < k + 1) continue;
    std::vector<VarId> vars(chosen.begin(), chosen.end());
    int d = DistinctCoordinates(NegClause(vars), rho);
    EXPECT_EQ(d, CountCoordinates(vars, n, rho.i0()));
    EXPECT_GE(d, std::ceil(std::sqrt((k - 3) / 4.0)));
  }
}

TEST(Restricted, NoEmptyClauseAtSixteenAndTwentyFive) {
  for (int n : {16, 25}) {
    Formula f = Generate({.family = Family::RLNP, .n = n});
    for (uint64_t seed = 0; seed < 10; ++seed) {
      Restriction rho = SampleRlnpRestriction(n, seed);
      Formula g = RestrictFormula(f, rho.ToAssignment(f));
      for (const JClause& c : g.clauses()) EXPECT_FALSE(c.empty()) << n << " " << seed;
    }
  }
}

TEST(Restricted, NineIsStillUnsatisfiable) {
  Formula f = Generate({.family = Family::RLNP, .n = 9});
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Restriction rho = SampleRlnpRestriction(9, seed);
    Formula g = RestrictFormula(f, rho.ToAssignment(f));
    EXPECT_FALSE(FindModel(g, {.max_vars = g.num_vars()})) << seed;
  }
}

}  // namespace
}  // namespace pres
