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

// Random restrictions of RLNP_n that keep about sqrt(n) elements alive, and
// Monte Carlo estimates of how often a parameterized clause survives them.
//
// RLNP_n variables are numbered as the generator emits them: R_1..R_n, then
// L_{i,j} row by row, then S_{i,j} row by row. Values are computed on demand
// so that very large n never materializes 2n^2 + n entries.

#ifndef PRES_RESTRICT_H_
#define PRES_RESTRICT_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pres/core.h"

namespace pres {

struct RlnpVar {
  VarKind kind = VarKind::R;  // R, L or S.
  int i = 0;
  int j = 0;  // 0 for R.
};

long long RlnpNumVars(int n);
RlnpVar DecodeRlnpVar(int n, VarId v);
VarId EncodeRlnpVar(int n, const RlnpVar& x);

class Restriction {
 public:
  int n() const { return n_; }
  int i0() const { return i0_; }
  // Sorted, |C| = n - sqrt(n).
  const std::vector<int>& C() const { return c_; }
  bool InC(int i) const { return in_c_[i] != 0; }
  // pi(j) for j in C.
  int Pi(int j) const { return pi_[j]; }

  std::optional<bool> Value(const RlnpVar& x) const;
  std::optional<bool> Value(VarId v) const;
  // Symbols other than R_i, L_{i,j}, S_{i,j} within [n] stay unassigned.
  std::optional<bool> Value(const VarSymbol& s) const;
  // Assignment over `f`'s variables, matched by symbol.
  Assignment ToAssignment(const Formula& f) const;

  static Restriction Sample(int n, std::mt19937_64& rng);

 private:
  int n_ = 0;
  int i0_ = 0;
  std::vector<int> c_;
  std::vector<char> in_c_;
  std::vector<int> pi_;
};

// Throws ParameterError unless n is a perfect square >= 9.
Restriction SampleRlnpRestriction(int n, uint64_t seed);
int ExactSqrt(int n);

// True iff the parameterized clause is not made true. Variable ids are RLNP
// ids for rho.n(). Throws ParameterError for other clauses.
bool Survives(const JClause& clause, const Restriction& rho);

// Distinct co-ordinates of the clause's variables after discounting one
// occurrence each of ~R_n, ~R_{i0}, ~L_{i0,n}, ~S_{i0,n}.
int DistinctCoordinates(const JClause& clause, const Restriction& rho);

double SurvivalBound(int n, int k);
double PerLiteralBound(int n);

enum class ClauseSampler { kUniform, kStratified };

// Uniform (k+1)-subset of all RLNP_n variables, negated. The stratified
// sampler first picks the kind (R, L, S) uniformly, then coordinates.
JClause SampleParamClause(int n, int k, ClauseSampler sampler,
                          std::mt19937_64& rng);

struct EstimateReport {
  long long trials = 0;
  long long hits = 0;
  double empirical_rate = 0;
  double bound = 0;
  double sigma = 0;
  bool pass = false;
};
std::string EstimateToJson(const EstimateReport& r);

// Trials are split into fixed chunks; chunk c draws from its own generator
// seeded by (seed, c), so results do not depend on the thread count.
EstimateReport EstimateSurvival(int n, int k, long long trials, uint64_t seed,
                                ClauseSampler sampler = ClauseSampler::kUniform,
                                int threads = 0);
// Rate at which ~R_i is not made true, i uniform in [n].
EstimateReport EstimatePerLiteral(int n, long long trials, uint64_t seed,
                                  int threads = 0);

}  // namespace pres

#endif  // PRES_RESTRICT_H_
