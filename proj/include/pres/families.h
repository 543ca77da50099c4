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

// Generators for the induction and least-number principle families, the
// PST 2-clause system, the k-pigeon variant of PHP, the padding transform
// and the parameterized axiom schema.

#ifndef PRES_FAMILIES_H_
#define PRES_FAMILIES_H_

#include <optional>
#include <string>
#include <vector>

#include "pres/core.h"

namespace pres {

enum class Family { IP, RIP, RVIP, RVIPr, RLNP, SigmaPST, PHP, SigmaPrime };

std::string FamilyName(Family family);
// Case-insensitive; accepts "rvip-r" and "sigma-pst" style spellings too.
Family ParseFamily(std::string_view name);

struct FamilySpec {
  Family family = Family::IP;
  int n = 2;
  std::optional<int> r;  // RVIPr only.
  std::optional<int> k;  // PHP and SigmaPrime; stored on the formula if set.
  // RLNP: emit the selector axiom ~S_ij | ~R_j | ~L_ij exactly as printed
  // (satisfiable). RVIP/RVIPr: keep the successor axioms for i = n, which
  // are empty disjunctions. PHP: third schema over pigeons [k+1].
  bool as_printed = false;
  // SigmaPrime only: the family that gets padded.
  Family base = Family::IP;
};

// Throws ParameterError when the parameters are invalid for the family.
Formula Generate(const FamilySpec& spec);

// Closed-form clause and variable counts, computed from the schemas.
struct SchemaCounts {
  long long vars = 0;
  long long clauses = 0;
};
SchemaCounts ExpectedCounts(const FamilySpec& spec);

// Pads every clause with a fresh A and appends ~A | B_i | Bp_i for i in
// [k+1]. Works for any width; the new clauses are 1-clauses.
Formula SigmaPrime(const Formula& f, int k);

// The clauses ~x_{i1} | ... | ~x_{i(k+1)} over a variable set, enumerated
// lazily in lexicographic order of the chosen subsets.
class ParamAxioms {
 public:
  ParamAxioms(std::vector<VarId> vars, int k);

  // Advances to the next clause; false when exhausted.
  bool Next(JClause* clause);
  void Reset();

  // True iff `clause` is a parameterized axiom for this k over `vars`
  // (pass an empty span to accept any variable id).
  static bool IsMember(const JClause& clause, int k,
                       std::span<const VarId> vars = {});
  // The variable set of a parameterized clause, or nullopt.
  static std::optional<std::vector<VarId>> VarsOf(const JClause& clause);

 private:
  std::vector<VarId> vars_;
  int size_;
  std::vector<int> index_;
  bool done_ = false;
};

}  // namespace pres

#endif  // PRES_FAMILIES_H_
