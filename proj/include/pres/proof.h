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

// Res(j) refutations and their checker.
//
// A proof is a numbered list of j-clauses, each justified by one rule:
//
//   Axiom          a clause of the input formula, verbatim.
//   ParamAxiom     ~x_1 | ... | ~x_{k+1} for distinct variables (only when
//                  the proof carries a parameter k).
//   ExpandedAxiom  a 1-clause obtained from a wider input clause by picking
//                  one literal from each of its terms (distributivity).
//   AndIntro       from P | T1 and Q | T2 derive P | Q | (T1 & T2), with
//                  |T1 u T2| <= j.
//   Cut            from P | l_1 | ... | l_s and Q | (~l_1 & ... & ~l_s)
//                  derive P | Q.
//   WeakenAdd      from P derive P | T, |T| <= j.
//   WeakenShrink   from P | T derive P | T' for a non-empty T' inside T.
//
// In tree mode every line may be used as a premise at most once.

#ifndef PRES_PROOF_H_
#define PRES_PROOF_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pres/core.h"

namespace pres {

namespace rule {
struct Axiom {
  int index = 0;  // 0-based clause index in the formula.
};
struct ParamAxiom {
  std::vector<VarId> vars;
};
struct ExpandedAxiom {
  int index = 0;
  std::vector<Literal> choice;  // One literal per term, in term order.
};
struct AndIntro {
  int premise1 = 0, premise2 = 0;
  Term term1, term2;
};
struct Cut {
  int premise1 = 0, premise2 = 0;
  std::vector<Literal> pivots;  // The l_i, as they occur in premise1.
};
struct WeakenAdd {
  int premise = 0;
  Term term;
};
struct WeakenShrink {
  int premise = 0;
  int term_index = 0;  // Index into the premise's canonical term list.
  Term kept;
};
}  // namespace rule

using Justification =
    std::variant<rule::Axiom, rule::ParamAxiom, rule::ExpandedAxiom,
                 rule::AndIntro, rule::Cut, rule::WeakenAdd,
                 rule::WeakenShrink>;

std::string RuleName(const Justification& just);
// Line ids this justification cites.
std::vector<int> Premises(const Justification& just);

struct ProofLine {
  int id = 0;
  JClause clause;
  Justification just;
};

enum class ProofMode { kTree, kDag };

struct Proof {
  ProofMode mode = ProofMode::kDag;
  int j = 1;
  std::optional<int> k;
  std::vector<ProofLine> lines;
};

enum class Failure {
  kNone,
  kMalformed,        // Unknown id, bad term index, empty proof.
  kPremiseOrder,     // Premise id not strictly smaller than the line id.
  kWidth,            // Term wider than j.
  kAxiomMismatch,    // Axiom/ExpandedAxiom does not match the formula.
  kParamAxiom,       // No k, wrong size, positive literal.
  kRuleNotAllowed,   // ExpandedAxiom when the proof's j covers the input.
  kTermMissing,      // A cited term is not in its premise.
  kPivotMismatch,    // Cut premises do not carry the pivots.
  kConclusion,       // Derived clause differs from the stated one.
  kTreeViolation,    // Premise reused in tree mode.
  kFinalClause,      // Last line is not the empty clause.
};

std::string FailureName(Failure f);

struct CheckReport {
  bool ok = false;
  long long size_lines = 0;
  long long size_literal_occurrences = 0;
  long long param_axioms_used = 0;
  Failure failure = Failure::kNone;
  int failure_line = 0;
  std::string reason;
};

CheckReport Check(const Proof& proof, const Formula& formula);

// Brute-force confirmation that the formula plus the parameterized axioms
// cited by `proof` is unsatisfiable. Throws ParameterError when the formula
// has more than `max_vars` variables.
bool SoundnessProbe(const Proof& proof, const Formula& formula,
                    int max_vars = 24);

// Line-by-line construction with automatic ids.
class ProofWriter {
 public:
  ProofWriter(ProofMode mode, int j, std::optional<int> k = std::nullopt);

  int Axiom(const Formula& f, int index);
  int ParamAxiom(std::vector<VarId> vars);
  int ExpandedAxiom(const Formula& f, int index, std::vector<Literal> choice);
  int AndIntro(int p1, const Term& t1, int p2, const Term& t2);
  int Cut(int p1, int p2, std::vector<Literal> pivots);
  int WeakenAdd(int p, const Term& t);
  int WeakenShrink(int p, const Term& from, const Term& kept);

  const JClause& clause(int id) const { return proof_.lines.at(id - 1).clause; }
  int last() const { return static_cast<int>(proof_.lines.size()); }
  const Proof& proof() const { return proof_; }
  Proof Release() { return std::move(proof_); }

 private:
  int Add(JClause clause, Justification just);
  Proof proof_;
};

// Structured proof file:
//   {"mode": "tree"|"dag", "j": 2, "k": 3,
//    "lines": [{"id": 1, "clause": [[1,-2],[3]], "rule": "cut",
//               "args": {...}}, ...]}
std::string SerializeProof(const Proof& proof);
Proof ParseProof(std::string_view text);

}  // namespace pres

#endif  // PRES_PROOF_H_
