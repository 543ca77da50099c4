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

// Prover-Adversary games on RVIP_n and RVIP^r_n. The adversary keeps a
// record of conceded variable values, the busy elements and the source
// pair, and answers each j-disjunction either forced or as a free choice.

#ifndef PRES_GAMES_H_
#define PRES_GAMES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pres/core.h"
#include "pres/decision_tree.h"

namespace pres {

// Raised when a prover asks about a variable the record already decides.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  int n = 4;
  int k = 2;
  std::optional<int> r;  // Unset: RVIP_n. Set: RVIP^r_n.
  // Do not count the conceded unit facts R^s_1, P_{1,1}, R^s_n towards the
  // k-budget of the survival invariant. Parameterized axioms still see them.
  // Off by default: with r >= 2 the 2r+1 unit trues alone can reach k+1.
  bool exempt_units = false;
};

struct Answer {
  enum class Kind { kForced, kFree };
  Kind kind = Kind::kForced;
  bool value = false;  // Meaningful for kForced.
  bool free() const { return kind == Kind::kFree; }
  static Answer Forced(bool v) { return {Kind::kForced, v}; }
  static Answer Free() { return {Kind::kFree, false}; }
};

struct Falsification {
  std::optional<int> clause;  // Axiom index, or...
  bool param = false;         // ...a parameterized axiom.
};

class RvipAdversary {
 public:
  explicit RvipAdversary(const GameConfig& config);

  const GameConfig& config() const { return config_; }
  const Formula& formula() const { return shared_->formula; }
  const Assignment& record() const { return record_; }
  int true_count() const { return true_count_; }
  // true_count minus the conceded unit trues when exempt_units is set.
  int counted_trues() const;
  int free_choices() const { return free_choices_; }
  std::vector<int> busy() const;
  std::pair<int, int> source() const { return source_; }

  // The strategy's answer to l_1 | ... | l_t. Throws ProtocolError if some
  // variable of the query is already decided.
  Answer Ask(const std::vector<Literal>& query) const;
  // Records the answer `value` to `query`, applying the strategy's side
  // effects. A free answer counts as one free choice.
  void Commit(const std::vector<Literal>& query, bool value);
  // Ask followed by Commit, resolving a free answer with `choice`.
  Answer Play(const std::vector<Literal>& query, bool choice);

  // Sets a variable directly, with bookkeeping but no strategy logic.
  void Assume(VarId var, bool value);

  // First axiom all of whose terms are falsified by the record, else a
  // parameterized axiom if more than k variables are true.
  std::optional<Falsification> Falsified() const { return falsified_; }
  // Whether the survival invariant holds now: k trues or n-k free choices.
  bool InvariantHolds() const;

  // Recomputes busy and source from the record and compares them with the
  // incremental values. Throws std::logic_error on a mismatch.
  void CheckConsistency() const;

 private:
  enum class Kind : uint8_t { kR, kP, kS };
  struct VarInfo {
    Kind kind;
    int s = 0;  // R superscript.
    int i = 0, j = 0, l = 0, m = 0;
  };

  struct Shared {
    Formula formula;
    std::vector<VarInfo> info;
    std::vector<std::vector<int>> occurs;   // Clause indices per variable.
    std::vector<std::vector<VarId>> group;  // R^s_i and P_{i,j} per element.
    std::vector<std::vector<VarId>> p_var;  // P_{i,j} by coordinates.
  };
  static std::shared_ptr<const Shared> MakeShared(const GameConfig& config);

  Answer Policy(VarId v) const;
  Answer RawPolicy(VarId v) const;
  bool WouldFalsify(VarId v, bool value) const;
  bool IsUnitTrue(VarId v) const;
  int NextNonBusy(int i) const;
  void Set(VarId v, bool value);
  void UpdateFalsified(VarId v);
  bool ClauseFalsified(int index) const;

  GameConfig config_;
  int r_ = 1;
  std::shared_ptr<const Shared> shared_;
  Assignment record_;
  int true_count_ = 0;
  int unit_trues_ = 0;
  int free_choices_ = 0;
  std::vector<char> busy_;
  std::vector<int> r_true_;     // Per element: number of R^s_i conceded true.
  std::vector<int> p_true_;     // Per element: number of P_{i,j} conceded true.
  std::pair<int, int> source_ = {1, 1};
  std::optional<Falsification> falsified_;
};

struct Move {
  std::vector<Literal> query;
  Answer answer;
  bool value = false;
};

struct Transcript {
  std::vector<Move> moves;
  std::optional<Falsification> falsified;
  int true_count = 0;
  int counted_trues = 0;
  int free_choices = 0;
  bool invariant_ok = true;  // Evaluated at the first falsification.
  bool truncated = false;
};

std::string TranscriptToJson(const Transcript& t, const Formula& f);

// Uniformly random undecided variable each round; free choices by a fair
// coin. Deterministic in `seed`.
Transcript PlayRandom(const GameConfig& config, uint64_t seed,
                      int max_moves = 1 << 20);

// Walks `tree`, asking only the undecided part of each query and resolving
// free answers with `free_value`.
Transcript PlayScripted(const GameConfig& config, const DecisionTree& tree,
                        bool free_value);

struct ExhaustiveStats {
  long long leaves = 0;
  long long violations = 0;
  int max_free_choices = 0;
  bool truncated = false;
  std::optional<Transcript> first_violation;
};

// Enumerates every resolution of the free choices for a prover that always
// asks the first undecided variable of `order`. Stops after `max_leaves`.
ExhaustiveStats PlayExhaustive(const GameConfig& config,
                               const std::vector<VarId>& order,
                               long long max_leaves = 50'000'000);

// Query orders used by the exhaustive prover: lexicographic by id, reversed,
// by element descending, and seeded shuffles.
std::vector<std::vector<VarId>> StandardOrders(const Formula& f, int shuffles,
                                               uint64_t seed);

// T(0,0) for T(p,q) = T(p+1,q) + T(p,q+1) + 1 with T = 0 once p >= k or
// q >= n-k.
long long RecurrenceT(int n, int k);
double LowerBound(int n, int k);

}  // namespace pres

#endif  // PRES_GAMES_H_
