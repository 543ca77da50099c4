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

// The j-clause data model shared by every part of the library.
//
// A j-clause is a disjunction of terms, each term a conjunction of at most j
// literals. Ordinary CNF clauses are 1-clauses whose terms are all singletons.
// Variables are dense 1-based integers; each formula carries a symbol table
// that maps them back to structured names such as S_{1,2,3,4} or R^2_5.

#ifndef PRES_CORE_H_
#define PRES_CORE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pres {

// Thrown for malformed inputs: unknown variables, width violations, bad
// headers. `line()` is 0 when the error does not come from a text file.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Thrown when an operation's parameters are outside its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VarKind : uint8_t { R, P, S, L, T, A, B, Bp, X, p, q };

std::string_view VarKindName(VarKind kind);

struct VarSymbol {
  VarKind kind = VarKind::X;
  std::vector<int> coords;
  int superscript = 0;  // 0 when absent.

  // "S_1,2,3,4", "R^2_5", "A", "Bp_3".
  std::string Name() const;
  static VarSymbol Parse(std::string_view name);

  friend bool operator==(const VarSymbol&, const VarSymbol&) = default;
  friend auto operator<=>(const VarSymbol&, const VarSymbol&) = default;
};

using VarId = int;

struct Literal {
  VarId var = 0;
  bool positive = true;

  Literal Negated() const { return {var, !positive}; }
  // DIMACS-style signed integer.
  int ToInt() const { return positive ? var : -var; }
  static Literal FromInt(int lit) { return {lit > 0 ? lit : -lit, lit > 0}; }

  // Ordered by variable, negative before positive.
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    return a.positive <=> b.positive;
  }
};

// A conjunction of literals. Kept sorted; a variable occurs at most once.
using Term = std::vector<Literal>;

// Sorts and validates a term. Throws FormatError on an empty term or a
// variable that occurs twice.
Term MakeTerm(std::vector<Literal> literals);

// A disjunction of terms, canonically sorted and deduplicated. The empty
// clause has no terms.
class JClause {
 public:
  JClause() = default;
  explicit JClause(std::vector<Term> terms);
  static JClause FromLiterals(std::span<const Literal> literals);
  static JClause FromInts(std::initializer_list<int> literals);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int size() const { return static_cast<int>(terms_.size()); }
  // Largest term size; 0 for the empty clause.
  int Width() const;
  int LiteralCount() const;
  bool Contains(const Term& term) const;
  // -1 if absent.
  int IndexOf(const Term& term) const;

  friend bool operator==(const JClause&, const JClause&) = default;
  friend auto operator<=>(const JClause&, const JClause&) = default;

 private:
  std::vector<Term> terms_;
};

// Set operations used by the inference rules.
JClause Union(const JClause& a, const JClause& b);
JClause Without(const JClause& c, std::span<const Term> removed);
JClause With(const JClause& c, const Term& added);

enum class Truth : uint8_t { kFalse, kTrue, kUndetermined };

// A partial map from variables to truth values over ids 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars) : values_(num_vars + 1, kUnset) {}

  int num_vars() const { return static_cast<int>(values_.size()) - 1; }
  void Set(VarId var, bool value);
  void Unset(VarId var);
  std::optional<bool> Get(VarId var) const;
  bool IsSet(VarId var) const { return Get(var).has_value(); }
  // Truth of a literal; kUndetermined if the variable is unset.
  Truth Value(Literal lit) const;
  // Number of variables mapped to true.
  int Weight() const;
  int NumAssigned() const;

 private:
  static constexpr int8_t kUnset = -1;
  void CheckVar(VarId var) const;
  std::vector<int8_t> values_;
};

Truth EvalTerm(const Assignment& a, const Term& t);
Truth EvalClause(const Assignment& a, const JClause& c);

struct FamilyMeta {
  std::string family;
  int n = 0;
  int r = 0;  // 0 when absent.
  friend bool operator==(const FamilyMeta&, const FamilyMeta&) = default;
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(int j) : j_(j) {}

  int j() const { return j_; }
  void set_j(int j) { j_ = j; }
  std::optional<int> k() const { return k_; }
  void set_k(std::optional<int> k) { k_ = k; }
  const std::optional<FamilyMeta>& meta() const { return meta_; }
  void set_meta(std::optional<FamilyMeta> meta) { meta_ = std::move(meta); }

  int num_vars() const { return static_cast<int>(symbols_.size()); }
  const VarSymbol& symbol(VarId var) const { return symbols_.at(var - 1); }
  const std::vector<VarSymbol>& symbols() const { return symbols_; }
  // Registers a new variable and returns its id. Names must be unique.
  VarId AddVar(VarSymbol symbol);
  std::optional<VarId> Find(const VarSymbol& symbol) const;
  // Throws FormatError if absent.
  VarId Var(const VarSymbol& symbol) const;

  const std::vector<JClause>& clauses() const { return clauses_; }
  int num_clauses() const { return static_cast<int>(clauses_.size()); }
  // Validates variable ids and width.
  void AddClause(JClause clause);
  // Index of the first clause equal to `clause`, if any.
  std::optional<int> FindClause(const JClause& clause) const;

  Truth Eval(const Assignment& a) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.j_ == b.j_ && a.k_ == b.k_ && a.meta_ == b.meta_ &&
           a.symbols_ == b.symbols_ && a.clauses_ == b.clauses_;
  }

 private:
  int j_ = 1;
  std::optional<int> k_;
  std::optional<FamilyMeta> meta_;
  std::vector<VarSymbol> symbols_;
  std::map<VarSymbol, VarId> index_;
  std::vector<JClause> clauses_;
  std::map<JClause, int> clause_index_;
};

// Removes satisfied clauses, deletes falsified terms and satisfied literals,
// and renumbers the unassigned variables densely (symbols are kept). A clause
// whose terms are all falsified becomes the empty clause.
Formula RestrictFormula(const Formula& f, const Assignment& a);

// Text format "jcnf".
//   c family <name> <n> [<r>]
//   p jcnf <nvars> <nclauses> <j> [<k>]
//   c var <id> <name>
//   3&-4 5 0
std::string SerializeJcnf(const Formula& f);
Formula ParseJcnf(std::string_view text);

// Structured (JSON) format with the same content.
std::string SerializeStructured(const Formula& f);
Formula ParseStructured(std::string_view text);

// Dispatches on the first non-blank character ('{' means structured).
Formula ParseFormula(std::string_view text);

// "1&-2 3" style rendering used by both formats and diagnostics.
std::string TermToString(const Term& t);
std::string ClauseToString(const JClause& c);
// Same, with variable names.
std::string ClauseToString(const JClause& c, const Formula& f);

}  // namespace pres

#endif  // PRES_CORE_H_
