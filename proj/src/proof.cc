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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pres/search.h"

namespace pres {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

struct LineError {
  Failure failure;
  std::string reason;
};

// Merges two terms into one conjunction; nullopt if they clash.
std::optional<Term> MergeTerms(const Term& a, const Term& b) {
  std::set<Literal> lits(a.begin(), a.end());
  lits.insert(b.begin(), b.end());
  Term merged(lits.begin(), lits.end());
  for (size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].var == merged[i - 1].var) return std::nullopt;
  }
  return merged;
}

bool ValidTerm(const Term& t) {
  if (t.empty()) return false;
  for (size_t i = 1; i < t.size(); ++i) {
    if (!(t[i - 1] < t[i]) || t[i].var == t[i - 1].var) return false;
  }
  return true;
}

std::string Show(const Term& t) { return "(" + TermToString(t) + ")"; }

// Computes the clause a justification yields. Premise clauses are looked up
// through `premise`, which has already validated ordering.
template <class PremiseFn>
JClause Derive(const Justification& just, const Proof& proof,
               const Formula& f, PremiseFn premise) {
  auto width_ok = [&](const Term& t) {
    if (static_cast<int>(t.size()) > proof.j) {
      throw LineError{Failure::kWidth,
                      "width " + std::to_string(t.size()) + " > j=" +
                          std::to_string(proof.j)};
    }
  };
  return std::visit(
      Overloaded{
          [&](const rule::Axiom& r) -> JClause {
            if (r.index < 0 || r.index >= f.num_clauses()) {
              throw LineError{Failure::kMalformed,
                              "axiom index " + std::to_string(r.index) +
                                  " out of range"};
            }
            return f.clauses()[r.index];
          },
          [&](const rule::ParamAxiom& r) -> JClause {
            if (!proof.k) {
              throw LineError{Failure::kParamAxiom,
                              "parameterized axiom in a proof without k"};
            }
            std::set<VarId> vars(r.vars.begin(), r.vars.end());
            if (vars.size() != r.vars.size() ||
                static_cast<int>(vars.size()) != *proof.k + 1) {
              throw LineError{Failure::kParamAxiom,
                              "parameterized axiom needs k+1=" +
                                  std::to_string(*proof.k + 1) +
                                  " distinct variables"};
            }
            std::vector<Literal> lits;
            for (VarId v : vars) {
              if (v < 1 || v > f.num_vars()) {
                throw LineError{Failure::kParamAxiom,
                                "unknown variable " + std::to_string(v)};
              }
              lits.push_back({v, false});
            }
            return JClause::FromLiterals(lits);
          },
          [&](const rule::ExpandedAxiom& r) -> JClause {
            if (proof.j >= f.j()) {
              throw LineError{Failure::kRuleNotAllowed,
                              "expanded axiom needs proof j below formula j"};
            }
            if (r.index < 0 || r.index >= f.num_clauses()) {
              throw LineError{Failure::kMalformed, "axiom index out of range"};
            }
            const JClause& ax = f.clauses()[r.index];
            if (r.choice.size() != ax.terms().size()) {
              throw LineError{Failure::kAxiomMismatch,
                              "expansion must pick one literal per term"};
            }
            for (size_t i = 0; i < r.choice.size(); ++i) {
              const Term& t = ax.terms()[i];
              if (std::find(t.begin(), t.end(), r.choice[i]) == t.end()) {
                throw LineError{Failure::kAxiomMismatch,
                                "literal " +
                                    std::to_string(r.choice[i].ToInt()) +
                                    " is not in term " + Show(t)};
              }
            }
            return JClause::FromLiterals(r.choice);
          },
          [&](const rule::AndIntro& r) -> JClause {
            const JClause& c1 = premise(r.premise1);
            const JClause& c2 = premise(r.premise2);
            if (!c1.Contains(r.term1) || !c2.Contains(r.term2)) {
              throw LineError{Failure::kTermMissing,
                              "and-introduction term not in its premise"};
            }
            auto merged = MergeTerms(r.term1, r.term2);
            if (!merged) {
              throw LineError{Failure::kConclusion,
                              "and-introduction of clashing terms"};
            }
            width_ok(*merged);
            return With(Union(Without(c1, {&r.term1, 1}),
                              Without(c2, {&r.term2, 1})),
                        *merged);
          },
          [&](const rule::Cut& r) -> JClause {
            const JClause& c1 = premise(r.premise1);
            const JClause& c2 = premise(r.premise2);
            std::set<Literal> pivots(r.pivots.begin(), r.pivots.end());
            if (pivots.empty() || pivots.size() != r.pivots.size()) {
              throw LineError{Failure::kPivotMismatch,
                              "cut needs distinct, non-empty pivots"};
            }
            std::vector<Term> singles;
            std::vector<Literal> negated;
            for (Literal l : pivots) {
              singles.push_back({l});
              negated.push_back(l.Negated());
              if (!c1.Contains(singles.back())) {
                throw LineError{Failure::kPivotMismatch,
                                "pivot " + std::to_string(l.ToInt()) +
                                    " missing from first premise"};
              }
            }
            std::sort(negated.begin(), negated.end());
            for (size_t i = 1; i < negated.size(); ++i) {
              if (negated[i].var == negated[i - 1].var) {
                throw LineError{Failure::kPivotMismatch,
                                "pivots mention a variable twice"};
              }
            }
            Term conj = negated;
            if (!c2.Contains(conj)) {
              throw LineError{Failure::kPivotMismatch,
                              "second premise lacks the term " + Show(conj)};
            }
            return Union(Without(c1, singles), Without(c2, {&conj, 1}));
          },
          [&](const rule::WeakenAdd& r) -> JClause {
            if (!ValidTerm(r.term)) {
              throw LineError{Failure::kMalformed, "malformed term"};
            }
            width_ok(r.term);
            return With(premise(r.premise), r.term);
          },
          [&](const rule::WeakenShrink& r) -> JClause {
            const JClause& c = premise(r.premise);
            if (r.term_index < 0 || r.term_index >= c.size()) {
              throw LineError{Failure::kMalformed, "term index out of range"};
            }
            const Term& from = c.terms()[r.term_index];
            if (!ValidTerm(r.kept) ||
                !std::includes(from.begin(), from.end(), r.kept.begin(),
                               r.kept.end())) {
              throw LineError{Failure::kTermMissing,
                              "kept literals are not a non-empty subset of " +
                                  Show(from)};
            }
            return With(Without(c, {&from, 1}), r.kept);
          },
      },
      just);
}

}  // namespace

std::string RuleName(const Justification& just) {
  return std::visit(
      Overloaded{
          [](const rule::Axiom&) { return std::string("axiom"); },
          [](const rule::ParamAxiom&) { return std::string("param_axiom"); },
          [](const rule::ExpandedAxiom&) {
            return std::string("expanded_axiom");
          },
          [](const rule::AndIntro&) { return std::string("and_intro"); },
          [](const rule::Cut&) { return std::string("cut"); },
          [](const rule::WeakenAdd&) { return std::string("weaken_add"); },
          [](const rule::WeakenShrink&) {
            return std::string("weaken_shrink");
          },
      },
      just);
}

std::vector<int> Premises(const Justification& just) {
  return std::visit(
      Overloaded{
          [](const rule::AndIntro& r) {
            return std::vector<int>{r.premise1, r.premise2};
          },
          [](const rule::Cut& r) {
            return std::vector<int>{r.premise1, r.premise2};
          },
          [](const rule::WeakenAdd& r) { return std::vector<int>{r.premise}; },
          [](const rule::WeakenShrink& r) {
            return std::vector<int>{r.premise};
          },
          [](const auto&) { return std::vector<int>{}; },
      },
      just);
}

std::string FailureName(Failure f) {
  switch (f) {
    case Failure::kNone: return "none";
    case Failure::kMalformed: return "malformed";
    case Failure::kPremiseOrder: return "premise-order";
    case Failure::kWidth: return "width";
    case Failure::kAxiomMismatch: return "axiom-mismatch";
    case Failure::kParamAxiom: return "param-axiom";
    case Failure::kRuleNotAllowed: return "rule-not-allowed";
    case Failure::kTermMissing: return "term-missing";
    case Failure::kPivotMismatch: return "pivot-mismatch";
    case Failure::kConclusion: return "conclusion-mismatch";
    case Failure::kTreeViolation: return "tree-violation";
    case Failure::kFinalClause: return "final-clause";
  }
  return "?";
}

CheckReport Check(const Proof& proof, const Formula& formula) {
  CheckReport report;
  auto fail = [&](int line, Failure failure, std::string reason) {
    report.ok = false;
    report.failure = failure;
    report.failure_line = line;
    report.reason = std::move(reason);
    return report;
  };
  if (proof.lines.empty()) return fail(0, Failure::kMalformed, "empty proof");
  if (proof.j < 1) return fail(0, Failure::kMalformed, "j must be >= 1");

  std::map<int, int> position;  // id -> index in proof.lines
  std::map<int, int> uses;
  int prev_id = 0;
  for (size_t i = 0; i < proof.lines.size(); ++i) {
    const ProofLine& line = proof.lines[i];
    if (line.id <= prev_id) {
      return fail(line.id, Failure::kMalformed,
                  "line ids must be positive and strictly increasing");
    }
    prev_id = line.id;
    auto premise = [&](int id) -> const JClause& {
      auto it = position.find(id);
      if (id >= line.id) {
        throw LineError{Failure::kPremiseOrder,
                        "premise " + std::to_string(id) +
                            " is not an earlier line"};
      }
      if (it == position.end()) {
        throw LineError{Failure::kMalformed,
                        "premise " + std::to_string(id) + " does not exist"};
      }
      return proof.lines[it->second].clause;
    };
    try {
      for (const Term& t : line.clause.terms()) {
        if (static_cast<int>(t.size()) > proof.j) {
          throw LineError{Failure::kWidth,
                          "width " + std::to_string(t.size()) + " > j=" +
                              std::to_string(proof.j)};
        }
        for (Literal l : t) {
          if (l.var < 1 || l.var > formula.num_vars()) {
            throw LineError{Failure::kMalformed,
                            "unknown variable " + std::to_string(l.var)};
          }
        }
      }
      JClause derived = Derive(line.just, proof, formula, premise);
      if (derived != line.clause) {
        Failure kind = std::holds_alternative<rule::Axiom>(line.just) ||
                               std::holds_alternative<rule::ExpandedAxiom>(
                                   line.just)
                           ? Failure::kAxiomMismatch
                           : Failure::kConclusion;
        throw LineError{kind, "stated clause " + ClauseToString(line.clause) +
                                  " but rule yields " +
                                  ClauseToString(derived)};
      }
      for (int p : Premises(line.just)) {
        if (++uses[p] > 1 && proof.mode == ProofMode::kTree) {
          throw LineError{Failure::kTreeViolation,
                          "line " + std::to_string(p) +
                              " used twice in a tree proof"};
        }
      }
    } catch (const LineError& e) {
      return fail(line.id, e.failure, e.reason);
    }
    position[line.id] = static_cast<int>(i);
    report.size_literal_occurrences += line.clause.LiteralCount();
    if (std::holds_alternative<rule::ParamAxiom>(line.just)) {
      ++report.param_axioms_used;
    }
  }
  if (!proof.lines.back().clause.empty()) {
    return fail(proof.lines.back().id, Failure::kFinalClause,
                "last line is not the empty clause");
  }
  report.ok = true;
  report.size_lines = static_cast<long long>(proof.lines.size());
  return report;
}

bool SoundnessProbe(const Proof& proof, const Formula& formula, int max_vars) {
  if (formula.num_vars() > max_vars) {
    throw ParameterError("soundness probe refused: " +
                         std::to_string(formula.num_vars()) +
                         " variables exceed the limit of " +
                         std::to_string(max_vars));
  }
  Formula augmented = formula;
  augmented.set_j(std::max(formula.j(), 1));
  for (const ProofLine& line : proof.lines) {
    if (const auto* r = std::get_if<rule::ParamAxiom>(&line.just)) {
      std::vector<Literal> lits;
      for (VarId v : r->vars) lits.push_back({v, false});
      augmented.AddClause(JClause::FromLiterals(lits));
    }
  }
  return !FindModel(augmented, {.max_vars = max_vars}).has_value();
}

ProofWriter::ProofWriter(ProofMode mode, int j, std::optional<int> k) {
  proof_.mode = mode;
  proof_.j = j;
  proof_.k = k;
}

int ProofWriter::Add(JClause clause, Justification just) {
  int id = last() + 1;
  proof_.lines.push_back({id, std::move(clause), std::move(just)});
  return id;
}

int ProofWriter::Axiom(const Formula& f, int index) {
  return Add(f.clauses().at(index), rule::Axiom{index});
}

int ProofWriter::ParamAxiom(std::vector<VarId> vars) {
  std::sort(vars.begin(), vars.end());
  std::vector<Literal> lits;
  for (VarId v : vars) lits.push_back({v, false});
  return Add(JClause::FromLiterals(lits), rule::ParamAxiom{std::move(vars)});
}

int ProofWriter::ExpandedAxiom(const Formula& f, int index,
                               std::vector<Literal> choice) {
  (void)f;
  JClause c = JClause::FromLiterals(choice);
  return Add(std::move(c), rule::ExpandedAxiom{index, std::move(choice)});
}

int ProofWriter::AndIntro(int p1, const Term& t1, int p2, const Term& t2) {
  auto merged = MergeTerms(t1, t2);
  if (!merged) throw ParameterError("and-introduction of clashing terms");
  JClause c = With(
      Union(Without(clause(p1), {&t1, 1}), Without(clause(p2), {&t2, 1})),
      *merged);
  return Add(std::move(c), rule::AndIntro{p1, p2, t1, t2});
}

int ProofWriter::Cut(int p1, int p2, std::vector<Literal> pivots) {
  std::sort(pivots.begin(), pivots.end());
  std::vector<Term> singles;
  Term conj;
  for (Literal l : pivots) {
    singles.push_back({l});
    conj.push_back(l.Negated());
  }
  std::sort(conj.begin(), conj.end());
  JClause c = Union(Without(clause(p1), singles), Without(clause(p2), {&conj, 1}));
  return Add(std::move(c), rule::Cut{p1, p2, std::move(pivots)});
}

int ProofWriter::WeakenAdd(int p, const Term& t) {
  return Add(With(clause(p), t), rule::WeakenAdd{p, t});
}

int ProofWriter::WeakenShrink(int p, const Term& from, const Term& kept) {
  int index = clause(p).IndexOf(from);
  if (index < 0) throw ParameterError("weaken_shrink: term not in premise");
  return Add(With(Without(clause(p), {&from, 1}), kept),
             rule::WeakenShrink{p, index, kept});
}

namespace {

nlohmann::json TermJson(const Term& t) {
  auto a = nlohmann::json::array();
  for (Literal l : t) a.push_back(l.ToInt());
  return a;
}

Term TermFromJson(const nlohmann::json& j) {
  std::vector<Literal> lits;
  for (int x : j.get<std::vector<int>>()) {
    if (x == 0) throw FormatError("literal 0 in proof");
    lits.push_back(Literal::FromInt(x));
  }
  return MakeTerm(std::move(lits));
}

nlohmann::ordered_json ArgsJson(const Justification& just) {
  return std::visit(
      Overloaded{
          [](const rule::Axiom& r) {
            return nlohmann::ordered_json{{"index", r.index}};
          },
          [](const rule::ParamAxiom& r) {
            return nlohmann::ordered_json{{"vars", r.vars}};
          },
          [](const rule::ExpandedAxiom& r) {
            std::vector<int> choice;
            for (Literal l : r.choice) choice.push_back(l.ToInt());
            return nlohmann::ordered_json{{"index", r.index},
                                          {"choice", choice}};
          },
          [](const rule::AndIntro& r) {
            return nlohmann::ordered_json{
                {"premises", {r.premise1, r.premise2}},
                {"terms", {TermJson(r.term1), TermJson(r.term2)}}};
          },
          [](const rule::Cut& r) {
            std::vector<int> pivots;
            for (Literal l : r.pivots) pivots.push_back(l.ToInt());
            return nlohmann::ordered_json{
                {"premises", {r.premise1, r.premise2}}, {"pivots", pivots}};
          },
          [](const rule::WeakenAdd& r) {
            return nlohmann::ordered_json{{"premise", r.premise},
                                          {"term", TermJson(r.term)}};
          },
          [](const rule::WeakenShrink& r) {
            return nlohmann::ordered_json{{"premise", r.premise},
                                          {"term_index", r.term_index},
                                          {"kept", TermJson(r.kept)}};
          },
      },
      just);
}

Justification JustFromJson(const std::string& rule_name,
                           const nlohmann::json& a) {
  if (rule_name == "axiom") return rule::Axiom{a.at("index").get<int>()};
  if (rule_name == "param_axiom") {
    return rule::ParamAxiom{a.at("vars").get<std::vector<VarId>>()};
  }
  if (rule_name == "expanded_axiom") {
    std::vector<Literal> choice;
    for (int x : a.at("choice").get<std::vector<int>>()) {
      choice.push_back(Literal::FromInt(x));
    }
    return rule::ExpandedAxiom{a.at("index").get<int>(), std::move(choice)};
  }
  if (rule_name == "and_intro") {
    return rule::AndIntro{a.at("premises").at(0).get<int>(),
                          a.at("premises").at(1).get<int>(),
                          TermFromJson(a.at("terms").at(0)),
                          TermFromJson(a.at("terms").at(1))};
  }
  if (rule_name == "cut") {
    std::vector<Literal> pivots;
    for (int x : a.at("pivots").get<std::vector<int>>()) {
      pivots.push_back(Literal::FromInt(x));
    }
    return rule::Cut{a.at("premises").at(0).get<int>(),
                     a.at("premises").at(1).get<int>(), std::move(pivots)};
  }
  if (rule_name == "weaken_add") {
    return rule::WeakenAdd{a.at("premise").get<int>(),
                           TermFromJson(a.at("term"))};
  }
  if (rule_name == "weaken_shrink") {
    return rule::WeakenShrink{a.at("premise").get<int>(),
                              a.at("term_index").get<int>(),
                              TermFromJson(a.at("kept"))};
  }
  throw FormatError("unknown rule '" + rule_name + "'");
}

}  // namespace

std::string SerializeProof(const Proof& proof) {
  std::ostringstream os;
  os << "{\"mode\": \"" << (proof.mode == ProofMode::kTree ? "tree" : "dag")
     << "\", \"j\": " << proof.j;
  if (proof.k) os << ", \"k\": " << *proof.k;
  os << ", \"lines\": [\n";
  for (size_t i = 0; i < proof.lines.size(); ++i) {
    const ProofLine& line = proof.lines[i];
    nlohmann::ordered_json j;
    j["id"] = line.id;
    auto clause = nlohmann::json::array();
    for (const Term& t : line.clause.terms()) clause.push_back(TermJson(t));
    j["clause"] = clause;
    j["rule"] = RuleName(line.just);
    j["args"] = ArgsJson(line.just);
    os << j.dump() << (i + 1 < proof.lines.size() ? ",\n" : "\n");
  }
  os << "]}\n";
  return os.str();
}

Proof ParseProof(std::string_view text) {
  Proof proof;
  try {
    auto doc = nlohmann::json::parse(text);
    std::string mode = doc.at("mode").get<std::string>();
    if (mode != "tree" && mode != "dag") {
      throw FormatError("mode must be 'tree' or 'dag'");
    }
    proof.mode = mode == "tree" ? ProofMode::kTree : ProofMode::kDag;
    proof.j = doc.at("j").get<int>();
    if (doc.contains("k")) proof.k = doc.at("k").get<int>();
    for (const auto& line : doc.at("lines")) {
      std::vector<Term> terms;
      for (const auto& t : line.at("clause")) terms.push_back(TermFromJson(t));
      proof.lines.push_back(
          {line.at("id").get<int>(), JClause(std::move(terms)),
           JustFromJson(line.at("rule").get<std::string>(), line.at("args"))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("proof file: ") + e.what());
  }
  return proof;
}

}  // namespace pres
