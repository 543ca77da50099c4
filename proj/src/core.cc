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

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace pres {
namespace {

constexpr std::array<std::pair<VarKind, std::string_view>, 11> kKindNames = {{
    {VarKind::R, "R"},
    {VarKind::P, "P"},
    {VarKind::S, "S"},
    {VarKind::L, "L"},
    {VarKind::T, "T"},
    {VarKind::A, "A"},
    {VarKind::B, "B"},
    {VarKind::Bp, "Bp"},
    {VarKind::X, "X"},
    {VarKind::p, "p"},
    {VarKind::q, "q"},
}};

int ParseInt(std::string_view s, int line, std::string_view what) {
  int value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw FormatError("malformed " + std::string(what) + " '" +
                          std::string(s) + "'",
                      line);
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> Tokens(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Builds a formula from raw parts shared by both parsers.
Formula Assemble(int num_vars, int j, std::optional<int> k,
                 std::optional<FamilyMeta> meta,
                 const std::vector<std::string>& names,
                 std::vector<std::pair<int, std::vector<std::vector<int>>>>
                     clauses) {
  if (j < 1) throw FormatError("j must be at least 1");
  if (k && *k < 0) throw FormatError("k must be non-negative");
  Formula f(j);
  f.set_k(k);
  f.set_meta(std::move(meta));
  for (int v = 1; v <= num_vars; ++v) {
    const std::string& name = names[v - 1];
    VarSymbol sym = name.empty() ? VarSymbol{VarKind::X, {v}, 0}
                                 : VarSymbol::Parse(name);
    if (f.Find(sym)) throw FormatError("duplicate variable name " + name);
    f.AddVar(std::move(sym));
  }
  for (auto& [line, raw_terms] : clauses) {
    std::vector<Term> terms;
    for (const auto& raw : raw_terms) {
      if (static_cast<int>(raw.size()) > j) {
        throw FormatError("term width " + std::to_string(raw.size()) +
                              " exceeds j=" + std::to_string(j),
                          line);
      }
      std::vector<Literal> lits;
      for (int x : raw) {
        if (x == 0 || std::abs(x) > num_vars) {
          throw FormatError("literal " + std::to_string(x) +
                                " references an undeclared variable",
                            line);
        }
        lits.push_back(Literal::FromInt(x));
      }
      try {
        terms.push_back(MakeTerm(std::move(lits)));
      } catch (const FormatError& e) {
        throw FormatError(e.what(), line);
      }
    }
    f.AddClause(JClause(std::move(terms)));
  }
  return f;
}

}  // namespace

std::string_view VarKindName(VarKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string VarSymbol::Name() const {
  std::string out(VarKindName(kind));
  if (superscript > 0) out += "^" + std::to_string(superscript);
  for (size_t i = 0; i < coords.size(); ++i) {
    out += (i == 0 ? "_" : ",");
    out += std::to_string(coords[i]);
  }
  return out;
}

VarSymbol VarSymbol::Parse(std::string_view name) {
  size_t end = name.find_first_of("^_");
  std::string_view kind_name = name.substr(0, end);
  VarSymbol sym;
  bool found = false;
  for (const auto& [k, kn] : kKindNames) {
    if (kn == kind_name) {
      sym.kind = k;
      found = true;
    }
  }
  if (!found) throw FormatError("unknown variable kind in '" +
                                std::string(name) + "'");
  if (end == std::string_view::npos) return sym;
  std::string_view rest = name.substr(end);
  if (rest[0] == '^') {
    size_t underscore = rest.find('_');
    sym.superscript =
        ParseInt(rest.substr(1, underscore == std::string_view::npos
                                    ? std::string_view::npos
                                    : underscore - 1),
                 0, "superscript");
    if (sym.superscript < 1) throw FormatError("superscript must be >= 1");
    if (underscore == std::string_view::npos) return sym;
    rest = rest.substr(underscore);
  }
  for (std::string_view c : Split(rest.substr(1), ',')) {
    int v = ParseInt(c, 0, "coordinate");
    if (v < 1) throw FormatError("coordinates must be >= 1");
    sym.coords.push_back(v);
  }
  if (sym.coords.size() > 4) throw FormatError("at most 4 coordinates");
  return sym;
}

Term MakeTerm(std::vector<Literal> literals) {
  if (literals.empty()) throw FormatError("empty term");
  std::sort(literals.begin(), literals.end());
  for (size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].var == literals[i - 1].var) {
      throw FormatError("variable " + std::to_string(literals[i].var) +
                        " occurs twice in a term");
    }
  }
  return literals;
}

JClause::JClause(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (Term& t : terms_) t = MakeTerm(std::move(t));
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

JClause JClause::FromLiterals(std::span<const Literal> literals) {
  std::vector<Term> terms;
  for (Literal l : literals) terms.push_back({l});
  return JClause(std::move(terms));
}

JClause JClause::FromInts(std::initializer_list<int> literals) {
  std::vector<Term> terms;
  for (int l : literals) terms.push_back({Literal::FromInt(l)});
  return JClause(std::move(terms));
}

int JClause::Width() const {
  int w = 0;
  for (const Term& t : terms_) w = std::max(w, static_cast<int>(t.size()));
  return w;
}

int JClause::LiteralCount() const {
  int n = 0;
  for (const Term& t : terms_) n += static_cast<int>(t.size());
  return n;
}

bool JClause::Contains(const Term& term) const { return IndexOf(term) >= 0; }

int JClause::IndexOf(const Term& term) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return -1;
  return static_cast<int>(it - terms_.begin());
}

JClause Union(const JClause& a, const JClause& b) {
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return JClause(std::move(terms));
}

JClause Without(const JClause& c, std::span<const Term> removed) {
  std::vector<Term> terms;
  for (const Term& t : c.terms()) {
    if (std::find(removed.begin(), removed.end(), t) == removed.end()) {
      terms.push_back(t);
    }
  }
  return JClause(std::move(terms));
}

JClause With(const JClause& c, const Term& added) {
  std::vector<Term> terms = c.terms();
  terms.push_back(added);
  return JClause(std::move(terms));
}

void Assignment::CheckVar(VarId var) const {
  if (var < 1 || var > num_vars()) {
    throw FormatError("unknown variable id " + std::to_string(var));
  }
}

void Assignment::Set(VarId var, bool value) {
  CheckVar(var);
  values_[var] = value ? 1 : 0;
}

void Assignment::Unset(VarId var) {
  CheckVar(var);
  values_[var] = kUnset;
}

std::optional<bool> Assignment::Get(VarId var) const {
  CheckVar(var);
  if (values_[var] == kUnset) return std::nullopt;
  return values_[var] == 1;
}

Truth Assignment::Value(Literal lit) const {
  CheckVar(lit.var);
  int8_t v = values_[lit.var];
  if (v == kUnset) return Truth::kUndetermined;
  return (v == 1) == lit.positive ? Truth::kTrue : Truth::kFalse;
}

int Assignment::Weight() const {
  return static_cast<int>(std::count(values_.begin(), values_.end(), 1));
}

int Assignment::NumAssigned() const {
  return static_cast<int>(
      std::count_if(values_.begin() + (values_.empty() ? 0 : 1), values_.end(),
                    [](int8_t v) { return v != kUnset; }));
}

Truth EvalTerm(const Assignment& a, const Term& t) {
  Truth result = Truth::kTrue;
  for (Literal l : t) {
    Truth v = a.Value(l);
    if (v == Truth::kFalse) return Truth::kFalse;
    if (v == Truth::kUndetermined) result = Truth::kUndetermined;
  }
  return result;
}

Truth EvalClause(const Assignment& a, const JClause& c) {
  Truth result = Truth::kFalse;
  for (const Term& t : c.terms()) {
    Truth v = EvalTerm(a, t);
    if (v == Truth::kTrue) return Truth::kTrue;
    if (v == Truth::kUndetermined) result = Truth::kUndetermined;
  }
  return result;
}

VarId Formula::AddVar(VarSymbol symbol) {
  VarId id = num_vars() + 1;
  auto [it, inserted] = index_.emplace(symbol, id);
  if (!inserted) throw FormatError("duplicate variable " + symbol.Name());
  symbols_.push_back(std::move(symbol));
  return id;
}

std::optional<VarId> Formula::Find(const VarSymbol& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId Formula::Var(const VarSymbol& symbol) const {
  auto id = Find(symbol);
  if (!id) throw FormatError("no variable named " + symbol.Name());
  return *id;
}

void Formula::AddClause(JClause clause) {
  for (const Term& t : clause.terms()) {
    if (static_cast<int>(t.size()) > j_) {
      throw FormatError("term width " + std::to_string(t.size()) +
                        " exceeds j=" + std::to_string(j_));
    }
    for (Literal l : t) {
      if (l.var < 1 || l.var > num_vars()) {
        throw FormatError("clause references unknown variable " +
                          std::to_string(l.var));
      }
    }
  }
  clause_index_.emplace(clause, num_clauses());
  clauses_.push_back(std::move(clause));
}

std::optional<int> Formula::FindClause(const JClause& clause) const {
  auto it = clause_index_.find(clause);
  if (it == clause_index_.end()) return std::nullopt;
  return it->second;
}

Truth Formula::Eval(const Assignment& a) const {
  Truth result = Truth::kTrue;
  for (const JClause& c : clauses_) {
    Truth v = EvalClause(a, c);
    if (v == Truth::kFalse) return Truth::kFalse;
    if (v == Truth::kUndetermined) result = Truth::kUndetermined;
  }
  return result;
}

Formula RestrictFormula(const Formula& f, const Assignment& a) {
  if (a.num_vars() > f.num_vars()) {
    throw FormatError("assignment covers variables outside the formula");
  }
  auto value = [&](VarId v) -> std::optional<bool> {
    return v <= a.num_vars() ? a.Get(v) : std::nullopt;
  };
  Formula out(f.j());
  out.set_k(f.k());
  out.set_meta(f.meta());
  std::vector<VarId> renumber(f.num_vars() + 1, 0);
  for (VarId v = 1; v <= f.num_vars(); ++v) {
    if (!value(v)) renumber[v] = out.AddVar(f.symbol(v));
  }
  for (const JClause& c : f.clauses()) {
    std::vector<Term> terms;
    bool satisfied = false;
    for (const Term& t : c.terms()) {
      Term kept;
      bool falsified = false;
      for (Literal l : t) {
        auto v = value(l.var);
        if (!v) {
          kept.push_back({renumber[l.var], l.positive});
        } else if (*v != l.positive) {
          falsified = true;
          break;
        }
      }
      if (falsified) continue;
      if (kept.empty()) {
        satisfied = true;
        break;
      }
      terms.push_back(std::move(kept));
    }
    if (!satisfied) out.AddClause(JClause(std::move(terms)));
  }
  return out;
}

std::string TermToString(const Term& t) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += '&';
    out += std::to_string(t[i].ToInt());
  }
  return out;
}

std::string ClauseToString(const JClause& c) {
  std::string out;
  for (const Term& t : c.terms()) {
    out += TermToString(t);
    out += ' ';
  }
  out += '0';
  return out;
}

std::string ClauseToString(const JClause& c, const Formula& f) {
  if (c.empty()) return "(empty)";
  std::string out;
  for (size_t i = 0; i < c.terms().size(); ++i) {
    if (i > 0) out += " | ";
    const Term& t = c.terms()[i];
    for (size_t k = 0; k < t.size(); ++k) {
      if (k > 0) out += " & ";
      if (!t[k].positive) out += '~';
      out += t[k].var <= f.num_vars() ? f.symbol(t[k].var).Name()
                                      : std::to_string(t[k].var);
    }
  }
  return out;
}

std::string SerializeJcnf(const Formula& f) {
  std::ostringstream os;
  os << "p jcnf " << f.num_vars() << ' ' << f.num_clauses() << ' ' << f.j();
  if (f.k()) os << ' ' << *f.k();
  os << '\n';
  if (f.meta()) {
    os << "c family " << f.meta()->family << ' ' << f.meta()->n;
    if (f.meta()->r > 0) os << ' ' << f.meta()->r;
    os << '\n';
  }
  for (VarId v = 1; v <= f.num_vars(); ++v) {
    os << "c var " << v << ' ' << f.symbol(v).Name() << '\n';
  }
  for (const JClause& c : f.clauses()) os << ClauseToString(c) << '\n';
  return os.str();
}

Formula ParseJcnf(std::string_view text) {
  std::optional<int> num_vars, num_clauses, j, k;
  std::optional<FamilyMeta> meta;
  std::vector<std::pair<int, std::string>> named;
  std::vector<std::pair<int, std::vector<std::vector<int>>>> clauses;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    auto tok = Tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() >= 4 && tok[1] == "var") {
        named.emplace_back(ParseInt(tok[2], line_no, "variable id"),
                           std::string(tok[3]));
      } else if (tok.size() >= 4 && tok[1] == "family") {
        meta = FamilyMeta{std::string(tok[2]),
                          ParseInt(tok[3], line_no, "family size"),
                          tok.size() >= 5 ? ParseInt(tok[4], line_no, "r")
                                          : 0};
      }
      continue;
    }
    if (tok[0] == "p") {
      if (num_vars) throw FormatError("duplicate header", line_no);
      if (tok.size() < 5 || tok.size() > 6 || tok[1] != "jcnf") {
        throw FormatError("malformed header, expected 'p jcnf <nvars> "
                          "<nclauses> <j> [<k>]'",
                          line_no);
      }
      num_vars = ParseInt(tok[2], line_no, "variable count");
      num_clauses = ParseInt(tok[3], line_no, "clause count");
      j = ParseInt(tok[4], line_no, "j");
      if (tok.size() == 6) k = ParseInt(tok[5], line_no, "k");
      if (*num_vars < 0 || *num_clauses < 0) {
        throw FormatError("negative count in header", line_no);
      }
      continue;
    }
    if (!num_vars) throw FormatError("clause before header", line_no);
    if (tok.back() != "0") {
      throw FormatError("clause line must end with ' 0'", line_no);
    }
    std::vector<std::vector<int>> terms;
    for (size_t i = 0; i + 1 < tok.size(); ++i) {
      std::vector<int> term;
      for (std::string_view lit : Split(tok[i], '&')) {
        int x = ParseInt(lit, line_no, "literal");
        if (x == 0) throw FormatError("literal 0 inside a clause", line_no);
        term.push_back(x);
      }
      terms.push_back(std::move(term));
    }
    clauses.emplace_back(line_no, std::move(terms));
  }
  if (!num_vars) throw FormatError("missing 'p jcnf' header");
  if (static_cast<int>(clauses.size()) != *num_clauses) {
    throw FormatError("header declares " + std::to_string(*num_clauses) +
                      " clauses, found " + std::to_string(clauses.size()));
  }
  std::vector<std::string> names(*num_vars);
  for (const auto& [id, name] : named) {
    if (id < 1 || id > *num_vars) {
      throw FormatError("symbol line for undeclared variable " +
                        std::to_string(id));
    }
    names[id - 1] = name;
  }
  return Assemble(*num_vars, *j, k, std::move(meta), names,
                  std::move(clauses));
}

std::string SerializeStructured(const Formula& f) {
  nlohmann::ordered_json doc;
  doc["format"] = "jcnf";
  doc["j"] = f.j();
  if (f.k()) doc["k"] = *f.k();
  if (f.meta()) {
    nlohmann::ordered_json fam;
    fam["name"] = f.meta()->family;
    fam["n"] = f.meta()->n;
    if (f.meta()->r > 0) fam["r"] = f.meta()->r;
    doc["family"] = fam;
  }
  auto vars = nlohmann::ordered_json::array();
  for (const VarSymbol& s : f.symbols()) vars.push_back(s.Name());
  doc["vars"] = vars;
  auto clauses = nlohmann::ordered_json::array();
  for (const JClause& c : f.clauses()) {
    auto terms = nlohmann::ordered_json::array();
    for (const Term& t : c.terms()) {
      auto lits = nlohmann::ordered_json::array();
      for (Literal l : t) lits.push_back(l.ToInt());
      terms.push_back(lits);
    }
    clauses.push_back(terms);
  }
  doc["clauses"] = clauses;
  return doc.dump(1) + "\n";
}

Formula ParseStructured(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    std::optional<int> k;
    if (doc.contains("k")) k = doc.at("k").get<int>();
    std::optional<FamilyMeta> meta;
    if (doc.contains("family")) {
      const auto& fam = doc.at("family");
      meta = FamilyMeta{fam.at("name").get<std::string>(),
                        fam.at("n").get<int>(), fam.value("r", 0)};
    }
    std::vector<std::string> names =
        doc.at("vars").get<std::vector<std::string>>();
    std::vector<std::pair<int, std::vector<std::vector<int>>>> clauses;
    int index = 0;
    for (const auto& c : doc.at("clauses")) {
      clauses.emplace_back(++index, c.get<std::vector<std::vector<int>>>());
    }
    return Assemble(static_cast<int>(names.size()), doc.at("j").get<int>(), k,
                    std::move(meta), names, std::move(clauses));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("structured formula: ") + e.what());
  }
}

Formula ParseFormula(std::string_view text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return ParseStructured(text);
  }
  return ParseJcnf(text);
}

}  // namespace pres
