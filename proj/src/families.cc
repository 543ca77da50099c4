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

#include "pres/families.h"

#include <algorithm>
#include <cctype>

namespace pres {
namespace {

Literal Pos(VarId v) { return {v, true}; }
Literal Neg(VarId v) { return {v, false}; }

JClause Lits(std::initializer_list<Literal> lits) {
  return JClause::FromLiterals(std::vector<Literal>(lits));
}

void Require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

// Variable-table helper: registers symbols and looks them up by coordinates.
class Table {
 public:
  explicit Table(Formula* f) : f_(f) {}
  VarId Add(VarKind kind, std::vector<int> coords, int sup = 0) {
    return f_->AddVar({kind, std::move(coords), sup});
  }
  VarId operator()(VarKind kind, std::vector<int> coords, int sup = 0) const {
    return f_->Var({kind, std::move(coords), sup});
  }

 private:
  Formula* f_;
};

Formula GenerateIp(int n, bool relativised) {
  Formula f(1);
  Table v(&f);
  if (relativised) {
    for (int i = 1; i <= n; ++i) v.Add(VarKind::R, {i});
  }
  for (int i = 1; i <= n; ++i) v.Add(VarKind::P, {i});
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::S, {i, j});
  }
  auto R = [&](int i) { return v(VarKind::R, {i}); };
  auto P = [&](int i) { return v(VarKind::P, {i}); };
  auto S = [&](int i, int j) { return v(VarKind::S, {i, j}); };
  if (relativised) f.AddClause(Lits({Pos(R(1))}));
  f.AddClause(Lits({Pos(P(1))}));
  if (relativised) f.AddClause(Lits({Pos(R(n))}));
  f.AddClause(Lits({Neg(P(n))}));
  for (int i = 1; i < n; ++i) {
    std::vector<Literal> succ;
    for (int j = i + 1; j <= n; ++j) succ.push_back(Pos(S(i, j)));
    f.AddClause(JClause::FromLiterals(succ));
  }
  if (relativised) {
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j <= n; ++j) {
        f.AddClause(Lits({Neg(S(i, j)), Neg(R(i)), Neg(P(i)), Pos(R(j))}));
      }
    }
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (relativised) {
        f.AddClause(Lits({Neg(S(i, j)), Neg(R(i)), Neg(P(i)), Pos(P(j))}));
      } else {
        f.AddClause(Lits({Neg(S(i, j)), Neg(P(i)), Pos(P(j))}));
      }
    }
  }
  return f;
}

// RVIP is RVIPr with r = 1 but with unsuperscripted R names.
Formula GenerateRvip(int n, int r, bool superscripted, bool as_printed) {
  Formula f(1);
  Table v(&f);
  auto sup = [&](int s) { return superscripted ? s : 0; };
  for (int s = 1; s <= r; ++s) {
    for (int i = 1; i <= n; ++i) v.Add(VarKind::R, {i}, sup(s));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::P, {i, j});
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int l = 1; l <= n; ++l) {
        for (int m = 1; m <= n; ++m) v.Add(VarKind::S, {i, j, l, m});
      }
    }
  }
  auto R = [&](int s, int i) { return v(VarKind::R, {i}, sup(s)); };
  auto P = [&](int i, int j) { return v(VarKind::P, {i, j}); };
  auto S = [&](int i, int j, int l, int m) {
    return v(VarKind::S, {i, j, l, m});
  };
  for (int s = 1; s <= r; ++s) f.AddClause(Lits({Pos(R(s, 1))}));
  f.AddClause(Lits({Pos(P(1, 1))}));
  for (int s = 1; s <= r; ++s) f.AddClause(Lits({Pos(R(s, n))}));
  for (int j = 1; j <= n; ++j) f.AddClause(Lits({Neg(P(n, j))}));
  for (int i = 1; i <= (as_printed ? n : n - 1); ++i) {
    for (int j = 1; j <= n; ++j) {
      std::vector<Literal> succ;
      for (int l = i + 1; l <= n; ++l) {
        for (int m = 1; m <= n; ++m) succ.push_back(Pos(S(i, j, l, m)));
      }
      f.AddClause(JClause::FromLiterals(succ));
    }
  }
  // One implication block per head: R^1_l, ..., R^r_l, then P_{l,m}.
  for (int head = 1; head <= r + 1; ++head) {
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int l = 1; l <= n; ++l) {
          for (int m = 1; m <= n; ++m) {
            std::vector<Literal> c = {Neg(S(i, j, l, m))};
            for (int s = 1; s <= r; ++s) c.push_back(Neg(R(s, i)));
            c.push_back(Neg(P(i, j)));
            c.push_back(head <= r ? Pos(R(head, l)) : Pos(P(l, m)));
            f.AddClause(JClause::FromLiterals(c));
          }
        }
      }
    }
  }
  return f;
}

Formula GenerateRlnp(int n, bool as_printed) {
  Formula f(1);
  Table v(&f);
  for (int i = 1; i <= n; ++i) v.Add(VarKind::R, {i});
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::L, {i, j});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::S, {i, j});
  }
  auto R = [&](int i) { return v(VarKind::R, {i}); };
  auto L = [&](int i, int j) { return v(VarKind::L, {i, j}); };
  auto S = [&](int i, int j) { return v(VarKind::S, {i, j}); };
  for (int i = 1; i <= n; ++i) f.AddClause(Lits({Neg(R(i)), Neg(L(i, i))}));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        f.AddClause(Lits({Neg(R(i)), Neg(R(j)), Neg(R(k)), Neg(L(i, j)),
                          Neg(L(j, k)), Pos(L(i, k))}));
      }
    }
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<Literal> sel;
    for (int i = 1; i <= n; ++i) sel.push_back(Pos(S(i, j)));
    f.AddClause(JClause::FromLiterals(sel));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      f.AddClause(Lits({Neg(S(i, j)), Neg(R(j)), Pos(R(i))}));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      f.AddClause(Lits({Neg(S(i, j)), Neg(R(j)),
                        as_printed ? Neg(L(i, j)) : Pos(L(i, j))}));
    }
  }
  f.AddClause(Lits({Pos(R(n))}));
  return f;
}

Formula GenerateSigmaPst(int n) {
  Formula f(2);
  Table v(&f);
  for (int i = 1; i <= n; ++i) v.Add(VarKind::P, {i});
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::S, {i, j});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::T, {i, j});
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<Term> terms = {{Pos(v(VarKind::P, {i}))}};
    for (int j = 1; j <= n; ++j) {
      terms.push_back(
          {Neg(v(VarKind::S, {i, j})), Pos(v(VarKind::T, {i, j}))});
    }
    f.AddClause(JClause(std::move(terms)));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      f.AddClause(
          Lits({Neg(v(VarKind::T, {i, j})), Pos(v(VarKind::S, {i, j}))}));
    }
  }
  return f;
}

Formula GeneratePhp(int n, int k, bool all_pigeons) {
  Formula f(1);
  Table v(&f);
  for (int i = 1; i <= k + 1; ++i) {
    for (int j = 1; j <= n; ++j) v.Add(VarKind::p, {i, j});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= k; ++j) v.Add(VarKind::q, {i, j});
  }
  auto p = [&](int i, int j) { return v(VarKind::p, {i, j}); };
  auto q = [&](int i, int j) { return v(VarKind::q, {i, j}); };
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= k + 1; ++i) {
      for (int l = i + 1; l <= k + 1; ++l) {
        f.AddClause(Lits({Neg(p(i, j)), Neg(p(l, j))}));
      }
    }
  }
  for (int j = 1; j <= k; ++j) {
    for (int i = 1; i <= n; ++i) {
      for (int l = i + 1; l <= n; ++l) {
        f.AddClause(Lits({Neg(q(i, j)), Neg(q(l, j))}));
      }
    }
  }
  for (int i = 1; i <= (all_pigeons ? k + 1 : k); ++i) {
    std::vector<Literal> c;
    for (int lambda = 1; lambda <= n; ++lambda) c.push_back(Pos(p(i, lambda)));
    f.AddClause(JClause::FromLiterals(c));
  }
  // The printed schema leaves i unbound; it ranges over all pigeons.
  for (int i = 1; i <= k + 1; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::vector<Literal> c = {Neg(p(i, j))};
      for (int lambda = 1; lambda <= k; ++lambda) c.push_back(Pos(q(j, lambda)));
      f.AddClause(JClause::FromLiterals(c));
    }
  }
  return f;
}

long long Choose2(long long x) { return x * (x - 1) / 2; }

}  // namespace

std::string FamilyName(Family family) {
  switch (family) {
    case Family::IP: return "IP";
    case Family::RIP: return "RIP";
    case Family::RVIP: return "RVIP";
    case Family::RVIPr: return "RVIPr";
    case Family::RLNP: return "RLNP";
    case Family::SigmaPST: return "SigmaPST";
    case Family::PHP: return "PHP";
    case Family::SigmaPrime: return "SigmaPrime";
  }
  return "?";
}

Family ParseFamily(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(c));
  }
  for (Family f : {Family::IP, Family::RIP, Family::RVIP, Family::RVIPr,
                   Family::RLNP, Family::SigmaPST, Family::PHP,
                   Family::SigmaPrime}) {
    std::string fam;
    for (char c : FamilyName(f)) fam += static_cast<char>(std::tolower(c));
    if (fam == key) return f;
  }
  if (key == "pst") return Family::SigmaPST;
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

Formula Generate(const FamilySpec& spec) {
  const int n = spec.n;
  Require(n >= 2, FamilyName(spec.family) + " needs n >= 2");
  Require(spec.r.has_value() == (spec.family == Family::RVIPr),
          "r is required for RVIPr and only for RVIPr");
  if (spec.r) Require(*spec.r >= 1, "r must be >= 1");
  if (spec.k) Require(*spec.k >= 0, "k must be >= 0");
  Formula f;
  switch (spec.family) {
    case Family::IP:
      f = GenerateIp(n, false);
      break;
    case Family::RIP:
      f = GenerateIp(n, true);
      break;
    case Family::RVIP:
      f = GenerateRvip(n, 1, false, spec.as_printed);
      break;
    case Family::RVIPr:
      f = GenerateRvip(n, *spec.r, true, spec.as_printed);
      break;
    case Family::RLNP:
      f = GenerateRlnp(n, spec.as_printed);
      break;
    case Family::SigmaPST:
      f = GenerateSigmaPst(n);
      break;
    case Family::PHP:
      Require(spec.k.has_value(), "PHP needs k");
      f = GeneratePhp(n, *spec.k, spec.as_printed);
      break;
    case Family::SigmaPrime: {
      Require(spec.k.has_value(), "SigmaPrime needs k");
      Require(spec.base != Family::SigmaPrime, "SigmaPrime cannot nest");
      FamilySpec base = spec;
      base.family = spec.base;
      if (base.family != Family::PHP) base.k.reset();
      f = SigmaPrime(Generate(base), *spec.k);
      FamilyMeta meta = *f.meta();
      meta.family = "SigmaPrime-" + meta.family;
      f.set_meta(meta);
      f.set_k(spec.k);
      return f;
    }
  }
  std::string name = FamilyName(spec.family);
  if (spec.as_printed) name += "-printed";
  f.set_meta(FamilyMeta{name, n, spec.r.value_or(0)});
  f.set_k(spec.k);
  return f;
}

SchemaCounts ExpectedCounts(const FamilySpec& spec) {
  const long long n = spec.n;
  const long long r = spec.r.value_or(1);
  const long long k = spec.k.value_or(0);
  const long long n3 = n * n * n;
  switch (spec.family) {
    case Family::IP:
      return {n * n, n * n + 1};
    case Family::RIP:
      return {2 * n + (n - 1) * n, 2 * n * n - n + 3};
    case Family::RVIP:
      return {n + n * n + (n - 1) * n3,
              2 * (n - 1) * n3 + n * n + 3 + (spec.as_printed ? n : 0)};
    case Family::RVIPr:
      return {r * n + n * n + (n - 1) * n3,
              (r + 1) * (n - 1) * n3 + n * (n - 1) + n + 2 * r + 1 +
                  (spec.as_printed ? n : 0)};
    case Family::RLNP:
      return {n + 2 * n * n, n3 + 2 * n * n + 2 * n + 1};
    case Family::SigmaPST:
      return {n + 2 * n * n, n + n * n};
    case Family::PHP:
      return {(k + 1) * n + n * k,
              n * Choose2(k + 1) + k * Choose2(n) +
                  (spec.as_printed ? k + 1 : k) + (k + 1) * n};
    case Family::SigmaPrime: {
      FamilySpec base = spec;
      base.family = spec.base;
      SchemaCounts c = ExpectedCounts(base);
      return {c.vars + 1 + 2 * (k + 1), c.clauses + k + 1};
    }
  }
  return {};
}

Formula SigmaPrime(const Formula& f, int k) {
  if (k < 0) throw ParameterError("k must be >= 0");
  Formula out(f.j());
  for (const VarSymbol& s : f.symbols()) out.AddVar(s);
  VarId a = out.AddVar({VarKind::A, {}, 0});
  std::vector<std::pair<VarId, VarId>> pairs;
  for (int i = 1; i <= k + 1; ++i) {
    VarId b = out.AddVar({VarKind::B, {i}, 0});
    VarId bp = out.AddVar({VarKind::Bp, {i}, 0});
    pairs.emplace_back(b, bp);
  }
  for (const JClause& c : f.clauses()) out.AddClause(With(c, {Pos(a)}));
  for (auto [b, bp] : pairs) out.AddClause(Lits({Neg(a), Pos(b), Pos(bp)}));
  out.set_k(k);
  out.set_meta(f.meta());
  return out;
}

ParamAxioms::ParamAxioms(std::vector<VarId> vars, int k)
    : vars_(std::move(vars)), size_(k + 1) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  Reset();
}

void ParamAxioms::Reset() {
  index_.clear();
  for (int i = 0; i < size_; ++i) index_.push_back(i);
  done_ = size_ < 1 || size_ > static_cast<int>(vars_.size());
}

bool ParamAxioms::Next(JClause* clause) {
  if (done_) return false;
  std::vector<Literal> lits;
  for (int i : index_) lits.push_back(Neg(vars_[i]));
  *clause = JClause::FromLiterals(lits);
  // Advance to the next combination.
  const int m = static_cast<int>(vars_.size());
  int pos = size_ - 1;
  while (pos >= 0 && index_[pos] == m - size_ + pos) --pos;
  if (pos < 0) {
    done_ = true;
  } else {
    ++index_[pos];
    for (int i = pos + 1; i < size_; ++i) index_[i] = index_[i - 1] + 1;
  }
  return true;
}

std::optional<std::vector<VarId>> ParamAxioms::VarsOf(const JClause& clause) {
  std::vector<VarId> vars;
  for (const Term& t : clause.terms()) {
    if (t.size() != 1 || t[0].positive) return std::nullopt;
    vars.push_back(t[0].var);
  }
  return vars;
}

bool ParamAxioms::IsMember(const JClause& clause, int k,
                           std::span<const VarId> vars) {
  auto clause_vars = VarsOf(clause);
  if (!clause_vars || static_cast<int>(clause_vars->size()) != k + 1) {
    return false;
  }
  if (vars.empty()) return true;
  for (VarId v : *clause_vars) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) return false;
  }
  return true;
}

}  // namespace pres
