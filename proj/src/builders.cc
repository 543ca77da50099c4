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

#include "pres/builders.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <variant>

namespace pres {
namespace {

Literal Pos(VarId v) { return {v, true}; }
Literal Neg(VarId v) { return {v, false}; }

void Require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

int AxiomIndex(const Formula& f, const JClause& c) {
  auto idx = f.FindClause(c);
  if (!idx) throw std::logic_error("builder: missing axiom " + ClauseToString(c));
  return *idx;
}

int AxiomIndex(const Formula& f, std::vector<Literal> lits) {
  return AxiomIndex(f, JClause::FromLiterals(lits));
}

BuildResult FromTree(Formula f, DecisionTree tree, int j,
                     std::optional<int> k = std::nullopt) {
  BuildResult out;
  out.proof = TreeToProof(tree, f, j, k);
  out.query_nodes = tree.QueryNodes();
  out.tree = std::move(tree);
  out.formula = std::move(f);
  return out;
}

// Common accessors for IP and RIP instances.
struct IpVars {
  const Formula& f;
  VarId R(int i) const { return f.Var({VarKind::R, {i}, 0}); }
  VarId P(int i) const { return f.Var({VarKind::P, {i}, 0}); }
  VarId S(int i, int j) const { return f.Var({VarKind::S, {i, j}, 0}); }
  int Successor(int i, int n) const {
    std::vector<Literal> c;
    for (int j = i + 1; j <= n; ++j) c.push_back(Pos(S(i, j)));
    return AxiomIndex(f, c);
  }
};

}  // namespace

std::string BuildMethodName(BuildMethod m) {
  switch (m) {
    case BuildMethod::kIpRes1: return "IpRes1";
    case BuildMethod::kFptPres1: return "FptPres1";
    case BuildMethod::kRipRes2: return "RipRes2";
    case BuildMethod::kRvipResJ: return "RvipResJ";
    case BuildMethod::kRlnpRes2: return "RlnpRes2";
    case BuildMethod::kPstPres2: return "PstPres2";
    case BuildMethod::kSigmaPrimeLift: return "SigmaPrimeLift";
  }
  return "?";
}

BuildMethod ParseBuildMethod(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(c));
  }
  for (BuildMethod m :
       {BuildMethod::kIpRes1, BuildMethod::kFptPres1, BuildMethod::kRipRes2,
        BuildMethod::kRvipResJ, BuildMethod::kRlnpRes2, BuildMethod::kPstPres2,
        BuildMethod::kSigmaPrimeLift}) {
    std::string s;
    for (char c : BuildMethodName(m)) s += static_cast<char>(std::tolower(c));
    if (s == key) return m;
  }
  if (key == "fpt") return BuildMethod::kFptPres1;
  if (key == "sigmaprime") return BuildMethod::kSigmaPrimeLift;
  throw ParameterError("unknown build method '" + std::string(name) + "'");
}

BuildResult BuildIpRes1(int n) {
  Require(n >= 2, "IpRes1 needs n >= 2");
  Formula f = Generate({Family::IP, n});
  IpVars v{f};
  DecisionTree t;
  // P_i is known true, P_{i+1..n} false: some successor S_{i,j} with j > i
  // must hold and its implication reaches a false P_j.
  auto chain = [&](auto& self, int i, int j) -> int {
    int yes = t.AddAxiomLeaf(
        AxiomIndex(f, {Neg(v.S(i, j)), Neg(v.P(i)), Pos(v.P(j))}));
    int no = j < n ? self(self, i, j + 1) : t.AddAxiomLeaf(v.Successor(i, n));
    return t.AddQuery({Pos(v.S(i, j))}, yes, no);
  };
  auto spine = [&](auto& self, int i) -> int {
    int yes = i == n ? t.AddAxiomLeaf(AxiomIndex(f, {Neg(v.P(n))}))
                     : chain(chain, i, i + 1);
    int no = i == 1 ? t.AddAxiomLeaf(AxiomIndex(f, {Pos(v.P(1))}))
                    : self(self, i - 1);
    return t.AddQuery({Pos(v.P(i))}, yes, no);
  };
  t.set_root(spine(spine, n));
  return FromTree(std::move(f), std::move(t), 1);
}

BuildResult BuildFptPres1(Family family, int n, int k) {
  Require(family == Family::IP || family == Family::RIP,
          "FptPres1 supports IP and RIP only; RVIP successor levels have "
          "width (n-i)*n");
  Require(k >= 0, "k must be >= 0");
  Require(n >= k + 3, "FptPres1 needs n >= k+3");
  FamilySpec spec{family, n};
  spec.k = k;
  Formula f = Generate(spec);
  IpVars v{f};
  DecisionTree t;
  // Level c works on element n-c, whose successor axiom has c variables.
  std::vector<VarId> chosen;
  auto level = [&](auto& self, int c, int j) -> int {
    const int i = n - c;
    chosen.push_back(v.S(i, j));
    int yes = c == k + 1 ? t.AddParamLeaf(chosen) : self(self, c + 1, n - c);
    chosen.pop_back();
    int no = j < n ? self(self, c, j + 1) : t.AddAxiomLeaf(v.Successor(i, n));
    return t.AddQuery({Pos(v.S(i, j))}, yes, no);
  };
  t.set_root(level(level, 1, n));
  return FromTree(std::move(f), std::move(t), 1, k);
}

BuildResult BuildRipRes2(int n) {
  Require(n >= 2, "RipRes2 needs n >= 2");
  Formula f = Generate({Family::RIP, n});
  IpVars v{f};
  DecisionTree t;
  auto implication = [&](int i, int j, VarId head) {
    return AxiomIndex(f, {Neg(v.S(i, j)), Neg(v.R(i)), Neg(v.P(i)), Pos(head)});
  };
  // R_i & P_i hold and R_j & P_j fail for all j > i.
  auto chain = [&](auto& self, int i, int j) -> int {
    int yes = t.AddLeaf({{implication(i, j, v.R(j)), {}, Pos(v.R(j))},
                         {implication(i, j, v.P(j)), {}, Pos(v.P(j))}});
    int no = j > i + 1 ? self(self, i, j - 1)
                       : t.AddAxiomLeaf(v.Successor(i, n));
    return t.AddQuery({Pos(v.S(i, j))}, yes, no);
  };
  auto spine = [&](auto& self, int i) -> int {
    int yes = i == 1
                  ? t.AddLeaf({{AxiomIndex(f, {Pos(v.R(1))}), {}, Pos(v.R(1))},
                               {AxiomIndex(f, {Pos(v.P(1))}), {}, Pos(v.P(1))}})
                  : self(self, i - 1);
    int no = i == n ? t.AddAxiomLeaf(AxiomIndex(f, {Neg(v.P(n))}))
                    : chain(chain, i, n);
    return t.AddQuery({Neg(v.R(i)), Neg(v.P(i))}, yes, no);
  };
  t.set_root(spine(spine, n));
  return FromTree(std::move(f), std::move(t), 2);
}

BuildResult BuildRvipResJ(int n, std::optional<int> r_opt) {
  Require(n >= 2, "RvipResJ needs n >= 2");
  if (r_opt) Require(*r_opt >= 1, "r must be >= 1");
  const int r = r_opt.value_or(1);
  FamilySpec spec{r_opt ? Family::RVIPr : Family::RVIP, n};
  spec.r = r_opt;
  Formula f = Generate(spec);
  auto R = [&](int s, int i) {
    return f.Var({VarKind::R, {i}, r_opt ? s : 0});
  };
  auto P = [&](int i, int j) { return f.Var({VarKind::P, {i, j}, 0}); };
  auto S = [&](int i, int j, int l, int m) {
    return f.Var({VarKind::S, {i, j, l, m}, 0});
  };
  auto body = [&](int i, int j, int l, int m) {
    std::vector<Literal> c = {Neg(S(i, j, l, m)), Neg(P(i, j))};
    for (int s = 1; s <= r; ++s) c.push_back(Neg(R(s, i)));
    return c;
  };
  auto successor = [&](int i, int j) {
    std::vector<Literal> c;
    for (int l = i + 1; l <= n; ++l) {
      for (int m = 1; m <= n; ++m) c.push_back(Pos(S(i, j, l, m)));
    }
    return AxiomIndex(f, c);
  };
  DecisionTree t;
  // Element i with witness j is fully true; every (l, m) with l > i is not.
  // Successor candidates are visited l descending, m descending.
  auto chain = [&](auto& self, int i, int j, int l, int m) -> int {
    std::vector<LeafPart> parts;
    for (int s = 1; s <= r; ++s) {
      auto c = body(i, j, l, m);
      c.push_back(Pos(R(s, l)));
      parts.push_back({AxiomIndex(f, c), {}, Pos(R(s, l))});
    }
    auto c = body(i, j, l, m);
    c.push_back(Pos(P(l, m)));
    parts.push_back({AxiomIndex(f, c), {}, Pos(P(l, m))});
    int yes = t.AddLeaf(std::move(parts));
    int no;
    if (m > 1) {
      no = self(self, i, j, l, m - 1);
    } else if (l > i + 1) {
      no = self(self, i, j, l - 1, n);
    } else {
      no = t.AddAxiomLeaf(successor(i, j));
    }
    return t.AddQuery({Pos(S(i, j, l, m))}, yes, no);
  };
  auto spine = [&](auto& self, int i, int m) -> int {
    int yes;
    if (m > 1) {
      yes = self(self, i, m - 1);
    } else if (i > 1) {
      yes = self(self, i - 1, n);
    } else {
      std::vector<LeafPart> parts;
      for (int s = 1; s <= r; ++s) {
        parts.push_back({AxiomIndex(f, {Pos(R(s, 1))}), {}, Pos(R(s, 1))});
      }
      parts.push_back({AxiomIndex(f, {Pos(P(1, 1))}), {}, Pos(P(1, 1))});
      yes = t.AddLeaf(std::move(parts));
    }
    int no = i == n ? t.AddAxiomLeaf(AxiomIndex(f, {Neg(P(n, m))}))
                    : chain(chain, i, m, n, n);
    std::vector<Literal> q = {Neg(P(i, m))};
    for (int s = 1; s <= r; ++s) q.push_back(Neg(R(s, i)));
    return t.AddQuery(std::move(q), yes, no);
  };
  t.set_root(spine(spine, n, n));
  return FromTree(std::move(f), std::move(t), r + 1);
}

BuildResult BuildRlnpRes2(int n) {
  Require(n >= 2, "RlnpRes2 needs n >= 2");
  Formula f = Generate({Family::RLNP, n});
  auto R = [&](int i) { return f.Var({VarKind::R, {i}, 0}); };
  auto L = [&](int i, int j) { return f.Var({VarKind::L, {i, j}, 0}); };
  auto S = [&](int i, int j) { return f.Var({VarKind::S, {i, j}, 0}); };
  ProofWriter w(ProofMode::kDag, 2);
  auto axiom = [&](std::vector<Literal> lits) {
    return w.Axiom(f, AxiomIndex(f, std::move(lits)));
  };

  // E[j] = ~R_j | OR_{i <= m} (R_i & L_ij), first for m = n.
  std::vector<int> e(n + 1);
  for (int j = 1; j <= n; ++j) {
    std::vector<Literal> sel;
    for (int i = 1; i <= n; ++i) sel.push_back(Pos(S(i, j)));
    int c = axiom(sel);
    for (int i = 1; i <= n; ++i) {
      int d = axiom({Neg(S(i, j)), Neg(R(j)), Pos(R(i))});
      int l = axiom({Neg(S(i, j)), Neg(R(j)), Pos(L(i, j))});
      int x = w.AndIntro(d, {Pos(R(i))}, l, {Pos(L(i, j))});
      c = w.Cut(c, x, {Pos(S(i, j))});
    }
    e[j] = c;
  }

  // Remove element m from every E[j] still needed: from E[m] and
  // irreflexivity some i < m lies below m, and by transitivity below j.
  for (int m = n; m >= 1; --m) {
    int fm = w.Cut(axiom({Neg(R(m)), Neg(L(m, m))}), e[m],
                   {Neg(R(m)), Neg(L(m, m))});
    std::vector<int> targets;
    for (int j = 1; j < m; ++j) targets.push_back(j);
    if (m < n) targets.push_back(n);
    for (int j : targets) {
      int x = w.WeakenAdd(w.WeakenAdd(fm, {Neg(R(j))}), {Neg(L(m, j))});
      for (int i = 1; i < m; ++i) {
        Term from = MakeTerm({Pos(R(i)), Pos(L(i, m))});
        int shrunk = w.WeakenShrink(x, from, {Pos(R(i))});
        int trans = axiom({Neg(R(i)), Neg(R(m)), Neg(R(j)), Neg(L(i, m)),
                           Neg(L(m, j)), Pos(L(i, j))});
        int cut = w.Cut(trans, x, {Neg(R(i)), Neg(L(i, m))});
        x = w.AndIntro(shrunk, {Pos(R(i))}, cut, {Pos(L(i, j))});
      }
      e[j] = w.Cut(x, e[j], {Neg(R(m)), Neg(L(m, j))});
    }
    e[m] = fm;
  }
  w.Cut(axiom({Pos(R(n))}), e[n], {Pos(R(n))});
  BuildResult out;
  out.proof = w.Release();
  out.formula = std::move(f);
  return out;
}

BuildResult BuildPstPres2(int n, int k) {
  Require(k >= 0, "k must be >= 0");
  Require(k + 1 <= n, "PstPres2 needs k+1 <= n");
  FamilySpec spec{Family::SigmaPST, n};
  spec.k = k;
  Formula f = Generate(spec);
  auto P = [&](int i) { return f.Var({VarKind::P, {i}, 0}); };
  auto S = [&](int i, int j) { return f.Var({VarKind::S, {i, j}, 0}); };
  auto T = [&](int i, int j) { return f.Var({VarKind::T, {i, j}, 0}); };
  ProofWriter w(ProofMode::kTree, 2, k);
  std::vector<int> units;
  for (int i = 1; i <= k + 1; ++i) {
    std::vector<Term> wide = {{Pos(P(i))}};
    for (int j = 1; j <= n; ++j) wide.push_back(MakeTerm({Neg(S(i, j)), Pos(T(i, j))}));
    int c = w.Axiom(f, AxiomIndex(f, JClause(std::move(wide))));
    for (int j = 1; j <= n; ++j) {
      int ax = w.Axiom(f, AxiomIndex(f, {Neg(T(i, j)), Pos(S(i, j))}));
      c = w.Cut(ax, c, {Neg(T(i, j)), Pos(S(i, j))});
    }
    units.push_back(c);
  }
  std::vector<VarId> ps;
  for (int i = 1; i <= k + 1; ++i) ps.push_back(P(i));
  int c = w.ParamAxiom(ps);
  for (int i = 1; i <= k + 1; ++i) c = w.Cut(units[i - 1], c, {Pos(P(i))});
  BuildResult out;
  out.proof = w.Release();
  out.formula = std::move(f);
  return out;
}

BuildResult BuildSigmaPrime(const Proof& p, const Formula& base, int k) {
  Require(k >= 0, "k must be >= 0");
  CheckReport report = Check(p, base);
  if (!report.ok) {
    throw ParameterError("input proof rejected at line " +
                         std::to_string(report.failure_line) + ": " +
                         report.reason);
  }
  if (p.k) Require(*p.k == k, "input proof uses a different k");
  Formula f = SigmaPrime(base, k);
  const VarId a = f.Var({VarKind::A, {}, 0});
  const Term ta = {Pos(a)};
  ProofWriter w(p.mode, std::max(p.j, 1), k);
  std::map<int, const ProofLine*> old;
  std::map<int, int> id;
  for (const ProofLine& line : p.lines) {
    old[line.id] = &line;
    int nid = std::visit(
        [&](const auto& r) -> int {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, rule::Axiom>) {
            return w.Axiom(f, r.index);
          } else if constexpr (std::is_same_v<R, rule::ParamAxiom>) {
            return w.WeakenAdd(w.ParamAxiom(r.vars), ta);
          } else if constexpr (std::is_same_v<R, rule::ExpandedAxiom>) {
            const JClause& before = base.clauses().at(r.index);
            std::vector<Literal> choice;
            for (const Term& t : f.clauses().at(r.index).terms()) {
              choice.push_back(t == ta ? Pos(a)
                                       : r.choice.at(before.IndexOf(t)));
            }
            return w.ExpandedAxiom(f, r.index, std::move(choice));
          } else if constexpr (std::is_same_v<R, rule::AndIntro>) {
            return w.AndIntro(id.at(r.premise1), r.term1, id.at(r.premise2),
                              r.term2);
          } else if constexpr (std::is_same_v<R, rule::Cut>) {
            return w.Cut(id.at(r.premise1), id.at(r.premise2), r.pivots);
          } else if constexpr (std::is_same_v<R, rule::WeakenAdd>) {
            return w.WeakenAdd(id.at(r.premise), r.term);
          } else {
            const Term& from =
                old.at(r.premise)->clause.terms().at(r.term_index);
            return w.WeakenShrink(id.at(r.premise), from, r.kept);
          }
        },
        line.just);
    id[line.id] = nid;
  }
  const int derived_a = w.last();

  // Under A, each pair B_i, Bp_i has a true member; k+1 of them violate
  // the parameter bound.
  DecisionTree t;
  std::vector<VarId> chosen;
  auto pair = [&](auto& self, int i) -> int {
    if (i > k + 1) return t.AddParamLeaf(chosen);
    VarId b = f.Var({VarKind::B, {i}, 0});
    VarId bp = f.Var({VarKind::Bp, {i}, 0});
    chosen.push_back(b);
    int b_yes = self(self, i + 1);
    chosen.back() = bp;
    int bp_yes = self(self, i + 1);
    chosen.pop_back();
    int none = t.AddAxiomLeaf(AxiomIndex(f, {Neg(a), Pos(b), Pos(bp)}));
    int bp_node = t.AddQuery({Pos(bp)}, bp_yes, none);
    return t.AddQuery({Pos(b)}, b_yes, bp_node);
  };
  t.set_root(pair(pair, 1));
  int not_a = EmitTree(t, f, &w);
  w.Cut(derived_a, not_a, {Pos(a)});

  BuildResult out;
  out.proof = w.Release();
  out.query_nodes = t.QueryNodes();
  out.tree = std::move(t);
  out.formula = std::move(f);
  return out;
}

BuildResult Build(const BuildRequest& req) {
  auto need_k = [&] {
    Require(req.k.has_value(), BuildMethodName(req.method) + " needs k");
    return *req.k;
  };
  switch (req.method) {
    case BuildMethod::kIpRes1:
      return BuildIpRes1(req.n);
    case BuildMethod::kFptPres1:
      return BuildFptPres1(req.family, req.n, need_k());
    case BuildMethod::kRipRes2:
      return BuildRipRes2(req.n);
    case BuildMethod::kRvipResJ:
      return BuildRvipResJ(req.n, req.r);
    case BuildMethod::kRlnpRes2:
      return BuildRlnpRes2(req.n);
    case BuildMethod::kPstPres2:
      return BuildPstPres2(req.n, need_k());
    case BuildMethod::kSigmaPrimeLift: {
      int k = need_k();
      BuildResult base = BuildPstPres2(req.n, k);
      return BuildSigmaPrime(base.proof, base.formula, k);
    }
  }
  throw ParameterError("unknown build method");
}

}  // namespace pres
