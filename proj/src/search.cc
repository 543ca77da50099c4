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

#include "pres/search.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace pres {
namespace {

// Propagates clauses whose terms are all falsified but one: that term must
// hold, so all its literals are set. Returns false on a conflict.
bool Propagate(const Formula& f, Assignment& a) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const JClause& c : f.clauses()) {
      const Term* open = nullptr;
      int open_count = 0;
      bool satisfied = false;
      for (const Term& t : c.terms()) {
        Truth v = EvalTerm(a, t);
        if (v == Truth::kTrue) {
          satisfied = true;
          break;
        }
        if (v == Truth::kUndetermined) {
          open = &t;
          if (++open_count > 1) break;
        }
      }
      if (satisfied || open_count > 1) continue;
      if (open_count == 0) return false;
      for (Literal l : *open) {
        if (!a.IsSet(l.var)) {
          a.Set(l.var, l.positive);
          changed = true;
        }
      }
    }
  }
  return true;
}

bool Search(const Formula& f, Assignment& a) {
  if (!Propagate(f, a)) return false;
  VarId next = 0;
  for (VarId v = 1; v <= f.num_vars(); ++v) {
    if (!a.IsSet(v)) {
      next = v;
      break;
    }
  }
  if (next == 0) return f.Eval(a) == Truth::kTrue;
  for (bool value : {true, false}) {
    Assignment child = a;
    child.Set(next, value);
    if (Search(f, child)) {
      a = std::move(child);
      return true;
    }
  }
  return false;
}

long long Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<long long>(r + 0.5L);
}

}  // namespace

std::optional<Assignment> FindModel(const Formula& f, SatOptions options) {
  if (f.num_vars() > options.max_vars) {
    throw ParameterError("satisfiability search refused: " +
                         std::to_string(f.num_vars()) +
                         " variables exceed the limit of " +
                         std::to_string(options.max_vars));
  }
  Assignment a(f.num_vars());
  if (!Search(f, a)) return std::nullopt;
  return a;
}

std::optional<Assignment> WeightBoundedSat(const Formula& f, int k,
                                           long long max_candidates) {
  const int n = f.num_vars();
  k = std::min(k, n);
  long long candidates = 0;
  for (int w = 0; w <= k; ++w) {
    candidates += Binomial(n, w);
    if (candidates > max_candidates) break;
  }
  if (candidates > max_candidates) {
    throw ParameterError("weight-bounded search refused: more than " +
                         std::to_string(max_candidates) + " candidates");
  }
  for (int w = 0; w <= k; ++w) {
    std::vector<int> idx(w);
    for (int i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      Assignment a(n);
      for (VarId v = 1; v <= n; ++v) a.Set(v, false);
      for (int i : idx) a.Set(i + 1, true);
      if (f.Eval(a) == Truth::kTrue) return a;
      int pos = w - 1;
      while (pos >= 0 && idx[pos] == n - w + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < w; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

std::string ClassificationName(Classification c) {
  switch (c) {
    case Classification::kStrong: return "Strong";
    case Classification::kParameterizedOnly: return "ParameterizedOnly";
    case Classification::kNotPCon: return "NotPCon";
  }
  return "?";
}

Classification Classify(const Formula& f, int k) {
  if (!FindModel(f)) return Classification::kStrong;
  if (WeightBoundedSat(f, k)) return Classification::kNotPCon;
  return Classification::kParameterizedOnly;
}

namespace {

class MinTreeSearch {
 public:
  static constexpr long long kInf = std::numeric_limits<long long>::max();

  MinTreeSearch(const Formula& f, std::optional<int> k) : f_(f), k_(k) {
    for (const JClause& c : f.clauses()) {
      std::vector<std::pair<uint32_t, uint32_t>> terms;
      for (const Term& t : c.terms()) {
        uint32_t pos = 0, neg = 0;
        for (Literal l : t) (l.positive ? pos : neg) |= Bit(l.var);
        terms.emplace_back(pos, neg);
      }
      clauses_.push_back(std::move(terms));
    }
  }

  long long Solve(uint32_t assigned, uint32_t value) {
    if (Leaf(assigned, value)) return 0;
    uint64_t key = (static_cast<uint64_t>(assigned) << 32) | value;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;
    long long best = kInf;
    int best_var = -1;
    for (int v = 1; v <= f_.num_vars(); ++v) {
      uint32_t b = Bit(v);
      if (assigned & b) continue;
      long long t = Solve(assigned | b, value | b);
      if (t == kInf || t + 1 >= best) continue;
      long long e = Solve(assigned | b, value);
      if (e == kInf) continue;
      long long s = 1 + t + e;
      if (s < best) {
        best = s;
        best_var = v;
      }
    }
    memo_[key] = {best, best_var};
    return best;
  }

  int Build(uint32_t assigned, uint32_t value, DecisionTree* tree) {
    if (auto idx = Falsified(assigned, value)) return tree->AddAxiomLeaf(*idx);
    if (ParamHit(assigned, value)) {
      std::vector<VarId> vars;
      for (int v = 1; v <= f_.num_vars() &&
                      static_cast<int>(vars.size()) < *k_ + 1;
           ++v) {
        if (assigned & value & Bit(v)) vars.push_back(v);
      }
      return tree->AddParamLeaf(std::move(vars));
    }
    Solve(assigned, value);
    int v = memo_.at((static_cast<uint64_t>(assigned) << 32) | value).second;
    uint32_t b = Bit(v);
    int t = Build(assigned | b, value | b, tree);
    int fl = Build(assigned | b, value, tree);
    return tree->AddQuery({{v, true}}, t, fl);
  }

 private:
  static uint32_t Bit(int v) { return 1u << (v - 1); }

  std::optional<int> Falsified(uint32_t assigned, uint32_t value) const {
    uint32_t is_true = assigned & value;
    uint32_t is_false = assigned & ~value;
    for (size_t i = 0; i < clauses_.size(); ++i) {
      bool all = true;
      for (auto [pos, neg] : clauses_[i]) {
        if (!((pos & is_false) || (neg & is_true))) {
          all = false;
          break;
        }
      }
      if (all) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool ParamHit(uint32_t assigned, uint32_t value) const {
    return k_ && std::popcount(assigned & value) >= *k_ + 1;
  }

  bool Leaf(uint32_t assigned, uint32_t value) const {
    return ParamHit(assigned, value) || Falsified(assigned, value).has_value();
  }

  const Formula& f_;
  std::optional<int> k_;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> clauses_;
  std::unordered_map<uint64_t, std::pair<long long, int>> memo_;
};

}  // namespace

MinTreeResult MinTreeSize(const Formula& f, std::optional<int> k,
                          int max_vars) {
  if (f.j() != 1) throw ParameterError("minimum tree search needs j = 1");
  if (f.num_vars() > std::min(max_vars, 31)) {
    throw ParameterError("minimum tree search refused: " +
                         std::to_string(f.num_vars()) +
                         " variables exceed the limit of " +
                         std::to_string(std::min(max_vars, 31)));
  }
  if (k && *k < 0) throw ParameterError("k must be >= 0");
  MinTreeSearch search(f, k);
  MinTreeResult result;
  result.size = search.Solve(0, 0);
  if (result.size == MinTreeSearch::kInf) {
    throw ParameterError("formula is satisfiable; no refuting tree exists");
  }
  result.tree.set_root(search.Build(0, 0, &result.tree));
  return result;
}

}  // namespace pres
