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

#include "pres/games.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "json.hpp"
#include "pres/families.h"

namespace pres {

RvipAdversary::RvipAdversary(const GameConfig& config)
    : config_(config), r_(config.r.value_or(1)) {
  if (config.k < 0 || config.k > config.n) {
    throw ParameterError("game needs 0 <= k <= n");
  }
  // Instances are immutable; plays with the same (n, r, k) share them.
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const Shared>>
      cache;
  auto key = std::make_tuple(config.n, config.r.value_or(0), config.k);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, MakeShared(config)).first;
    shared_ = it->second;
  }
  const int n = config.n;
  record_ = Assignment(shared_->formula.num_vars());
  busy_.assign(n + 1, 0);
  r_true_.assign(n + 1, 0);
  p_true_.assign(n + 1, 0);
}

std::shared_ptr<const RvipAdversary::Shared> RvipAdversary::MakeShared(
    const GameConfig& config) {
  FamilySpec spec{config.r ? Family::RVIPr : Family::RVIP, config.n};
  spec.r = config.r;
  spec.k = config.k;
  auto sh = std::make_shared<Shared>();
  sh->formula = Generate(spec);
  const Formula& f = sh->formula;
  const int nv = f.num_vars();
  sh->info.resize(nv + 1);
  sh->group.resize(config.n + 1);
  sh->p_var.assign(config.n + 1, std::vector<VarId>(config.n + 1, 0));
  for (VarId v = 1; v <= nv; ++v) {
    const VarSymbol& s = f.symbol(v);
    VarInfo& vi = sh->info[v];
    switch (s.kind) {
      case VarKind::R:
        vi = {Kind::kR, std::max(s.superscript, 1), s.coords[0]};
        sh->group[vi.i].push_back(v);
        break;
      case VarKind::P:
        vi = {Kind::kP, 0, s.coords[0], s.coords[1]};
        sh->group[vi.i].push_back(v);
        sh->p_var[vi.i][vi.j] = v;
        break;
      default:
        vi = {Kind::kS, 0, s.coords[0], s.coords[1], s.coords[2], s.coords[3]};
        break;
    }
  }
  sh->occurs.resize(nv + 1);
  for (int c = 0; c < f.num_clauses(); ++c) {
    for (const Term& t : f.clauses()[c].terms()) {
      for (Literal l : t) sh->occurs[l.var].push_back(c);
    }
  }
  return sh;
}

int RvipAdversary::counted_trues() const {
  return true_count_ - (config_.exempt_units ? unit_trues_ : 0);
}

std::vector<int> RvipAdversary::busy() const {
  std::vector<int> out;
  for (int i = 1; i <= config_.n; ++i) {
    if (busy_[i]) out.push_back(i);
  }
  return out;
}

bool RvipAdversary::IsUnitTrue(VarId v) const {
  const VarInfo& x = shared_->info[v];
  if (x.kind == Kind::kR) return x.i == 1 || x.i == config_.n;
  return x.kind == Kind::kP && x.i == 1 && x.j == 1;
}

int RvipAdversary::NextNonBusy(int i) const {
  for (int l = i + 1; l <= config_.n; ++l) {
    if (!busy_[l]) return l;
  }
  return 0;
}

Answer RvipAdversary::RawPolicy(VarId v) const {
  const VarInfo& x = shared_->info[v];
  const int n = config_.n;
  if (IsUnitTrue(v)) return Answer::Forced(true);
  if (x.kind == Kind::kP && x.i == n) return Answer::Forced(false);
  if (x.kind == Kind::kS && x.l <= x.i) return Answer::Forced(false);
  const auto [si, sj] = source_;
  if (x.i < si) return Answer::Forced(false);
  if (x.i > si) {
    switch (x.kind) {
      case Kind::kR:
        return p_true_[x.i] > 0 ? Answer::Forced(false) : Answer::Free();
      case Kind::kP:
        return r_true_[x.i] > 0 ? Answer::Forced(false) : Answer::Free();
      case Kind::kS:
        return Answer::Free();
    }
  }
  switch (x.kind) {
    case Kind::kR:
      return Answer::Forced(true);
    case Kind::kP:
      return Answer::Forced(x.j == sj);
    case Kind::kS:
      break;
  }
  if (x.j != sj || x.l != NextNonBusy(x.i)) return Answer::Forced(false);
  // The last element's P are all false by axiom.
  if (x.l == n) return Answer::Forced(false);
  VarId p = shared_->p_var[x.l][x.m];
  if (record_.Get(p) == false) return Answer::Forced(false);
  return Answer::Free();
}

bool RvipAdversary::WouldFalsify(VarId v, bool value) const {
  for (int c : shared_->occurs[v]) {
    bool all = true;
    for (const Term& t : shared_->formula.clauses()[c].terms()) {
      bool term_false = false;
      for (Literal l : t) {
        std::optional<bool> val =
            l.var == v ? std::optional<bool>(value) : record_.Get(l.var);
        if (val && *val != l.positive) {
          term_false = true;
          break;
        }
      }
      if (!term_false) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Answer RvipAdversary::Policy(VarId v) const {
  Answer a = RawPolicy(v);
  // A forced answer that would be caught immediately is flipped when the
  // opposite value is safe.
  if (!a.free() && WouldFalsify(v, a.value) && !WouldFalsify(v, !a.value)) {
    return Answer::Forced(!a.value);
  }
  return a;
}

Answer RvipAdversary::Ask(const std::vector<Literal>& query) const {
  if (query.empty()) throw ProtocolError("empty query");
  bool any_true = false, all_false = true;
  for (Literal l : query) {
    if (l.var < 1 || l.var > shared_->formula.num_vars()) {
      throw ProtocolError("unknown variable " + std::to_string(l.var));
    }
    if (record_.IsSet(l.var)) {
      throw ProtocolError("variable " + shared_->formula.symbol(l.var).Name() +
                          " is already decided");
    }
    Answer a = Policy(l.var);
    if (a.free()) {
      all_false = false;
    } else if (a.value == l.positive) {
      any_true = true;
      all_false = false;
    }
  }
  if (any_true) return Answer::Forced(true);
  if (all_false) return Answer::Forced(false);
  return Answer::Free();
}

void RvipAdversary::Set(VarId v, bool value) {
  if (record_.IsSet(v)) return;
  record_.Set(v, value);
  if (value) {
    ++true_count_;
    if (IsUnitTrue(v)) ++unit_trues_;
  }
  const VarInfo& x = shared_->info[v];
  switch (x.kind) {
    case Kind::kR:
      busy_[x.i] = 1;
      if (value) ++r_true_[x.i];
      break;
    case Kind::kP:
      if (value) {
        busy_[x.i] = 1;
        ++p_true_[x.i];
      }
      break;
    case Kind::kS:
      if (value) busy_[x.i] = 1;
      break;
  }
  if (x.kind != Kind::kS && value && r_true_[x.i] == r_ && p_true_[x.i] > 0 &&
      x.i >= source_.first) {
    for (int j = 1; j <= config_.n; ++j) {
      if (record_.Get(shared_->p_var[x.i][j]) == true) {
        source_ = {x.i, j};
        break;
      }
    }
  }
  UpdateFalsified(v);
}

bool RvipAdversary::ClauseFalsified(int index) const {
  for (const Term& t : shared_->formula.clauses()[index].terms()) {
    bool term_false = false;
    for (Literal l : t) {
      if (record_.Value(l) == Truth::kFalse) {
        term_false = true;
        break;
      }
    }
    if (!term_false) return false;
  }
  return true;
}

void RvipAdversary::UpdateFalsified(VarId v) {
  if (falsified_) return;
  for (int c : shared_->occurs[v]) {
    if (ClauseFalsified(c)) {
      falsified_ = Falsification{c, false};
      return;
    }
  }
  if (true_count_ >= config_.k + 1) falsified_ = Falsification{std::nullopt, true};
}

void RvipAdversary::Assume(VarId v, bool value) { Set(v, value); }

void RvipAdversary::Commit(const std::vector<Literal>& query, bool value) {
  Answer a = Ask(query);
  if (!a.free() && a.value != value) {
    throw ProtocolError("committed value contradicts a forced answer");
  }
  if (a.free()) ++free_choices_;
  auto answer_var = [&](VarId v, bool val) {
    const VarInfo& x = shared_->info[v];
    const auto [si, sj] = source_;
    bool above = x.kind == Kind::kS && val && x.i > si;
    bool advance = x.kind == Kind::kS && val && x.i == si && x.j == sj &&
                   x.l == NextNonBusy(x.i);
    Set(v, val);
    if (above) Set(shared_->p_var[x.i][x.j], false);
    if (advance) {
      for (VarId g : shared_->group[x.l]) {
        const VarInfo& y = shared_->info[g];
        if (y.kind == Kind::kR) Set(g, true);
      }
      Set(shared_->p_var[x.l][x.m], true);
    }
  };
  if (!value) {
    for (Literal l : query) answer_var(l.var, !l.positive);
    return;
  }
  // Pick the literal that makes the disjunction true.
  const Literal* chosen = nullptr;
  for (const Literal& l : query) {
    Answer p = Policy(l.var);
    if (a.free() ? p.free() : (!p.free() && p.value == l.positive)) {
      chosen = &l;
      break;
    }
  }
  answer_var(chosen->var, chosen->positive);
  if (!a.free() || query.size() < 2) return;
  // Positive disjunctions over R^s_i / P_{i,j}: everything else of that
  // form for element i becomes false.
  const VarInfo& x = shared_->info[chosen->var];
  bool group_query = true;
  for (Literal l : query) {
    const VarInfo& y = shared_->info[l.var];
    if (!l.positive || y.kind == Kind::kS || y.i != x.i) group_query = false;
  }
  if (!group_query) return;
  for (VarId g : shared_->group[x.i]) Set(g, false);
}

Answer RvipAdversary::Play(const std::vector<Literal>& query, bool choice) {
  Answer a = Ask(query);
  Commit(query, a.free() ? choice : a.value);
  return a;
}

bool RvipAdversary::InvariantHolds() const {
  return counted_trues() >= config_.k ||
         free_choices_ >= config_.n - config_.k;
}

void RvipAdversary::CheckConsistency() const {
  const int n = config_.n;
  std::vector<char> busy(n + 1, 0);
  std::pair<int, int> source = {1, 1};
  std::vector<int> r_true(n + 1, 0);
  for (VarId v = 1; v <= shared_->formula.num_vars(); ++v) {
    std::optional<bool> val = record_.Get(v);
    if (!val) continue;
    const VarInfo& x = shared_->info[v];
    if (x.kind == Kind::kR) {
      busy[x.i] = 1;
      if (*val) ++r_true[x.i];
    }
    if (*val && x.kind != Kind::kR) busy[x.i] = 1;
  }
  for (int i = 1; i <= n; ++i) {
    if (r_true[i] != r_) continue;
    for (int j = 1; j <= n; ++j) {
      if (record_.Get(shared_->p_var[i][j]) == true) {
        source = {i, j};
        break;
      }
    }
  }
  if (busy != busy_) throw std::logic_error("busy set out of sync");
  if (source != source_) throw std::logic_error("source out of sync");
}

namespace {

Transcript Finish(const RvipAdversary& adv, std::vector<Move> moves,
                  bool truncated) {
  Transcript t;
  t.moves = std::move(moves);
  t.falsified = adv.Falsified();
  t.true_count = adv.true_count();
  t.counted_trues = adv.counted_trues();
  t.free_choices = adv.free_choices();
  t.invariant_ok = !t.falsified || adv.InvariantHolds();
  t.truncated = truncated;
  return t;
}

}  // namespace

Transcript PlayRandom(const GameConfig& config, uint64_t seed, int max_moves) {
  RvipAdversary adv(config);
  std::mt19937_64 rng(seed);
  std::vector<VarId> open(adv.formula().num_vars());
  std::iota(open.begin(), open.end(), 1);
  std::vector<Move> moves;
  while (!adv.Falsified() && !open.empty()) {
    if (static_cast<int>(moves.size()) >= max_moves) {
      return Finish(adv, std::move(moves), true);
    }
    size_t pick = std::uniform_int_distribution<size_t>(0, open.size() - 1)(rng);
    VarId v = open[pick];
    open[pick] = open.back();
    open.pop_back();
    if (adv.record().IsSet(v)) continue;
    std::vector<Literal> q = {{v, true}};
    Answer a = adv.Ask(q);
    bool value = a.free() ? (rng() & 1) != 0 : a.value;
    adv.Commit(q, value);
    moves.push_back({q, a, value});
  }
  return Finish(adv, std::move(moves), false);
}

Transcript PlayScripted(const GameConfig& config, const DecisionTree& tree,
                        bool free_value) {
  RvipAdversary adv(config);
  std::vector<Move> moves;
  int node = tree.root();
  while (!adv.Falsified()) {
    const DecisionNode& d = tree.node(node);
    if (d.is_leaf()) break;
    bool known_true = false;
    std::vector<Literal> open;
    for (Literal l : d.query) {
      Truth t = adv.record().Value(l);
      if (t == Truth::kTrue) known_true = true;
      if (t == Truth::kUndetermined) open.push_back(l);
    }
    bool value;
    if (known_true) {
      value = true;
    } else if (open.empty()) {
      value = false;
    } else {
      Answer a = adv.Ask(open);
      value = a.free() ? free_value : a.value;
      adv.Commit(open, value);
      moves.push_back({open, a, value});
    }
    node = value ? d.if_true : d.if_false;
  }
  return Finish(adv, std::move(moves), false);
}

namespace {

class Exhaustive {
 public:
  Exhaustive(const std::vector<VarId>& order, long long max_leaves)
      : order_(order), max_leaves_(max_leaves) {}

  void Run(RvipAdversary adv, size_t pos) {
    while (true) {
      if (stats_.leaves >= max_leaves_) {
        stats_.truncated = true;
        return;
      }
      if (adv.Falsified()) {
        ++stats_.leaves;
        stats_.max_free_choices =
            std::max(stats_.max_free_choices, adv.free_choices());
        if (!adv.InvariantHolds()) {
          if (stats_.violations++ == 0) {
            stats_.first_violation = Finish(adv, moves_, false);
          }
        }
        return;
      }
      while (pos < order_.size() && adv.record().IsSet(order_[pos])) ++pos;
      if (pos == order_.size()) {
        ++stats_.leaves;
        return;
      }
      std::vector<Literal> q = {{order_[pos], true}};
      Answer a = adv.Ask(q);
      if (a.free()) {
        RvipAdversary branch = adv;
        branch.Commit(q, true);
        size_t depth = moves_.size();
        moves_.push_back({q, a, true});
        Run(std::move(branch), pos + 1);
        moves_.resize(depth);
        adv.Commit(q, false);
        moves_.push_back({q, a, false});
        Run(std::move(adv), pos + 1);
        moves_.resize(depth);
        return;
      }
      adv.Commit(q, a.value);
      moves_.push_back({q, a, a.value});
      ++pos;
    }
  }

  ExhaustiveStats stats_;

 private:
  const std::vector<VarId>& order_;
  long long max_leaves_;
  std::vector<Move> moves_;
};

}  // namespace

ExhaustiveStats PlayExhaustive(const GameConfig& config,
                               const std::vector<VarId>& order,
                               long long max_leaves) {
  Exhaustive e(order, max_leaves);
  e.Run(RvipAdversary(config), 0);
  return e.stats_;
}

std::vector<std::vector<VarId>> StandardOrders(const Formula& f, int shuffles,
                                               uint64_t seed) {
  std::vector<VarId> lex(f.num_vars());
  std::iota(lex.begin(), lex.end(), 1);
  std::vector<std::vector<VarId>> out = {lex, {lex.rbegin(), lex.rend()}};
  std::vector<VarId> by_element = lex;
  std::stable_sort(by_element.begin(), by_element.end(), [&](VarId a, VarId b) {
    return f.symbol(a).coords[0] > f.symbol(b).coords[0];
  });
  out.push_back(by_element);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < shuffles; ++s) {
    std::vector<VarId> o = lex;
    std::shuffle(o.begin(), o.end(), rng);
    out.push_back(std::move(o));
  }
  return out;
}

std::string TranscriptToJson(const Transcript& t, const Formula& f) {
  nlohmann::json moves = nlohmann::json::array();
  for (const Move& m : t.moves) {
    moves.push_back({{"query", ClauseToString(JClause::FromLiterals(m.query), f)},
                     {"answer", m.answer.free() ? "free" : "forced"},
                     {"value", m.value}});
  }
  nlohmann::json j = {{"moves", moves},
                      {"true_count", t.true_count},
                      {"counted_trues", t.counted_trues},
                      {"free_choices", t.free_choices},
                      {"invariant_ok", t.invariant_ok},
                      {"truncated", t.truncated}};
  if (t.falsified) {
    if (t.falsified->param) {
      j["falsified"] = {{"param_axiom", true}};
    } else {
      int c = *t.falsified->clause;
      j["falsified"] = {{"clause_index", c},
                        {"clause", ClauseToString(f.clauses()[c], f)}};
    }
  } else {
    j["falsified"] = nullptr;
  }
  return j.dump(2);
}

long long RecurrenceT(int n, int k) {
  if (k < 0 || k > n) throw ParameterError("recurrence needs 0 <= k <= n");
  const int q_max = n - k;
  std::vector<std::vector<long long>> t(k + 1,
                                        std::vector<long long>(q_max + 1, 0));
  for (int p = k; p >= 0; --p) {
    for (int q = q_max; q >= 0; --q) {
      if (p >= k || q >= q_max) {
        t[p][q] = 0;
      } else {
        t[p][q] = t[p + 1][q] + t[p][q + 1] + 1;
      }
    }
  }
  return t[0][0];
}

double LowerBound(int n, int k) {
  return std::pow(static_cast<double>(n), k / 16.0);
}

}  // namespace pres
