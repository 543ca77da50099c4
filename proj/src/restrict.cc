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

#include "pres/restrict.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "json.hpp"
#include "pres/families.h"

namespace pres {
namespace {

constexpr long long kChunk = 4096;

long long UniformInt(std::mt19937_64& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// Floyd's algorithm: m distinct values from [1, universe].
std::vector<long long> SampleDistinct(long long universe, int m,
                                      std::mt19937_64& rng) {
  std::vector<long long> out;
  out.reserve(m);
  for (long long j = universe - m + 1; j <= universe; ++j) {
    long long t = UniformInt(rng, 1, j);
    bool seen = std::find(out.begin(), out.end(), t) != out.end();
    out.push_back(seen ? j : t);
  }
  return out;
}

// i0 and the elements of [n-1] \ {i0} outside C.
struct Core {
  int i0 = 0;
  std::vector<int> free;
};

Core SampleCore(int n, int root, std::mt19937_64& rng) {
  Core core;
  core.i0 = static_cast<int>(UniformInt(rng, 1, n - 1));
  for (long long x : SampleDistinct(n - 2, root - 2, rng)) {
    core.free.push_back(static_cast<int>(x < core.i0 ? x : x + 1));
  }
  return core;
}

template <typename Trial>
std::pair<long long, long long> RunChunks(long long trials, uint64_t seed,
                                          int threads, Trial trial) {
  const long long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<long long> hits(chunks, 0);
  std::atomic<long long> next{0};
  auto worker = [&] {
    for (long long c = next++; c < chunks; c = next++) {
      std::seed_seq seq{static_cast<uint32_t>(seed),
                        static_cast<uint32_t>(seed >> 32),
                        static_cast<uint32_t>(c),
                        static_cast<uint32_t>(c >> 32)};
      std::mt19937_64 rng(seq);
      long long count = std::min(kChunk, trials - c * kChunk);
      for (long long t = 0; t < count; ++t) hits[c] += trial(rng) ? 1 : 0;
    }
  };
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<int>(std::min<long long>(threads, chunks));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  long long total = 0;
  for (long long h : hits) total += h;
  return {trials, total};
}

EstimateReport MakeReport(long long trials, long long hits, double bound) {
  EstimateReport r;
  r.trials = trials;
  r.hits = hits;
  r.empirical_rate = trials ? static_cast<double>(hits) / trials : 0;
  r.bound = bound;
  r.sigma = trials ? std::sqrt(bound * (1 - bound) / trials) : 0;
  r.pass = r.empirical_rate <= bound + 3 * r.sigma;
  return r;
}

}  // namespace

long long RlnpNumVars(int n) { return n + 2LL * n * n; }

RlnpVar DecodeRlnpVar(int n, VarId v) {
  if (v < 1 || v > RlnpNumVars(n)) {
    throw ParameterError("variable " + std::to_string(v) + " is not in RLNP_" +
                         std::to_string(n));
  }
  if (v <= n) return {VarKind::R, v, 0};
  long long t = v - n - 1;
  VarKind kind = VarKind::L;
  if (t >= 1LL * n * n) {
    kind = VarKind::S;
    t -= 1LL * n * n;
  }
  return {kind, static_cast<int>(t / n) + 1, static_cast<int>(t % n) + 1};
}

VarId EncodeRlnpVar(int n, const RlnpVar& x) {
  switch (x.kind) {
    case VarKind::R:
      return x.i;
    case VarKind::L:
      return n + (x.i - 1) * n + x.j;
    default:
      return n + n * n + (x.i - 1) * n + x.j;
  }
}

int ExactSqrt(int n) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (n < 9 || r * r != n) {
    throw ParameterError("n must be a perfect square >= 9, got " +
                         std::to_string(n));
  }
  return r;
}

Restriction Restriction::Sample(int n, std::mt19937_64& rng) {
  const int root = ExactSqrt(n);
  Core core = SampleCore(n, root, rng);
  Restriction rho;
  rho.n_ = n;
  rho.i0_ = core.i0;
  rho.in_c_.assign(n + 1, 0);
  for (int i = 1; i < n; ++i) rho.in_c_[i] = 1;
  rho.in_c_[core.i0] = 0;
  for (int f : core.free) rho.in_c_[f] = 0;
  for (int i = 1; i < n; ++i) {
    if (rho.in_c_[i]) rho.c_.push_back(i);
  }
  std::vector<int> image = rho.c_;
  std::shuffle(image.begin(), image.end(), rng);
  rho.pi_.assign(n + 1, 0);
  for (size_t t = 0; t < rho.c_.size(); ++t) rho.pi_[rho.c_[t]] = image[t];
  return rho;
}

Restriction SampleRlnpRestriction(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return Restriction::Sample(n, rng);
}

std::optional<bool> Restriction::Value(const RlnpVar& x) const {
  const int i = x.i, j = x.j;
  if (i < 1 || i > n_ || (x.kind != VarKind::R && (j < 1 || j > n_))) {
    return std::nullopt;
  }
  switch (x.kind) {
    case VarKind::R:
      if (i == n_ || i == i0_) return true;
      if (InC(i)) return false;
      return std::nullopt;
    case VarKind::L:
      if (i == i0_ && j == n_) return true;
      if (InC(i) && InC(j)) return pi_[j] == i;
      if ((InC(j) && i != i0_) || (InC(i) && j != i0_)) return false;
      return std::nullopt;
    case VarKind::S:
      if (i == i0_ && j == n_) return true;
      if (InC(i) && InC(j)) return pi_[j] == i;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<bool> Restriction::Value(VarId v) const {
  return Value(DecodeRlnpVar(n_, v));
}

std::optional<bool> Restriction::Value(const VarSymbol& s) const {
  if (s.superscript != 0) return std::nullopt;
  if (s.kind == VarKind::R && s.coords.size() == 1) {
    return Value(RlnpVar{VarKind::R, s.coords[0], 0});
  }
  if ((s.kind == VarKind::L || s.kind == VarKind::S) && s.coords.size() == 2) {
    return Value(RlnpVar{s.kind, s.coords[0], s.coords[1]});
  }
  return std::nullopt;
}

Assignment Restriction::ToAssignment(const Formula& f) const {
  Assignment a(f.num_vars());
  for (VarId v = 1; v <= f.num_vars(); ++v) {
    if (auto val = Value(f.symbol(v))) a.Set(v, *val);
  }
  return a;
}

bool Survives(const JClause& clause, const Restriction& rho) {
  auto vars = ParamAxioms::VarsOf(clause);
  if (!vars) throw ParameterError("not a parameterized clause");
  for (VarId v : *vars) {
    if (rho.Value(v) == false) return false;
  }
  return true;
}

int DistinctCoordinates(const JClause& clause, const Restriction& rho) {
  auto vars = ParamAxioms::VarsOf(clause);
  if (!vars) throw ParameterError("not a parameterized clause");
  const int n = rho.n(), i0 = rho.i0();
  const RlnpVar specials[] = {{VarKind::R, n, 0},
                              {VarKind::R, i0, 0},
                              {VarKind::L, i0, n},
                              {VarKind::S, i0, n}};
  std::vector<bool> used(4, false);
  std::set<int> coords;
  for (VarId v : *vars) {
    RlnpVar x = DecodeRlnpVar(n, v);
    bool special = false;
    for (int s = 0; s < 4 && !special; ++s) {
      const RlnpVar& y = specials[s];
      if (!used[s] && x.kind == y.kind && x.i == y.i && x.j == y.j) {
        used[s] = special = true;
      }
    }
    if (special) continue;
    coords.insert(x.i);
    if (x.kind != VarKind::R) coords.insert(x.j);
  }
  return static_cast<int>(coords.size());
}

double SurvivalBound(int n, int k) {
  return std::pow(static_cast<double>(n), -std::sqrt(k / 4.0));
}

double PerLiteralBound(int n) { return 2.0 / std::sqrt(static_cast<double>(n)); }

JClause SampleParamClause(int n, int k, ClauseSampler sampler,
                          std::mt19937_64& rng) {
  const long long total = RlnpNumVars(n);
  if (k < 0 || k + 1 > total) throw ParameterError("k out of range");
  std::vector<Literal> lits;
  if (sampler == ClauseSampler::kUniform) {
    for (long long v : SampleDistinct(total, k + 1, rng)) {
      lits.push_back({static_cast<VarId>(v), false});
    }
  } else {
    std::set<VarId> chosen;
    while (static_cast<int>(chosen.size()) < k + 1) {
      int kind = static_cast<int>(UniformInt(rng, 0, 2));
      int i = static_cast<int>(UniformInt(rng, 1, n));
      int j = static_cast<int>(UniformInt(rng, 1, n));
      RlnpVar x = kind == 0   ? RlnpVar{VarKind::R, i, 0}
                  : kind == 1 ? RlnpVar{VarKind::L, i, j}
                              : RlnpVar{VarKind::S, i, j};
      chosen.insert(EncodeRlnpVar(n, x));
    }
    for (VarId v : chosen) lits.push_back({v, false});
  }
  return JClause::FromLiterals(lits);
}

EstimateReport EstimateSurvival(int n, int k, long long trials, uint64_t seed,
                                ClauseSampler sampler, int threads) {
  ExactSqrt(n);
  auto [t, hits] = RunChunks(trials, seed, threads, [&](std::mt19937_64& rng) {
    Restriction rho = Restriction::Sample(n, rng);
    return Survives(SampleParamClause(n, k, sampler, rng), rho);
  });
  return MakeReport(t, hits, SurvivalBound(n, k));
}

EstimateReport EstimatePerLiteral(int n, long long trials, uint64_t seed,
                                  int threads) {
  const int root = ExactSqrt(n);
  auto [t, hits] = RunChunks(trials, seed, threads, [&](std::mt19937_64& rng) {
    Core core = SampleCore(n, root, rng);
    int i = static_cast<int>(UniformInt(rng, 1, n));
    // ~R_i stays open unless i lies in C.
    return i == n || i == core.i0 ||
           std::find(core.free.begin(), core.free.end(), i) != core.free.end();
  });
  return MakeReport(t, hits, PerLiteralBound(n));
}

std::string EstimateToJson(const EstimateReport& r) {
  nlohmann::json j = {{"trials", r.trials},
                      {"hits", r.hits},
                      {"empirical_rate", r.empirical_rate},
                      {"bound", r.bound},
                      {"sigma", r.sigma},
                      {"pass", r.pass}};
  return j.dump(2);
}

}  // namespace pres
