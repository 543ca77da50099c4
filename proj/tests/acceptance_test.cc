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

// Acceptance run: one PASS/FAIL line per criterion. Exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pres/builders.h"
#include "pres/core.h"
#include "pres/decision_tree.h"
#include "pres/families.h"
#include "pres/games.h"
#include "pres/proof.h"
#include "pres/restrict.h"
#include "pres/search.h"

namespace pres {
namespace {

// Runtime limits in seconds.
constexpr double kLimitCounts = 1.0;
constexpr double kLimitBuilders = 30.0;
constexpr double kLimitErrata = 10.0;
constexpr double kLimitGames = 60.0;
constexpr double kLimitRestrict = 60.0;

// Slope targets for the growth fits.
constexpr double kRipSlope = 2.0;
constexpr double kRipSlopeTol = 0.3;
constexpr double kRvipSlopeMax = 4.3;
constexpr double kRlnpSlopeMax = 4.5;

constexpr uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages.
class Failures {
 public:
  void Add(const std::string& msg) {
    ++count_;
    if (count_ <= 3) text_ += (text_.empty() ? "" : "; ") + msg;
  }
  bool empty() const { return count_ == 0; }
  std::string text() const {
    return text_ + (count_ > 3 ? "; +" + std::to_string(count_ - 3) + " more" : "");
  }

 private:
  int count_ = 0;
  std::string text_;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string Fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

// Least-squares slope of log(y) against log(x).
double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

long long Choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long c = 1;
  for (long long i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

long long Factorial(int c) {
  long long f = 1;
  for (int i = 2; i <= c; ++i) f *= i;
  return f;
}

Outcome GeneratorCounts() {
  Failures fail;
  int formulas = 0;
  auto pass = [&]() {
    std::ostringstream all;
    for (long long n = 2; n <= 6; ++n) {
      const int ni = static_cast<int>(n);
      const long long n2 = n * n, n3 = n2 * n;
      auto check = [&](const FamilySpec& spec, long long vars, long long clauses) {
        Formula f = Generate(spec);
        ++formulas;
        if (f.num_vars() != vars || f.num_clauses() != clauses) {
          fail.Add(FamilyName(spec.family) + " n=" + std::to_string(n) + " got " +
                   std::to_string(f.num_vars()) + "/" +
                   std::to_string(f.num_clauses()));
        }
        all << SerializeJcnf(f);
      };
      check({.family = Family::IP, .n = ni}, n2, n2 + 1);
      check({.family = Family::RIP, .n = ni}, n2 + n, 2 * n2 - n + 3);
      check({.family = Family::RVIP, .n = ni}, n + n2 + (n - 1) * n3,
            2 * (n - 1) * n3 + n2 + 3);
      check({.family = Family::RLNP, .n = ni}, n + 2 * n2, n3 + 2 * n2 + 2 * n + 1);
      check({.family = Family::SigmaPST, .n = ni}, n + 2 * n2, n + n2);
      for (long long r = 1; r <= 3; ++r) {
        check({.family = Family::RVIPr, .n = ni, .r = static_cast<int>(r)},
              r * n + n2 + (n - 1) * n3,
              (r + 1) * (n - 1) * n3 + n * (n - 1) + n + 2 * r + 1);
      }
      for (long long k = 0; k <= 3; ++k) {
        const int ki = static_cast<int>(k);
        check({.family = Family::PHP, .n = ni, .k = ki}, (k + 1) * n + n * k,
              n * Choose(k + 1, 2) + k * Choose(n, 2) + k + (k + 1) * n);
        for (Family base : {Family::IP, Family::RIP, Family::SigmaPST}) {
          Formula b = Generate({.family = base, .n = ni});
          check({.family = Family::SigmaPrime, .n = ni, .k = ki, .base = base},
                b.num_vars() + 1 + 2 * (k + 1), b.num_clauses() + k + 1);
        }
      }
    }
    return all.str();
  };
  auto start = std::chrono::steady_clock::now();
  std::string first = pass();
  std::string second = pass();
  double secs = Seconds(start);
  if (first != second) fail.Add("serialization differs between runs");
  if (secs >= kLimitCounts) fail.Add("runtime " + Fixed(secs) + "s");
  return {fail.empty(), std::to_string(formulas / 2) + " formulas, " +
                            Fixed(secs) + "s" +
                            (fail.empty() ? "" : ": " + fail.text())};
}

Outcome BuildersVerify() {
  Failures fail;
  int built = 0;
  auto start = std::chrono::steady_clock::now();
  auto verify = [&](const std::string& name, const BuildResult& b) {
    ++built;
    CheckReport r = Check(b.proof, b.formula);
    if (!r.ok) fail.Add(name + " line " + std::to_string(r.failure_line) + ": " + r.reason);
    return r;
  };
  for (int n = 2; n <= 12; ++n) {
    BuildResult ip = BuildIpRes1(n);
    verify("ip-res1 n=" + std::to_string(n), ip);
    if (ip.query_nodes != n + n * (n - 1) / 2) {
      fail.Add("ip-res1 n=" + std::to_string(n) + " query nodes " +
               std::to_string(ip.query_nodes));
    }
    verify("rip-res2 n=" + std::to_string(n), BuildRipRes2(n));
    verify("rlnp-res2 n=" + std::to_string(n), BuildRlnpRes2(n));
  }
  for (int n = 2; n <= 6; ++n) {
    for (std::optional<int> r : {std::optional<int>(), std::optional<int>(1),
                                 std::optional<int>(2)}) {
      verify("rvip-resj n=" + std::to_string(n) + " r=" + (r ? std::to_string(*r) : "-"),
             BuildRvipResJ(n, r));
    }
  }
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= 3 && k + 1 <= n; ++k) {
      std::string name = "pst-pres2 n=" + std::to_string(n) + " k=" + std::to_string(k);
      CheckReport r = verify(name, BuildPstPres2(n, k));
      long long expected = (k + 1) * (2 * n + 1) + (k + 2);
      if (r.ok && r.size_lines != expected) {
        fail.Add(name + " lines " + std::to_string(r.size_lines));
      }
    }
  }
  for (int n = 2; n <= 6; ++n) {
    BuildResult ip = BuildIpRes1(n);
    for (int k = 0; k <= 3; ++k) {
      verify("sigma-prime ip n=" + std::to_string(n) + " k=" + std::to_string(k),
             BuildSigmaPrime(ip.proof, ip.formula, k));
      if (k + 1 <= n) {
        BuildResult pst = BuildPstPres2(n, k);
        verify("sigma-prime pst n=" + std::to_string(n) + " k=" + std::to_string(k),
               BuildSigmaPrime(pst.proof, pst.formula, k));
      }
    }
  }
  double secs = Seconds(start);
  if (secs >= kLimitBuilders) fail.Add("runtime " + Fixed(secs) + "s");
  return {fail.empty(), std::to_string(built) + " proofs checked, " + Fixed(secs) +
                            "s" + (fail.empty() ? "" : ": " + fail.text())};
}

Outcome GrowthExponents() {
  // Each grid covers every n that the builder check above also covers.
  auto fit = [](const std::function<BuildResult(int)>& build, int lo, int hi,
                double* tail) {
    std::vector<double> xs, ys;
    for (int n = lo; n <= hi; ++n) {
      BuildResult b = build(n);
      xs.push_back(n);
      ys.push_back(static_cast<double>(Check(b.proof, b.formula).size_lines));
    }
    const size_t m = xs.size();
    *tail = std::log(ys[m - 1] / ys[m - 2]) / std::log(xs[m - 1] / xs[m - 2]);
    return LogLogSlope(xs, ys);
  };
  double rip_tail, rvip_tail, rlnp_tail;
  double rip = fit(BuildRipRes2, 2, 12, &rip_tail);
  double rvip = fit([](int n) { return BuildRvipResJ(n, 1); }, 2, 6, &rvip_tail);
  double rlnp = fit(BuildRlnpRes2, 2, 12, &rlnp_tail);
  bool pass = std::abs(rip - kRipSlope) <= kRipSlopeTol && rvip <= kRvipSlopeMax &&
              rlnp <= kRlnpSlopeMax;
  return {pass, "rip-res2 n=2..12 slope " + Fixed(rip) + " (last step " +
                    Fixed(rip_tail) + "), rvip-resj r=1 n=2..6 slope " + Fixed(rvip) +
                    " (last step " + Fixed(rvip_tail) + "), rlnp-res2 n=2..12 slope " +
                    Fixed(rlnp) + " (last step " + Fixed(rlnp_tail) + ")"};
}

Outcome FptBounded() {
  Failures fail;
  std::string sizes;
  for (Family family : {Family::IP, Family::RIP}) {
    for (int k = 1; k <= 4; ++k) {
      long long expected = 0;
      for (int c = 1; c <= k + 1; ++c) expected += Factorial(c);
      long long a = BuildFptPres1(family, 20, k).query_nodes;
      long long b = BuildFptPres1(family, 40, k).query_nodes;
      std::string tag = FamilyName(family) + " k=" + std::to_string(k);
      if (a != b) fail.Add(tag + " differs: " + std::to_string(a) + " vs " + std::to_string(b));
      if (a != expected) fail.Add(tag + " size " + std::to_string(a));
      if (a > 2 * Factorial(k + 1)) fail.Add(tag + " above 2(k+1)!");
      if (family == Family::IP) sizes += (k > 1 ? "," : "") + std::to_string(a);
    }
  }
  return {fail.empty(), "query nodes k=1..4: " + sizes +
                            (fail.empty() ? "" : ": " + fail.text())};
}

Outcome Errata() {
  Failures fail;
  auto start = std::chrono::steady_clock::now();
  for (int n = 2; n <= 3; ++n) {
    if (FindModel(Generate({.family = Family::RLNP, .n = n}))) {
      fail.Add("RLNP_" + std::to_string(n) + " satisfiable");
    }
  }
  if (!FindModel(Generate({.family = Family::RLNP, .n = 3, .as_printed = true}))) {
    fail.Add("as-printed RLNP_3 unsatisfiable");
  }
  Classification rvip = Classify(Generate({.family = Family::RVIP, .n = 2}), 1);
  if (rvip != Classification::kStrong) fail.Add("RVIP_2 " + ClassificationName(rvip));
  Classification pst = Classify(Generate({.family = Family::SigmaPST, .n = 3}), 2);
  if (pst != Classification::kParameterizedOnly) fail.Add("PST_3 " + ClassificationName(pst));
  double secs = Seconds(start);
  if (secs >= kLimitErrata) fail.Add("runtime " + Fixed(secs) + "s");
  return {fail.empty(), Fixed(secs) + "s" + (fail.empty() ? "" : ": " + fail.text())};
}

Outcome AdversarySurvival() {
  Failures fail;
  auto start = std::chrono::steady_clock::now();
  GameConfig small{.n = 4, .k = 2};
  RvipAdversary adv(small);
  long long leaves = 0, violations = 0;
  for (const auto& order : StandardOrders(adv.formula(), 3, kSeed)) {
    ExhaustiveStats s = PlayExhaustive(small, order);
    leaves += s.leaves;
    violations += s.violations;
    if (s.truncated) fail.Add("exhaustive run truncated");
  }
  GameConfig large{.n = 8, .k = 3};
  const int plays = 10'000;
  long long random_violations = 0, unfinished = 0;
  for (int p = 0; p < plays; ++p) {
    Transcript t = PlayRandom(large, kSeed + p);
    if (!t.invariant_ok) ++random_violations;
    if (t.truncated || !t.falsified) ++unfinished;
  }
  if (violations) fail.Add(std::to_string(violations) + " exhaustive violations");
  if (random_violations) fail.Add(std::to_string(random_violations) + " random violations");
  if (unfinished) fail.Add(std::to_string(unfinished) + " plays without falsification");
  double secs = Seconds(start);
  if (secs >= kLimitGames) fail.Add("runtime " + Fixed(secs) + "s");
  return {fail.empty(), "(4,2) exhaustive " + std::to_string(leaves) +
                            " leaves, (8,3) " + std::to_string(plays) + " plays, " +
                            Fixed(secs) + "s" + (fail.empty() ? "" : ": " + fail.text())};
}

Outcome Recurrence() {
  Failures fail;
  int below = 0;
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      long long t = RecurrenceT(n, k);
      if (t != Choose(n, k) - 1) {
        fail.Add("T(" + std::to_string(n) + "," + std::to_string(k) + ")=" +
                 std::to_string(t));
      }
      if (k >= 4 && static_cast<double>(t) < LowerBound(n, k)) {
        ++below;
        fail.Add("T(" + std::to_string(n) + "," + std::to_string(k) + ")=" +
                 std::to_string(t) + " < n^(k/16)=" + Fixed(LowerBound(n, k)));
      }
    }
  }
  return {fail.empty(), fail.empty() ? "closed form and lower bound hold for n<=20"
                                     : std::to_string(below) +
                                           " pairs below n^(k/16): " + fail.text()};
}

Outcome RestrictionStatistics() {
  auto start = std::chrono::steady_clock::now();
  EstimateReport lit = EstimatePerLiteral(10'000, 100'000, kSeed);
  EstimateReport surv = EstimateSurvival(100, 7, 1'000'000, kSeed);
  double secs = Seconds(start);
  bool pass = lit.pass && surv.pass && secs < kLimitRestrict;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "per-literal rate %.5f vs bound %.5f (3 sigma %.5f); survival "
                "rate %.2e vs bound %.2e (3 sigma %.2e); %.1fs",
                lit.empirical_rate, lit.bound, 3 * lit.sigma, surv.empirical_rate,
                surv.bound, 3 * surv.sigma, secs);
  return {pass, buf};
}

Outcome OracleConsistency() {
  Failures fail;
  std::string sizes;
  struct Case {
    std::string name;
    BuildResult built;
  };
  std::vector<Case> cases = {{"IP_3", BuildIpRes1(3)}, {"RIP_3", BuildRipRes2(3)}};
  for (const Case& c : cases) {
    for (int k = 1; k <= 2; ++k) {
      MinTreeResult m = MinTreeSize(c.built.formula, k);
      std::string tag = c.name + " k=" + std::to_string(k);
      sizes += (sizes.empty() ? "" : ", ") + tag + ": " + std::to_string(m.size) +
               "<=" + std::to_string(c.built.query_nodes);
      if (m.size > c.built.query_nodes) fail.Add(tag + " above builder");
      Proof p = TreeToProof(m.tree, c.built.formula, 1, k);
      CheckReport r = Check(p, c.built.formula);
      if (!r.ok) fail.Add(tag + " translation rejected: " + r.reason);
    }
  }
  return {fail.empty(), sizes + (fail.empty() ? "" : ": " + fail.text())};
}

}  // namespace
}  // namespace pres

int main() {
  using pres::Outcome;
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"generator-counts", pres::GeneratorCounts},
      {"builders-verify", pres::BuildersVerify},
      {"growth-exponents", pres::GrowthExponents},
      {"fpt-bounded", pres::FptBounded},
      {"erratum-checks", pres::Errata},
      {"adversary-survival", pres::AdversarySurvival},
      {"recurrence", pres::Recurrence},
      {"restriction-statistics", pres::RestrictionStatistics},
      {"oracle-consistency", pres::OracleConsistency},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s (%s)\n", o.pass ? "PASS" : "FAIL", index++, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
