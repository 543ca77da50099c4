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

#include "pres/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pres/builders.h"
#include "pres/core.h"
#include "pres/families.h"
#include "pres/games.h"
#include "pres/proof.h"
#include "pres/restrict.h"
#include "pres/search.h"

namespace pres {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadInput(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read " + path);
  buf << file.rdbuf();
  return buf.str();
}

void WriteOutput(const std::string& path, const std::string& text,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

std::string FormatFormula(const Formula& f, const std::string& format) {
  return format == "structured" ? SerializeStructured(f) + "\n"
                                : SerializeJcnf(f);
}

json ReportJson(const CheckReport& r) {
  json j = {{"ok", r.ok},
            {"size_lines", r.size_lines},
            {"size_literal_occurrences", r.size_literal_occurrences},
            {"param_axioms_used", r.param_axioms_used}};
  if (!r.ok) {
    j["failure"] = {{"line", r.failure_line},
                    {"kind", FailureName(r.failure)},
                    {"reason", r.reason}};
  }
  return j;
}

std::string ReportText(const CheckReport& r) {
  std::ostringstream os;
  if (r.ok) {
    os << "ok lines=" << r.size_lines
       << " literals=" << r.size_literal_occurrences
       << " param_axioms=" << r.param_axioms_used << "\n";
  } else {
    os << "FAILED line " << r.failure_line << " (" << FailureName(r.failure)
       << "): " << r.reason << "\n";
  }
  return os.str();
}

uint64_t RequireSeed(const std::optional<uint64_t>& seed,
                     const std::string& what) {
  if (!seed) throw UsageError(what + " requires --seed");
  return *seed;
}

// Literals separated by spaces: a variable name or id, optionally negated
// with '-' or '~'.
std::vector<Literal> ParseQuery(const std::string& line, const Formula& f) {
  std::istringstream is(line);
  std::vector<Literal> q;
  std::string tok;
  while (is >> tok) {
    bool positive = true;
    if (tok[0] == '-' || tok[0] == '~') {
      positive = false;
      tok = tok.substr(1);
    }
    if (tok.empty()) throw FormatError("empty literal");
    VarId v = 0;
    if (std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      v = std::stoi(tok);
      if (v < 1 || v > f.num_vars()) throw FormatError("unknown variable " + tok);
    } else {
      auto found = f.Find(VarSymbol::Parse(tok));
      if (!found) throw FormatError("unknown variable " + tok);
      v = *found;
    }
    q.push_back({v, positive});
  }
  return q;
}

std::string DescribeFalsified(const Falsification& fal, const Formula& f) {
  if (fal.clause) {
    return "axiom " + std::to_string(*fal.clause) + ": " +
           ClauseToString(f.clauses()[*fal.clause], f);
  }
  return "parameterized axiom";
}

int RunRepl(const GameConfig& config, const std::string& out_path,
            std::istream& in, std::ostream& out) {
  RvipAdversary adv(config);
  const Formula& f = adv.formula();
  Transcript t;
  out << "Enter a disjunction of literals (e.g. R_2 -P_2,1), :state or :quit.\n";
  std::string line;
  while (!adv.Falsified()) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    if (line.empty()) continue;
    if (line == ":quit") break;
    if (line == ":state") {
      json s = {{"true_count", adv.true_count()},
                {"free_choices", adv.free_choices()},
                {"busy", adv.busy()},
                {"source", {adv.source().first, adv.source().second}}};
      out << s.dump() << "\n";
      continue;
    }
    try {
      std::vector<Literal> q = ParseQuery(line, f);
      if (q.empty()) continue;
      Answer a = adv.Ask(q);
      bool value = a.value;
      if (a.free()) {
        out << "free choice: answer 1 (true) or 0 (false)? " << std::flush;
        std::string choice;
        if (!std::getline(in, choice)) break;
        value = !choice.empty() && choice[0] == '1';
      } else {
        out << (value ? "true" : "false") << "\n";
      }
      adv.Commit(q, value);
      t.moves.push_back({q, a, value});
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  t.falsified = adv.Falsified();
  t.true_count = adv.true_count();
  t.counted_trues = adv.counted_trues();
  t.free_choices = adv.free_choices();
  t.invariant_ok = adv.InvariantHolds();
  if (t.falsified) {
    out << "falsified " << DescribeFalsified(*t.falsified, f)
        << " true_count=" << t.true_count
        << " free_choices=" << t.free_choices << "\n";
  }
  if (!out_path.empty()) WriteOutput(out_path, TranscriptToJson(t, f), out);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameterized resolution laboratory", "pres"};
  app.require_subcommand(1);

  std::string format = "jcnf";
  std::string out_path;

  auto* gen = app.add_subcommand("gen", "Generate a formula family");
  std::string family_name, base_name = "ip";
  int n = 0;
  std::optional<int> r, k;
  bool as_printed = false;
  gen->add_option("--family", family_name, "ip, rip, rvip, rvipr, rlnp, pst, php, sigmaprime")
      ->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--r", r);
  gen->add_option("--k", k);
  gen->add_option("--base", base_name, "Family padded by sigmaprime");
  gen->add_flag("--as-printed", as_printed);
  gen->add_option("--format", format)->check(CLI::IsMember({"jcnf", "structured"}));
  gen->add_option("--out", out_path);

  auto* check = app.add_subcommand("check", "Check a proof against a formula");
  std::string formula_path, proof_path;
  bool probe = false;
  check->add_option("formula", formula_path)->required();
  check->add_option("proof", proof_path, "Proof file, - for stdin")->required();
  check->add_flag("--probe", probe, "Also confirm unsatisfiability by search");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));

  auto* build = app.add_subcommand("build", "Build and check a refutation");
  std::string method_name, formula_out;
  build->add_option("--method", method_name)->required();
  build->add_option("--n", n)->required();
  build->add_option("--k", k);
  build->add_option("--r", r);
  build->add_option("--family", family_name, "Target family for fpt-pres1");
  build->add_option("--out", out_path, "Proof file (default stdout)");
  build->add_option("--formula-out", formula_out);

  auto* play = app.add_subcommand("play", "Play the Prover-Adversary game");
  std::string prover = "random";
  std::optional<uint64_t> seed;
  int plays = 1, shuffles = 3;
  long long max_leaves = 50'000'000;
  bool exempt_units = false;
  play->add_option("--family", family_name, "rvip or rvipr")->required();
  play->add_option("--n", n)->required();
  play->add_option("--k", k)->required();
  play->add_option("--r", r);
  play->add_option("--prover", prover)
      ->check(CLI::IsMember({"random", "exhaustive", "repl"}));
  play->add_option("--seed", seed);
  play->add_option("--plays", plays);
  play->add_option("--shuffles", shuffles, "Seeded query orders for exhaustive");
  play->add_option("--max-leaves", max_leaves);
  play->add_flag("--exempt-units", exempt_units);
  play->add_option("--out", out_path, "Transcript file");

  auto* restrict = app.add_subcommand("restrict", "Sample an RLNP restriction");
  std::string apply_path;
  restrict->add_option("--n", n)->required();
  restrict->add_option("--seed", seed);
  restrict->add_option("--apply", apply_path, "Formula to restrict");
  restrict->add_option("--format", format)->check(CLI::IsMember({"jcnf", "structured"}));

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo survival rates");
  long long trials = 0;
  std::string sampler = "uniform";
  bool per_literal = false;
  int threads = 0;
  estimate->add_option("--n", n)->required();
  estimate->add_option("--k", k);
  estimate->add_option("--trials", trials)->required();
  estimate->add_option("--seed", seed);
  estimate->add_option("--sampler", sampler)
      ->check(CLI::IsMember({"uniform", "stratified"}));
  estimate->add_flag("--per-literal", per_literal);
  estimate->add_option("--threads", threads);

  auto* minsize = app.add_subcommand("minsize", "Minimum tree refutation size");
  int max_vars = 16;
  minsize->add_option("formula", formula_path)->required();
  minsize->add_option("--k", k);
  minsize->add_option("--max-vars", max_vars);
  minsize->add_option("--proof-out", out_path);

  auto* classify = app.add_subcommand("classify", "Classify a contradiction");
  classify->add_option("formula", formula_path)->required();
  classify->add_option("--k", k)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(gen)) {
      FamilySpec spec{.family = ParseFamily(family_name), .n = n, .r = r,
                      .k = k, .as_printed = as_printed,
                      .base = ParseFamily(base_name)};
      WriteOutput(out_path, FormatFormula(Generate(spec), format), out);
      return kExitOk;
    }

    if (app.got_subcommand(check)) {
      Formula f = ParseFormula(ReadInput(formula_path, in));
      CheckReport report;
      try {
        Proof p = ParseProof(ReadInput(proof_path, in));
        report = Check(p, f);
        if (report.ok && probe && !SoundnessProbe(p, f)) {
          report.ok = false;
          report.reason = "soundness probe found a model";
        }
      } catch (const FormatError& e) {
        report.ok = false;
        report.failure = Failure::kMalformed;
        report.failure_line = e.line();
        report.reason = e.what();
      }
      out << (format == "structured" ? ReportJson(report).dump(2) + "\n"
                                     : ReportText(report));
      return report.ok ? kExitOk : kExitFailed;
    }

    if (app.got_subcommand(build)) {
      BuildRequest req{.method = ParseBuildMethod(method_name), .n = n, .k = k,
                       .r = r};
      if (!family_name.empty()) req.family = ParseFamily(family_name);
      BuildResult result = Build(req);
      CheckReport report = Check(result.proof, result.formula);
      WriteOutput(out_path, SerializeProof(result.proof) + "\n", out);
      if (!formula_out.empty()) {
        WriteOutput(formula_out, SerializeJcnf(result.formula), out);
      }
      json j = ReportJson(report);
      j["method"] = BuildMethodName(req.method);
      j["n"] = n;
      if (result.tree) j["query_nodes"] = result.query_nodes;
      (out_path.empty() ? err : out) << j.dump() << "\n";
      return report.ok ? kExitOk : kExitFailed;
    }

    if (app.got_subcommand(play)) {
      Family fam = ParseFamily(family_name);
      if (fam != Family::RVIP && fam != Family::RVIPr) {
        throw UsageError("play supports rvip and rvipr only");
      }
      if (fam == Family::RVIPr && !r) throw UsageError("rvipr needs --r");
      GameConfig config{.n = n, .k = *k,
                        .r = fam == Family::RVIPr ? r : std::nullopt,
                        .exempt_units = exempt_units};
      if (prover == "repl") return RunRepl(config, out_path, in, out);
      uint64_t s = RequireSeed(seed, "play --prover " + prover);
      json summary = {{"prover", prover}, {"seed", s}, {"n", n}, {"k", *k}};
      long long violations = 0;
      if (prover == "random") {
        json transcripts = json::array();
        int max_free = 0, max_true = 0;
        RvipAdversary probe_adv(config);
        for (int p = 0; p < plays; ++p) {
          Transcript t = PlayRandom(config, s + p);
          violations += !t.invariant_ok;
          max_free = std::max(max_free, t.free_choices);
          max_true = std::max(max_true, t.true_count);
          if (!out_path.empty()) {
            transcripts.push_back(
                json::parse(TranscriptToJson(t, probe_adv.formula())));
          }
        }
        summary["plays"] = plays;
        summary["max_free_choices"] = max_free;
        summary["max_true_count"] = max_true;
        if (!out_path.empty()) WriteOutput(out_path, transcripts.dump(2), out);
      } else {
        RvipAdversary adv(config);
        long long leaves = 0;
        bool truncated = false;
        auto orders = StandardOrders(adv.formula(), shuffles, s);
        for (const auto& order : orders) {
          ExhaustiveStats st = PlayExhaustive(config, order, max_leaves);
          leaves += st.leaves;
          violations += st.violations;
          truncated |= st.truncated;
        }
        summary["orders"] = orders.size();
        summary["leaves"] = leaves;
        summary["truncated"] = truncated;
      }
      summary["violations"] = violations;
      out << summary.dump(2) << "\n";
      return violations == 0 ? kExitOk : kExitFailed;
    }

    if (app.got_subcommand(restrict)) {
      uint64_t s = RequireSeed(seed, "restrict");
      Restriction rho = SampleRlnpRestriction(n, s);
      if (!apply_path.empty()) {
        Formula f = ParseFormula(ReadInput(apply_path, in));
        err << "seed " << s << "\n";
        out << FormatFormula(RestrictFormula(f, rho.ToAssignment(f)), format);
        return kExitOk;
      }
      json pi = json::object();
      std::vector<int> free;
      for (int c : rho.C()) pi[std::to_string(c)] = rho.Pi(c);
      for (int i = 1; i < n; ++i) {
        if (!rho.InC(i) && i != rho.i0()) free.push_back(i);
      }
      json j = {{"n", n}, {"seed", s}, {"i0", rho.i0()}, {"C", rho.C()},
                {"pi", pi}, {"free", free}};
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(estimate)) {
      uint64_t s = RequireSeed(seed, "estimate");
      EstimateReport rep;
      if (per_literal) {
        rep = EstimatePerLiteral(n, trials, s, threads);
      } else {
        if (!k) throw UsageError("estimate needs --k unless --per-literal");
        rep = EstimateSurvival(n, *k, trials, s,
                               sampler == "stratified" ? ClauseSampler::kStratified
                                                       : ClauseSampler::kUniform,
                               threads);
      }
      json j = json::parse(EstimateToJson(rep));
      j["n"] = n;
      j["seed"] = s;
      if (!per_literal) j["k"] = *k;
      out << j.dump(2) << "\n";
      return rep.pass ? kExitOk : kExitFailed;
    }

    if (app.got_subcommand(minsize)) {
      Formula f = ParseFormula(ReadInput(formula_path, in));
      if (!k) k = f.k();
      MinTreeResult res = MinTreeSize(f, k, max_vars);
      json j = {{"size", res.size}, {"vars", f.num_vars()}};
      if (k) j["k"] = *k;
      if (!out_path.empty()) {
        WriteOutput(out_path, SerializeProof(TreeToProof(res.tree, f, 1, k)) + "\n",
                    out);
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(classify)) {
      Formula f = ParseFormula(ReadInput(formula_path, in));
      json j = {{"classification", ClassificationName(Classify(f, *k))},
                {"k", *k}};
      out << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pres
