// Copyright 2026 The blindbench authors.
//
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

// Command-line front end: IP session sweeps, the two delegation-equivalence
// experiments, cheating-prover soundness sweeps, and the blindness audit.
// Every run is a pure function of its flags (plus BLINDBENCH_SEED), so
// repeated invocations emit byte-identical output.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blindbench/audit.hpp"
#include "blindbench/errors.hpp"
#include "blindbench/harness.hpp"
#include "blindbench/report.hpp"

namespace {

using namespace blindbench;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotBlind = 3;

struct CommonOpts {
  std::string formula;
  std::vector<std::string> formulas;  // audit only: repeatable --formula
  std::string gen;                    // "n,size"
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  CLI::Option* seed_opt = nullptr;
  unsigned servers = 3;
  std::uint64_t p = 0;
  bool allow_small_field = false;
  std::string oracle = "honest";
  std::string format = "table";
  std::string out;
};

void add_common_flags(CLI::App& cmd, CommonOpts& o, std::uint64_t def_runs,
                      bool multi_formula = false) {
  o.runs = def_runs;
  if (multi_formula)
    cmd.add_option("--formula", o.formulas, "QBF file (repeatable)");
  else
    cmd.add_option("--formula", o.formula, "QBF file to run");
  cmd.add_option("--gen", o.gen, "generate a random instance: n,size");
  cmd.add_option("--runs", o.runs, "number of runs / seeds to sweep");
  o.seed_opt = cmd.add_option(
      "--seed", o.seed, "base seed (default: $BLINDBENCH_SEED, then 1)");
  cmd.add_option("--servers", o.servers,
                 "server count N for multi-server runs");
  cmd.add_option("--p", o.p, "field modulus override (0 = auto)");
  cmd.add_flag("--allow-small-field", o.allow_small_field,
               "accept a modulus below n^4");
  cmd.add_option("--oracle", o.oracle,
                 "server-side oracle: honest | predicate:SPEC "
                 "(SPEC is r<k>==<v> or any==<v>)");
  cmd.add_option("--format", o.format, "output format: table | csv | jsonl");
  cmd.add_option("--out", o.out,
                 "write the report to a file instead of stdout");
}

std::uint64_t resolve_seed(const CommonOpts& o) {
  if (o.seed_opt != nullptr && o.seed_opt->count() > 0) return o.seed;
  if (const char* env = std::getenv("BLINDBENCH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("BLINDBENCH_SEED is not a number: " +
                        std::string(env));
    }
  }
  return o.seed;
}

std::string qbf_label(const Qbf& q) {
  std::ostringstream os;
  os << "qbf#" << std::hex << std::setw(16) << std::setfill('0')
     << fnv1a64(print_qbf(q));
  return os.str();
}

Qbf load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open formula file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_qbf(buf.str());
  } catch (const ParseError& e) {
    throw ConfigError(path + ":" + e.what());
  }
}

Qbf load_input(const CommonOpts& o, std::uint64_t seed) {
  if (!o.formula.empty() && !o.gen.empty())
    throw ConfigError("--formula and --gen are mutually exclusive");
  if (!o.formula.empty()) return load_file(o.formula);
  if (!o.gen.empty()) {
    unsigned n = 0;
    std::size_t size = 0;
    char comma = 0;
    std::istringstream is(o.gen);
    if (!(is >> n >> comma >> size) || comma != ',' || n == 0 ||
        !(is >> std::ws).eof())
      throw ConfigError("--gen expects n,size (got '" + o.gen + "')");
    return random_qbf(n, size, seed);
  }
  throw ConfigError("no input: pass --formula PATH or --gen n,size");
}

HarnessOptions harness_options(const CommonOpts& o, const Qbf& q) {
  HarnessOptions opt;
  opt.p = o.p;
  opt.allow_small_field = o.allow_small_field;
  if (o.p != 0) {
    const std::uint64_t n = q.prefix.size();
    const std::uint64_t n4 = n * n * n * n;
    if (o.p < n4) {
      if (o.allow_small_field)
        std::cerr << "note: p=" << o.p << " is below n^4=" << n4
                  << "; soundness error bounds degrade\n";
      else
        std::cerr << "warning: p=" << o.p << " is below n^4=" << n4
                  << "; pass --allow-small-field to proceed\n";
    }
  }
  return opt;
}

std::unique_ptr<HackOracle> make_oracle(const std::string& spec) {
  if (spec == "honest") return std::make_unique<HonestOracle>();
  const std::string prefix = "predicate:";
  if (spec.rfind(prefix, 0) == 0)
    return std::make_unique<PredicateOracle>(
        TranscriptPredicate::parse(spec.substr(prefix.size())));
  throw ConfigError("unknown oracle '" + spec +
                    "' (expected honest or predicate:SPEC)");
}

void emit(const std::string& text, const CommonOpts& o) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw ConfigError("cannot write output file: " + o.out);
  out << text;
}

// ---------------------------------------------------------------------------

int cmd_ip_run(const CommonOpts& o) {
  const std::uint64_t seed = resolve_seed(o);
  const Qbf q = load_input(o, seed);
  IpOptions opt;
  opt.p = o.p;
  opt.allow_small_field = o.allow_small_field;
  harness_options(o, q);  // surfaces the small-field warning

  std::uint64_t accepted = 0;
  double round_sum = 0;
  std::uint64_t p = 0;
  for (std::uint64_t i = 0; i < o.runs; ++i) {
    IpResult r = run_ip_session(q, derive_seed(seed, i), opt);
    accepted += r.accepted() ? 1 : 0;
    round_sum += r.rounds;
    p = r.p;
  }
  Row row;
  row.add("formula", qbf_label(q))
      .add("n", static_cast<std::uint64_t>(q.prefix.size()))
      .add("p", p)
      .add("runs", o.runs)
      .add("accepted", accepted)
      .add("rejected", o.runs - accepted)
      .add("acceptance_rate",
           static_cast<double>(accepted) / static_cast<double>(o.runs))
      .add("mean_rounds", round_sum / static_cast<double>(o.runs));
  emit(render_rows({row}, parse_format(o.format)), o);
  return kExitOk;
}

int cmd_sim_equiv(const CommonOpts& o) {
  const std::uint64_t seed = resolve_seed(o);
  const Qbf q = load_input(o, seed);
  const HarnessOptions opt = harness_options(o, q);

  std::uint64_t views_identical = 0;
  std::uint64_t verdicts_equal = 0;
  for (std::uint64_t i = 0; i < o.runs; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    SessionResult during = run_M_during(q, o.servers, s, opt);
    SessionResult sim = simulate_M_during_on_single(q, o.servers, s, opt);
    SessionResult single = run_protocol_S(q, s, nullptr, opt);
    if (view_str(during.views.front()) == view_str(sim.views.front()))
      ++views_identical;
    if (during.verdict == sim.verdict && during.verdict == single.verdict)
      ++verdicts_equal;
  }
  const bool ok = views_identical == o.runs && verdicts_equal == o.runs;
  Row row;
  row.add("formula", qbf_label(q))
      .add("n", static_cast<std::uint64_t>(q.prefix.size()))
      .add("servers", static_cast<std::uint64_t>(o.servers))
      .add("seeds", o.runs)
      .add("views_identical", views_identical)
      .add("verdicts_equal", verdicts_equal)
      .add("ok", ok);
  emit(render_rows({row}, parse_format(o.format)), o);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_leak_replay(const CommonOpts& o) {
  const std::uint64_t seed = resolve_seed(o);
  const Qbf q = load_input(o, seed);
  const HarnessOptions opt = harness_options(o, q);

  std::uint64_t single_leaks = 0;
  std::uint64_t replay_leaks = 0;
  std::uint64_t coincident = 0;
  for (std::uint64_t i = 0; i < o.runs; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const std::unique_ptr<HackOracle> oracle = make_oracle(o.oracle);
    SessionResult single = run_protocol_S(q, s, oracle.get(), opt);
    SessionResult after = run_M_after(q, o.servers, s, *oracle, opt);
    const bool single_fired =
        single.leak.kind == LeakOutcome::Kind::InfCircuit;
    const bool replay_fired = after.leak.kind == LeakOutcome::Kind::InfCircuit;
    single_leaks += single_fired ? 1 : 0;
    replay_leaks += replay_fired ? 1 : 0;
    coincident += single.leak == after.leak ? 1 : 0;
  }
  const bool ok = coincident == o.runs;
  const auto rate = [&](std::uint64_t c) {
    return static_cast<double>(c) / static_cast<double>(o.runs);
  };
  Row row;
  row.add("formula", qbf_label(q))
      .add("n", static_cast<std::uint64_t>(q.prefix.size()))
      .add("servers", static_cast<std::uint64_t>(o.servers))
      .add("oracle", o.oracle)
      .add("seeds", o.runs)
      .add("single_leaks", single_leaks)
      .add("replay_leaks", replay_leaks)
      .add("single_rate", rate(single_leaks))
      .add("replay_rate", rate(replay_leaks))
      .add("coincident", coincident)
      .add("coincidence_rate", rate(coincident))
      .add("ok", ok);
  emit(render_rows({row}, parse_format(o.format)), o);
  return ok ? kExitOk : kExitCheckFailed;
}

struct AuditOpts {
  std::string pad;  // "p:x1,x2,..."
  std::string mode = "enumerate";
  std::uint64_t samples = 10000;
  double tolerance = -1;
};

int cmd_audit(const CommonOpts& o, const AuditOpts& a) {
  const std::uint64_t seed = resolve_seed(o);

  std::unique_ptr<AuditSubject> subject;
  if (!a.pad.empty() && !o.formulas.empty())
    throw ConfigError("--pad and --formula are mutually exclusive");
  if (!a.pad.empty()) {
    const std::size_t colon = a.pad.find(':');
    std::uint64_t p = 0;
    std::vector<std::uint64_t> xs;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("");
      p = std::stoull(a.pad.substr(0, colon));
      std::istringstream is(a.pad.substr(colon + 1));
      std::string item;
      while (std::getline(is, item, ',')) xs.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ConfigError("--pad expects p:x1,x2,... (got '" + a.pad + "')");
    }
    subject = std::make_unique<PadSubject>(p, std::move(xs));
  } else {
    if (o.formulas.size() < 2)
      throw ConfigError("audit needs --pad or at least two --formula inputs");
    std::vector<Qbf> inputs;
    for (const std::string& path : o.formulas)
      inputs.push_back(load_file(path));
    HarnessOptions opt = harness_options(o, inputs.front());
    subject = std::make_unique<IpSingleServerSubject>(std::move(inputs), opt);
  }

  AuditMode mode;
  if (a.mode == "enumerate")
    mode = AuditMode::enumerate();
  else if (a.mode == "sample")
    mode = AuditMode::sample(a.samples, seed);
  else
    throw ConfigError("unknown audit mode '" + a.mode +
                      "' (expected enumerate or sample)");

  const AuditReport report = audit_blindness(*subject, mode, a.tolerance);
  const ReportFormat fmt = parse_format(o.format);
  if (fmt == ReportFormat::Table) {
    emit(report.to_text(), o);
  } else {
    std::vector<Row> rows;
    for (const PairDistance& pd : report.pairs) {
      Row row;
      row.add("a", report.labels[pd.a])
          .add("b", report.labels[pd.b])
          .add("distance", pd.distance)
          .add("exact_equal", pd.exact_equal)
          .add("verdict", audit_verdict_str(report.verdict));
      rows.push_back(std::move(row));
    }
    emit(render_rows(rows, fmt), o);
  }
  return report.blind() ? kExitOk : kExitNotBlind;
}

struct SweepOpts {
  std::uint64_t instances = 5;
};

int cmd_soundness_sweep(const CommonOpts& o, const SweepOpts& s) {
  const std::uint64_t seed = resolve_seed(o);

  // Build the false-instance list: an explicit input must be false; the
  // default grid rejection-samples false instances per variable count.
  std::vector<Qbf> instances;
  if (!o.formula.empty() || !o.gen.empty()) {
    Qbf q = load_input(o, seed);
    if (brute_force_truth(q))
      throw ConfigError("soundness sweep needs a false instance");
    instances.push_back(std::move(q));
  } else {
    for (unsigned n : {1u, 2u, 3u}) {
      std::uint64_t gen_seed = derive_seed(seed, 900000 + n);
      for (std::uint64_t j = 0; j < s.instances;) {
        Qbf q = random_qbf(n, 3 * n, gen_seed++);
        if (brute_force_truth(q)) continue;
        instances.push_back(std::move(q));
        ++j;
      }
    }
  }

  bool all_within = true;
  std::vector<Row> rows;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const Qbf& q = instances[idx];
    IpOptions opt;
    opt.p = o.p;
    opt.allow_small_field = o.allow_small_field;
    opt.cheating_prover = true;
    harness_options(o, q);

    std::uint64_t accepted = 0;
    std::uint64_t p = 0;
    for (std::uint64_t i = 0; i < o.runs; ++i) {
      IpResult r =
          run_ip_session(q, derive_seed(derive_seed(seed, idx), i), opt);
      accepted += r.accepted() ? 1 : 0;
      p = r.p;
    }
    const std::uint64_t sum_bounds = sum_degree_bounds(build_schedule(q));
    const double bound =
        static_cast<double>(sum_bounds) / static_cast<double>(p);
    const double rate =
        static_cast<double>(accepted) / static_cast<double>(o.runs);
    const double sigma =
        std::sqrt(bound * (1.0 - bound) / static_cast<double>(o.runs));
    const bool within = rate <= bound + 3.0 * sigma;
    all_within = all_within && within;
    Row row;
    row.add("formula", qbf_label(q))
        .add("n", static_cast<std::uint64_t>(q.prefix.size()))
        .add("p", p)
        .add("sum_degree_bounds", sum_bounds)
        .add("bound", bound)
        .add("runs", o.runs)
        .add("accepted", accepted)
        .add("rate", rate)
        .add("margin", bound + 3.0 * sigma - rate)
        .add("within_bound", within);
    rows.push_back(std::move(row));
  }
  emit(render_rows(rows, parse_format(o.format)), o);
  return all_within ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deterministic delegated-computation protocol simulator "
      "(interactive-proof workload, delegation equivalences, blindness "
      "audit)"};
  app.require_subcommand(1);

  CommonOpts ip_o, sim_o, leak_o, audit_o, sweep_o;
  AuditOpts audit_a;
  SweepOpts sweep_s;

  CLI::App* ip = app.add_subcommand(
      "ip-run", "run seeded interactive-proof sessions, report acceptance");
  add_common_flags(*ip, ip_o, 100);

  CLI::App* sim = app.add_subcommand(
      "sim-equiv",
      "check split-delegation views against the single-server simulation");
  add_common_flags(*sim, sim_o, 100);

  CLI::App* leak = app.add_subcommand(
      "leak-replay",
      "compare single-server leak outcomes with post-session collusion "
      "replay");
  add_common_flags(*leak, leak_o, 500);
  leak_o.oracle = "predicate:r1==0";

  CLI::App* audit = app.add_subcommand(
      "audit", "blindness audit: compare server view distributions");
  add_common_flags(*audit, audit_o, 100, /*multi_formula=*/true);
  audit->add_option("--pad", audit_a.pad,
                    "audit the one-time-pad fixture: p:x1,x2,...");
  audit->add_option("--mode", audit_a.mode, "enumerate (exact) or sample");
  audit->add_option("--samples", audit_a.samples,
                    "session count per input in sample mode");
  audit->add_option("--tolerance", audit_a.tolerance,
                    "max distance for BLIND_AT_SCALE (default 0 exact, "
                    "0.02 sampled)");

  CLI::App* sweep = app.add_subcommand(
      "soundness-sweep",
      "cheating-prover acceptance rate vs. the soundness bound");
  add_common_flags(*sweep, sweep_o, 2000);
  sweep->add_option("--instances", sweep_s.instances,
                    "false instances per variable count in the default grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (ip->parsed()) return cmd_ip_run(ip_o);
    if (sim->parsed()) return cmd_sim_equiv(sim_o);
    if (leak->parsed()) return cmd_leak_replay(leak_o);
    if (audit->parsed()) return cmd_audit(audit_o, audit_a);
    if (sweep->parsed()) return cmd_soundness_sweep(sweep_o, sweep_s);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitConfig;
}
