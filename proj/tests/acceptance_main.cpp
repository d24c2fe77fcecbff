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

// End-to-end acceptance gate. Each check prints exactly one PASS/FAIL line;
// the exit code is the number of failed checks. These runs are heavier than
// the unit tests: they sweep thousands of seeded sessions per check.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blindbench/audit.hpp"
#include "blindbench/cube_eval.hpp"
#include "blindbench/errors.hpp"
#include "blindbench/harness.hpp"
#include "blindbench/ip.hpp"
#include "blindbench/qbf.hpp"
#include "blindbench/rng.hpp"
#include "blindbench/schedule.hpp"

using namespace blindbench;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

std::vector<Qbf> sample_instances(unsigned n, std::size_t count, bool truth,
                                  std::uint64_t seed) {
  std::vector<Qbf> out;
  std::uint64_t s = derive_seed(seed, 7000 + n);
  while (out.size() < count) {
    Qbf q = random_qbf(n, 3 * n, s++);
    if (brute_force_truth(q) == truth) out.push_back(std::move(q));
  }
  return out;
}

// Every honest session on a true instance must accept: 20 true instances
// (truth established by the brute-force oracle) x 1000 seeds.
Check completeness() {
  Check c;
  std::vector<Qbf> instances;
  for (unsigned n = 1; n <= 4; ++n)
    for (Qbf& q : sample_instances(n, 5, true, 11))
      instances.push_back(std::move(q));
  c.require(instances.size() == 20, "instance sampling failed");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const IpResult r = run_ip_session(instances[i], derive_seed(2, seed));
      if (!r.accepted()) {
        std::ostringstream os;
        os << "instance " << i << " seed " << seed << " rejected: "
           << r.reject_reason;
        c.require(false, os.str());
        return c;
      }
    }
  }
  c.detail = "20 true instances x 1000 seeds all accepted";
  return c;
}

// Cheating-prover acceptance: exact by exhaustive challenge enumeration at
// n=2, p=17, and empirical at the default field size for n in {1, 2, 4}.
Check soundness() {
  Check c;

  IpOptions opt;
  opt.cheating_prover = true;
  for (const Qbf& q : sample_instances(2, 3, false, 13)) {
    const auto sched = build_schedule(q);
    const std::uint64_t budget = sum_degree_bounds(sched);
    std::uint64_t accepted = 0;
    for (std::uint64_t a = 0; a < 17 && c.ok; ++a)
      for (std::uint64_t b = 0; b < 17; ++b)
        for (std::uint64_t r = 0; r < 17; ++r) {
          const IpResult res = run_ip_session_scripted(
              q, {Fp(a, 17), Fp(b, 17), Fp(r, 17)}, opt);
          accepted += res.accepted() ? 1 : 0;
        }
    // accepted / 17^3 <= budget / 17
    std::ostringstream os;
    os << "exhaustive n=2: " << accepted << "/4913 accepted vs budget "
       << budget << "/17";
    c.require(accepted <= budget * 17 * 17, os.str());
  }
  if (!c.ok) return c;

  for (unsigned n : {1u, 2u, 4u}) {
    const Qbf q = sample_instances(n, 1, false, 17).front();
    const std::uint64_t runs = 10000;
    std::uint64_t accepted = 0;
    std::uint64_t p = 0;
    for (std::uint64_t i = 0; i < runs; ++i) {
      const IpResult r = run_ip_session(q, derive_seed(3, i), opt);
      accepted += r.accepted() ? 1 : 0;
      p = r.p;
    }
    const double bound =
        static_cast<double>(sum_degree_bounds(build_schedule(q))) /
        static_cast<double>(p);
    const double rate =
        static_cast<double>(accepted) / static_cast<double>(runs);
    const double sigma =
        std::sqrt(bound * (1.0 - bound) / static_cast<double>(runs));
    std::ostringstream os;
    os << "empirical n=" << n << ": rate " << rate << " vs bound " << bound
       << " + 3s " << 3 * sigma;
    c.require(rate <= bound + 3.0 * sigma, os.str());
  }
  if (c.ok)
    c.detail =
        "exact enumeration and 3x10^4 empirical runs within degree/p bounds";
  return c;
}

// The computing party's view in the split configuration must be
// byte-identical to the single-server simulation, with all verdicts equal
// to the plain protocol's.
Check split_equivalence() {
  Check c;
  std::vector<Qbf> instances;
  for (Qbf& q : sample_instances(2, 2, true, 19)) instances.push_back(std::move(q));
  for (Qbf& q : sample_instances(2, 1, false, 23)) instances.push_back(std::move(q));
  for (Qbf& q : sample_instances(3, 2, true, 29)) instances.push_back(std::move(q));
  for (std::size_t i = 0; i < instances.size() && c.ok; ++i) {
    for (unsigned n_servers : {2u, 3u, 5u}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::uint64_t s = derive_seed(5, seed);
        const SessionResult during = run_M_during(instances[i], n_servers, s);
        const SessionResult sim =
            simulate_M_during_on_single(instances[i], n_servers, s);
        const SessionResult single = run_protocol_S(instances[i], s);
        std::ostringstream os;
        os << "instance " << i << " N=" << n_servers << " seed " << seed;
        c.require(view_str(during.views.front()) ==
                      view_str(sim.views.front()),
                  "view mismatch: " + os.str());
        c.require(during.verdict == sim.verdict &&
                      during.verdict == single.verdict,
                  "verdict mismatch: " + os.str());
        if (!c.ok) return c;
      }
    }
  }
  c.detail = "100 seeds x {2,3,5} servers x 5 instances, views byte-identical";
  return c;
}

// Post-session collusion replay must leak on exactly the seeds the live
// single-server run leaks on.
Check leak_propagation() {
  Check c;
  const Qbf q = parse_qbf(
      "p qbf 2\na 1 0\ne 2 0\n(or (and 1 2) (and (not 1) (not 2)))\n");
  const TranscriptPredicate pred = TranscriptPredicate::parse("r1==0");
  unsigned fired = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    PredicateOracle live(pred);
    PredicateOracle replay(pred);
    const std::uint64_t s = derive_seed(7, seed);
    const SessionResult single = run_protocol_S(q, s, &live);
    const SessionResult after = run_M_after(q, 3, s, replay);
    if (!(single.leak == after.leak)) {
      std::ostringstream os;
      os << "seed " << seed << ": live " << single.leak.str() << " vs replay "
         << after.leak.str();
      c.require(false, os.str());
      return c;
    }
    fired += single.leak.kind == LeakOutcome::Kind::InfCircuit ? 1 : 0;
  }
  c.require(fired > 0, "predicate never fired; the check is vacuous");
  if (c.ok) {
    std::ostringstream os;
    os << "500 seeds coincide exactly, " << fired << " leaks observed";
    c.detail = os.str();
  }
  return c;
}

// The audit must clear the one-time pad exactly and flag a single server
// running the proof on opposite-truth instances.
Check audit_calibration() {
  Check c;
  PadSubject pad(17, {0, 3, 11});
  const AuditReport blind = audit_blindness(pad, AuditMode::enumerate());
  c.require(blind.verdict == AuditVerdict::BlindAtScale &&
                blind.max_distance == 0.0,
            "pad audit: distance " + std::to_string(blind.max_distance));

  IpSingleServerSubject subject(
      {parse_qbf("p qbf 1\ne 1 0\n1\n"), parse_qbf("p qbf 1\na 1 0\n1\n")});
  const AuditReport leaky = audit_blindness(subject, AuditMode::enumerate());
  c.require(leaky.verdict == AuditVerdict::NotBlind &&
                leaky.max_distance >= 0.5,
            "opposite-truth audit: distance " +
                std::to_string(leaky.max_distance));
  if (c.ok) {
    std::ostringstream os;
    os << "pad distance 0, opposite-truth distance " << leaky.max_distance
       << " >= 0.5";
    c.detail = os.str();
  }
  return c;
}

bool axioms_hold(std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    const Fp a(x, p);
    if (!(a + Fp::zero(p) == a && a * Fp::one(p) == a &&
          a + (-a) == Fp::zero(p)))
      return false;
    if (x != 0 && !(a * a.inv() == Fp::one(p))) return false;
    for (std::uint64_t y = 0; y < p; ++y) {
      const Fp b(y, p);
      if (!(a + b == b + a && a * b == b * a)) return false;
      for (std::uint64_t z = 0; z < p; ++z) {
        const Fp cc(z, p);
        if (!((a + b) + cc == a + (b + cc))) return false;
        if (!((a * b) * cc == a * (b * cc))) return false;
        if (!(a * (b + cc) == a * b + a * cc)) return false;
      }
    }
  }
  return true;
}

Check property_suites() {
  Check c;

  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull})
    c.require(axioms_hold(p), "field axioms fail at p=" + std::to_string(p));

  // Arithmetization agrees with boolean evaluation on every assignment.
  for (unsigned n = 1; n <= 4 && c.ok; ++n) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const Qbf q = random_qbf(n, 3 * n, derive_seed(31, 100 * n + seed));
      const std::uint64_t p = smallest_session_prime(n);
      std::vector<std::uint8_t> bits(n + 1, 0), bs;
      std::vector<Fp> assign(n + 1, Fp::zero(p)), fs;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (unsigned v = 1; v <= n; ++v) {
          bits[v] = (mask >> (v - 1)) & 1;
          assign[v] = Fp(bits[v], p);
        }
        const bool b = q.matrix.eval(bits, bs);
        const Fp f = q.matrix.eval_field(assign, fs);
        c.require(f.value() == (b ? 1u : 0u),
                  "arithmetization mismatch at n=" + std::to_string(n));
      }
    }
  }

  // Interpolation round-trip on 1000 random point sets.
  SplitMix64 g(37);
  for (int iter = 0; iter < 1000 && c.ok; ++iter) {
    const std::uint64_t p = 257;
    const std::size_t deg = g.next_below(6);
    std::vector<Fp> coeffs;
    for (std::size_t i = 0; i <= deg; ++i) coeffs.emplace_back(g.next_below(p), p);
    const Poly f(p, coeffs);
    std::vector<std::pair<Fp, Fp>> pts;
    for (std::uint64_t x = 0; x <= deg; ++x)
      pts.emplace_back(Fp(x, p), f.eval(Fp(x, p)));
    c.require(Poly::interpolate(pts) == f, "interpolation round-trip failed");
  }

  // Epoch guard, exhaustively against the policy flags.
  const std::vector<PartyId> parties = {PartyId::user(), PartyId::server(1),
                                        PartyId::server(2), PartyId::server(3)};
  for (const Policy& pol :
       {policy_single(), policy_m_during(), policy_m_after()}) {
    for (Epoch epoch : {Epoch::During, Epoch::After})
      for (PartyId from : parties)
        for (PartyId to : parties) {
          bool open = true;
          if (from.is_server() && to.is_server())
            open = epoch == Epoch::During ? pol.inter_server_during
                                          : pol.inter_server_after;
          c.require(epoch_guard(from, to, epoch, pol) ==
                        (open ? GuardDecision::Deliver : GuardDecision::Block),
                    std::string("epoch guard disagrees for policy ") +
                        pol.name);
        }
  }

  // Transcript determinism across 100 repeated runs.
  const Qbf q = parse_qbf(
      "p qbf 2\na 1 0\ne 2 0\n(or (and 1 2) (and (not 1) (not 2)))\n");
  const std::string first = run_ip_session(q, 99).to_text();
  const std::string first_m = run_M_during(q, 3, 99).to_text();
  for (int i = 0; i < 100; ++i) {
    c.require(run_ip_session(q, 99).to_text() == first,
              "session transcript varies across repeats");
    c.require(run_M_during(q, 3, 99).to_text() == first_m,
              "split-session transcript varies across repeats");
  }

  if (c.ok)
    c.detail =
        "field axioms p<=31, arithmetization n<=4, 10^3 interpolation "
        "round-trips, epoch guard, 100x determinism";
  return c;
}

int report(int index, const char* name, Check (*fn)()) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    c = fn();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::ostringstream line;
  line << (c.ok ? "PASS" : "FAIL") << "  " << index << ". " << name << ": "
       << c.detail << " (" << secs << " s)";
  std::cout << line.str() << std::endl;
  return c.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  failures += report(1, "completeness", completeness);
  failures += report(2, "soundness bound", soundness);
  failures += report(3, "split-delegation equivalence", split_equivalence);
  failures += report(4, "collusion leak propagation", leak_propagation);
  failures += report(5, "blindness audit calibration", audit_calibration);
  failures += report(6, "property suites", property_suites);
  if (failures != 0)
    std::cout << failures << " acceptance check(s) failed" << std::endl;
  return failures;
}
