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

#include "blindbench/ip.hpp"

#include <cassert>

#include "blindbench/errors.hpp"

namespace blindbench {

const char* msg_kind_str(MsgKind k) {
  switch (k) {
    case MsgKind::Start: return "start";
    case MsgKind::Poly: return "poly";
    case MsgKind::Challenge: return "challenge";
    case MsgKind::Context: return "context";
    case MsgKind::MShare: return "m-share";
    case MsgKind::SShare: return "s-share";
  }
  return "?";
}

std::string payload_str(const std::vector<Fp>& payload) {
  std::string out;
  for (const Fp& x : payload) {
    if (!out.empty()) out += ',';
    out += x.str();
  }
  return out;
}

std::string record_str(const TranscriptRecord& r) {
  return "round=" + std::to_string(r.round) +
         (r.dir == Direction::UserToServer ? " dir=U->S" : " dir=S->U") +
         " kind=" + msg_kind_str(r.kind) + " payload=" + payload_str(r.payload);
}

std::string transcript_str(const std::vector<TranscriptRecord>& t) {
  std::string out;
  for (const TranscriptRecord& r : t) {
    out += record_str(r);
    out += '\n';
  }
  return out;
}

Fp ScriptedChallenges::next(std::uint64_t p) {
  if (used_ >= script_.size())
    throw ConfigError("challenge script exhausted after " +
                      std::to_string(used_) + " draws");
  Fp x = script_[used_++];
  if (x.modulus() != p)
    throw DomainError("scripted challenge has modulus " +
                      std::to_string(x.modulus()) + ", session wants " +
                      std::to_string(p));
  return x;
}

Poly honest_round_poly(const Qbf& q, const std::vector<Round>& sched,
                       std::size_t round_idx, const std::vector<Fp>& challenges,
                       EvalMode mode) {
  const Round& round = sched[round_idx];
  const std::uint64_t p = challenges.at(0).modulus();
  if (round.degree_bound + 1 > p)
    throw DomainError("field of size " + std::to_string(p) +
                      " cannot carry a round of degree " +
                      std::to_string(round.degree_bound));
  std::vector<Fp> assign = challenges;
  std::vector<std::pair<Fp, Fp>> points;
  points.reserve(round.degree_bound + 1);
  for (std::uint64_t t = 0; t <= round.degree_bound; ++t) {
    assign[round.var] = Fp(t, p);
    points.emplace_back(Fp(t, p),
                        suffix_value(q, sched, round_idx + 1, assign, mode));
  }
  Poly poly = Poly::interpolate(points);
  assert(poly.degree() <= static_cast<int>(round.degree_bound));
  return poly;
}

namespace {

// Interpolates through `forced` plus honest values at the smallest field
// points not already used, up to degree `bound`.
Poly fill_with_honest(const Poly& honest, std::uint64_t bound,
                      std::vector<std::pair<Fp, Fp>> forced) {
  const std::uint64_t p = honest.modulus();
  if (bound + 1 > p)
    throw DomainError("field of size " + std::to_string(p) +
                      " cannot carry a round of degree " + std::to_string(bound));
  std::vector<std::pair<Fp, Fp>> points = forced;
  for (std::uint64_t t = 0; points.size() < bound + 1; ++t) {
    Fp x(t, p);
    bool taken = false;
    for (const auto& pt : forced) taken = taken || pt.first == x;
    if (!taken) points.emplace_back(x, honest.eval(x));
    if (t + 1 == p && points.size() < bound + 1)
      throw DomainError("not enough field points for the round polynomial");
  }
  return Poly::interpolate(points);
}

}  // namespace

Poly cheating_round_poly(const Round& round, const Poly& honest, Fp claim,
                         Fp old_challenge) {
  const std::uint64_t p = honest.modulus();
  const Fp zero = Fp::zero(p), one = Fp::one(p);
  const Fp h0 = honest.eval(zero), h1 = honest.eval(one);

  switch (round.kind) {
    case RoundKind::Forall: {
      if (h0 * h1 == claim) return honest;
      if (round.degree_bound == 0) return honest;  // constant sqrt may not exist
      if (!h0.is_zero())
        return fill_with_honest(honest, round.degree_bound,
                                {{zero, h0}, {one, claim / h0}});
      // P(0) must leave the product reachable; pick 1.
      return fill_with_honest(honest, round.degree_bound,
                              {{zero, one}, {one, claim}});
    }
    case RoundKind::Exists: {
      if (one - (one - h0) * (one - h1) == claim) return honest;
      if (round.degree_bound == 0) return honest;
      if (h0 != one)
        return fill_with_honest(
            honest, round.degree_bound,
            {{zero, h0}, {one, one - (one - claim) / (one - h0)}});
      return fill_with_honest(honest, round.degree_bound,
                              {{zero, zero}, {one, claim}});
    }
    case RoundKind::Reduce: {
      const Fp w = old_challenge;
      if (w * h1 + (one - w) * h0 == claim) return honest;
      if (round.degree_bound == 0) return Poly::constant(claim);
      if (w.is_zero())  // blend check degenerates to P(0) = claim
        return fill_with_honest(honest, round.degree_bound, {{zero, claim}});
      return fill_with_honest(
          honest, round.degree_bound,
          {{zero, h0}, {one, (claim - (one - w) * h0) / w}});
    }
  }
  return honest;
}

const char* verdict_str(Verdict v) {
  return v == Verdict::Accept ? "ACCEPT" : "REJECT";
}

VerifierState::VerifierState(const Qbf& q, std::uint64_t p, EvalMode mode)
    : q_(q),
      p_(p),
      mode_(mode),
      sched_(build_schedule(q)),
      claim_(Fp::one(p)),
      by_var_(q.var_count() + 1, Fp::zero(p)) {}

std::optional<Fp> VerifierState::step(const Poly& poly, ChallengeSource& src) {
  if (rejected_ || cursor_ == sched_.size())
    throw ConfigError("verifier stepped past the end of the session");
  const Round& round = sched_[cursor_];
  const unsigned k = static_cast<unsigned>(cursor_) + 1;

  if (poly.degree() > static_cast<int>(round.degree_bound)) {
    rejected_ = true;
    reason_ = "round " + std::to_string(k) + " degree " +
              std::to_string(poly.degree()) + " exceeds bound " +
              std::to_string(round.degree_bound);
    return std::nullopt;
  }

  const Fp one = Fp::one(p_);
  const Fp p0 = poly.eval(Fp::zero(p_)), p1 = poly.eval(one);
  Fp check = p0;
  switch (round.kind) {
    case RoundKind::Forall: check = p0 * p1; break;
    case RoundKind::Exists: check = one - (one - p0) * (one - p1); break;
    case RoundKind::Reduce: {
      const Fp w = by_var_[round.var];
      check = w * p1 + (one - w) * p0;
      break;
    }
  }
  if (check != claim_) {
    rejected_ = true;
    reason_ = "round " + std::to_string(k) + " consistency check failed";
    return std::nullopt;
  }

  const Fp r = src.next(p_);
  claim_ = poly.eval(r);
  by_var_[round.var] = r;
  ++cursor_;
  return r;
}

Verdict VerifierState::finish() {
  if (rejected_) return Verdict::Reject;
  if (cursor_ != sched_.size())
    throw ConfigError("verifier finished before the last round");
  std::vector<Fp> scratch;
  const Fp value = q_.matrix.eval_field(by_var_, scratch);
  if (value != claim_) {
    rejected_ = true;
    reason_ = "final matrix check failed";
    return Verdict::Reject;
  }
  return Verdict::Accept;
}

std::uint64_t resolve_session_prime(const Qbf& q, const IpOptions& opt) {
  const unsigned n = q.var_count();
  const std::uint64_t p = opt.p == 0 ? smallest_session_prime(n) : opt.p;
  if (!is_prime(p))
    throw ConfigError("session modulus " + std::to_string(p) + " is not prime");
  std::uint64_t n4 = 1;
  for (int i = 0; i < 4; ++i) n4 *= n;
  if (p < n4 && !opt.allow_small_field)
    throw ConfigError("p = " + std::to_string(p) + " is below n^4 = " +
                      std::to_string(n4) +
                      "; pass allow_small_field to run anyway");
  return p;
}

namespace {

IpResult run_session(const Qbf& q, std::uint64_t seed, ChallengeSource& src,
                     const IpOptions& opt) {
  const std::uint64_t p = resolve_session_prime(q, opt);
  VerifierState verifier(q, p, opt.mode);
  const std::vector<Round>& sched = verifier.schedule();

  IpResult res;
  res.p = p;
  res.seed = seed;
  res.rounds = static_cast<unsigned>(sched.size());
  res.transcript.push_back({0, Direction::UserToServer, MsgKind::Start, {}});

  // The cheating prover mirrors the verifier's claim; both sides start at 1.
  Fp claim = Fp::one(p);
  for (std::size_t k = 0; k < sched.size(); ++k) {
    Poly poly = honest_round_poly(q, sched, k, verifier.challenges_by_var(),
                                  opt.mode);
    if (opt.cheating_prover) {
      poly = cheating_round_poly(sched[k], poly, claim,
                                 verifier.challenges_by_var()[sched[k].var]);
    }
    res.transcript.push_back({static_cast<unsigned>(k) + 1,
                              Direction::ServerToUser, MsgKind::Poly,
                              poly.payload()});
    std::optional<Fp> r = verifier.step(poly, src);
    if (!r.has_value()) break;
    claim = poly.eval(*r);
    res.challenges.push_back(*r);
    res.transcript.push_back({static_cast<unsigned>(k) + 1,
                              Direction::UserToServer, MsgKind::Challenge,
                              {*r}});
  }
  res.verdict = verifier.finish();
  res.reject_reason = verifier.reject_reason();
  return res;
}

}  // namespace

IpResult run_ip_session(const Qbf& q, std::uint64_t seed, const IpOptions& opt) {
  SeededChallenges src(seed);
  return run_session(q, seed, src, opt);
}

IpResult run_ip_session_scripted(const Qbf& q, const std::vector<Fp>& script,
                                 const IpOptions& opt) {
  ScriptedChallenges src(script);
  return run_session(q, 0, src, opt);
}

std::string IpResult::to_text() const {
  std::string out = "blindbench-ip v1\n";
  out += "p=" + std::to_string(p) + " seed=" + std::to_string(seed) +
         " rounds=" + std::to_string(rounds) +
         " verdict=" + verdict_str(verdict);
  if (!reject_reason.empty()) out += " reason=" + reject_reason;
  out += '\n';
  out += transcript_str(transcript);
  out += "end\n";
  return out;
}

}  // namespace blindbench
