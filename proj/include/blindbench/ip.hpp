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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blindbench/cube_eval.hpp"
#include "blindbench/poly.hpp"
#include "blindbench/qbf.hpp"
#include "blindbench/rng.hpp"
#include "blindbench/schedule.hpp"

namespace blindbench {

// ---------------------------------------------------------------------------
// Transcript

enum class Direction : std::uint8_t { UserToServer, ServerToUser };

enum class MsgKind : std::uint8_t {
  Start,      // user's opening message, round 0, empty payload
  Poly,       // a round polynomial's coefficients
  Challenge,  // one fresh field element
  Context,    // all challenges drawn so far (round-addressed delegation)
  MShare,     // share of a user message (split delegation)
  SShare,     // share of a round polynomial (split delegation)
};

const char* msg_kind_str(MsgKind k);

struct TranscriptRecord {
  unsigned round;
  Direction dir;
  MsgKind kind;
  std::vector<Fp> payload;

  bool operator==(const TranscriptRecord&) const = default;
};

std::string payload_str(const std::vector<Fp>& payload);
std::string record_str(const TranscriptRecord& r);
std::string transcript_str(const std::vector<TranscriptRecord>& t);

// ---------------------------------------------------------------------------
// Challenges

class ChallengeSource {
 public:
  virtual ~ChallengeSource() = default;
  virtual Fp next(std::uint64_t p) = 0;
};

// Uniform over the whole field, 0 and 1 included.
class SeededChallenges : public ChallengeSource {
 public:
  explicit SeededChallenges(std::uint64_t seed) : rng_(seed) {}
  Fp next(std::uint64_t p) override { return Fp(rng_.next_below(p), p); }

 private:
  SplitMix64 rng_;
};

// Fixed challenge list, for exhaustive enumeration of a session's
// randomness. Running past the script is a ConfigError.
class ScriptedChallenges : public ChallengeSource {
 public:
  explicit ScriptedChallenges(std::vector<Fp> script)
      : script_(std::move(script)) {}
  Fp next(std::uint64_t p) override;

 private:
  std::vector<Fp> script_;
  std::size_t used_ = 0;
};

// ---------------------------------------------------------------------------
// Provers

// The round polynomial an honest prover sends: the remaining operator
// suffix as a univariate in the round variable, sampled at degree_bound + 1
// points and interpolated. `challenges` is indexed by variable; entries for
// variables not challenged yet are ignored.
Poly honest_round_poly(const Qbf& q, const std::vector<Round>& sched,
                       std::size_t round_idx, const std::vector<Fp>& challenges,
                       EvalMode mode = EvalMode::Auto);

// Fixed dishonest strategy: pass the round's consistency check against the
// (false) running claim while agreeing with the honest polynomial on as
// many points as the degree bound leaves free. If the honest polynomial
// already passes, it is returned unchanged. `old_challenge` is the current
// challenge of the round variable (reduction rounds only).
Poly cheating_round_poly(const Round& round, const Poly& honest, Fp claim,
                         Fp old_challenge);

// ---------------------------------------------------------------------------
// Verifier

enum class Verdict : std::uint8_t { Accept, Reject };
const char* verdict_str(Verdict v);

// Walks the round schedule holding the running claim, initially 1 ("the
// instance is true"). Each step checks the received polynomial against the
// claim, then folds a fresh challenge into it. After the last round the
// claim must equal the arithmetized matrix at the collected challenges.
class VerifierState {
 public:
  VerifierState(const Qbf& q, std::uint64_t p, EvalMode mode = EvalMode::Auto);

  const std::vector<Round>& schedule() const { return sched_; }
  std::size_t cursor() const { return cursor_; }
  bool rejected() const { return rejected_; }
  const std::string& reject_reason() const { return reason_; }
  Fp claim() const { return claim_; }
  // Challenge of variable v, meaningful once v's quantifier round passed.
  const std::vector<Fp>& challenges_by_var() const { return by_var_; }
  bool done() const { return rejected_ || cursor_ == sched_.size(); }

  // Consistency + degree check; draws and returns the round challenge on
  // success, nullopt on rejection.
  std::optional<Fp> step(const Poly& poly, ChallengeSource& src);

  // Final matrix check (a no-op reject if a round already failed).
  Verdict finish();

 private:
  const Qbf& q_;
  std::uint64_t p_;
  EvalMode mode_;
  std::vector<Round> sched_;
  std::size_t cursor_ = 0;
  Fp claim_;
  std::vector<Fp> by_var_;
  bool rejected_ = false;
  std::string reason_;
};

// ---------------------------------------------------------------------------
// Session

struct IpOptions {
  std::uint64_t p = 0;  // 0: smallest_session_prime(n)
  bool allow_small_field = false;
  bool cheating_prover = false;
  EvalMode mode = EvalMode::Auto;
};

struct IpResult {
  Verdict verdict = Verdict::Reject;
  std::string reject_reason;
  unsigned rounds = 0;  // schedule length
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::vector<TranscriptRecord> transcript;
  std::vector<Fp> challenges;  // in draw order, one per completed round

  bool accepted() const { return verdict == Verdict::Accept; }
  std::string to_text() const;
};

// Validates (q, p) against the options: p must be prime, must exceed every
// round degree bound (interpolation needs bound+1 distinct points), and
// p >= n^4 unless allow_small_field.
std::uint64_t resolve_session_prime(const Qbf& q, const IpOptions& opt);

IpResult run_ip_session(const Qbf& q, std::uint64_t seed,
                        const IpOptions& opt = {});

// Same session with scripted randomness (seed recorded as 0).
IpResult run_ip_session_scripted(const Qbf& q, const std::vector<Fp>& script,
                                 const IpOptions& opt = {});

}  // namespace blindbench
