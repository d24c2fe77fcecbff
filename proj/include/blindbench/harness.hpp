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
#include <memory>
#include <string>
#include <vector>

#include "blindbench/ip.hpp"

namespace blindbench {

// ---------------------------------------------------------------------------
// Parties, epochs, communication policy

struct PartyId {
  enum class Kind : std::uint8_t { User, Server };
  Kind kind = Kind::User;
  unsigned index = 0;  // servers are 1-based

  static PartyId user() { return {Kind::User, 0}; }
  static PartyId server(unsigned i) { return {Kind::Server, i}; }
  bool is_server() const { return kind == Kind::Server; }
  bool operator==(const PartyId&) const = default;
  std::string str() const;
};

// During: the computation is in flight. After: the verdict has been
// announced and post-computation channels open.
enum class Epoch : std::uint8_t { During, After };

struct Policy {
  const char* name;
  bool inter_server_during;
  bool inter_server_after;
};

// Single server; no other server to talk to either way.
Policy policy_single();
// Servers may talk to each other while computing (and keep the channel).
Policy policy_m_during();
// Servers are isolated while computing; they may pool data afterwards.
Policy policy_m_after();

enum class GuardDecision : std::uint8_t { Deliver, Block };

// The routing core's only rule: user<->server messages always pass;
// server->server messages pass only if the policy opens that channel in the
// current epoch.
GuardDecision epoch_guard(PartyId from, PartyId to, Epoch epoch,
                          const Policy& policy);

// ---------------------------------------------------------------------------
// Messages, views, routing

struct Message {
  unsigned round;
  MsgKind kind;
  std::vector<Fp> payload;

  bool operator==(const Message&) const = default;
};

struct Envelope {
  PartyId from;
  PartyId to;
  Message msg;
};

// One entry of a server's view: a value it received or sent. Serialization
// deliberately omits the peer, so views that differ only in who routed a
// value compare equal.
struct ViewRecord {
  unsigned round;
  bool incoming;
  MsgKind kind;
  std::vector<Fp> payload;

  bool operator==(const ViewRecord&) const = default;
};

struct ServerView {
  unsigned server = 1;
  std::vector<ViewRecord> records;
  // Records [0, during_records) predate the epoch flip; the rest is
  // collusion traffic.
  std::size_t during_records = 0;
  // Post-collusion only: every user message of the session, by round.
  std::vector<Message> pooled;
};

std::string view_record_str(const ViewRecord& r);
std::string view_str(const ServerView& v);

class Actor;

// FIFO routing core; the single synchronization point between parties.
// Every send passes the epoch guard; blocked sends are logged and dropped.
// Delivery order is the enqueue order, so runs are deterministic.
class Net {
 public:
  explicit Net(Policy policy, unsigned n_servers);

  Epoch epoch() const { return epoch_; }
  void open_after_epoch();

  void send(PartyId from, PartyId to, Message msg);
  void run(Actor& user, std::vector<std::unique_ptr<Actor>>& servers);

  const std::vector<std::string>& violations() const { return violations_; }
  std::vector<ServerView>& views() { return views_; }

 private:
  Policy policy_;
  Epoch epoch_ = Epoch::During;
  std::vector<Envelope> queue_;
  std::size_t head_ = 0;
  std::vector<std::string> violations_;
  std::vector<ServerView> views_;
};

class Actor {
 public:
  virtual ~Actor() = default;
  virtual void on_message(Net& net, const Envelope& env) = 0;
};

// ---------------------------------------------------------------------------
// Hack oracles

// Deterministic server-side algorithm: given everything the servers heard
// from the user so far (the challenge prefix) and the polynomials already
// produced, emit the next round polynomial; after the user's final message,
// emit the inference the run leaks.
struct OracleQuery {
  const Qbf* q = nullptr;
  std::uint64_t p = 0;
  std::size_t i = 0;             // 1-based index of the last user message
  bool final = false;            // true: emit the inference, not a polynomial
  std::vector<Fp> challenges;    // the i-1 challenges the user sent so far
  std::vector<Poly> prior_polys; // s_1 .. s_{i-1}
};

struct LeakOutcome {
  enum class Kind : std::uint8_t { None, InfNo, InfCircuit };
  Kind kind = Kind::None;
  std::string circuit;  // description, InfCircuit only

  bool operator==(const LeakOutcome&) const = default;
  std::string str() const;
};

struct OracleStep {
  enum class Kind : std::uint8_t { Next, Leak };
  Kind kind;
  Poly poly;         // Next
  LeakOutcome leak;  // Leak
};

class HackOracle {
 public:
  virtual ~HackOracle() = default;
  virtual OracleStep step(const OracleQuery& query) = 0;
};

// Computes the honest round polynomial at every position and leaks nothing.
class HonestOracle : public HackOracle {
 public:
  explicit HonestOracle(EvalMode mode = EvalMode::Auto) : mode_(mode) {}
  OracleStep step(const OracleQuery& query) override;

 private:
  EvalMode mode_;
};

// Challenge-value predicate over a transcript prefix.
struct TranscriptPredicate {
  enum class Kind : std::uint8_t { ChallengeEquals, AnyChallengeEquals };
  Kind kind = Kind::ChallengeEquals;
  unsigned round = 1;        // ChallengeEquals: 1-based challenge index
  std::uint64_t value = 0;

  bool eval(const std::vector<Fp>& challenges) const;
  std::string str() const;
  // "r<k>==<v>" or "any==<v>".
  static TranscriptPredicate parse(const std::string& spec);
};

// Honest until the final message, then leaks a circuit description iff the
// predicate matches the challenges the user sent.
class PredicateOracle : public HackOracle {
 public:
  explicit PredicateOracle(TranscriptPredicate pred, EvalMode mode = EvalMode::Auto)
      : pred_(pred), honest_(mode) {}
  OracleStep step(const OracleQuery& query) override;

 private:
  TranscriptPredicate pred_;
  HonestOracle honest_;
};

// Runs the oracle chain over a recorded user-message sequence: rebuilds
// s'_1 .. s'_{l-1} and returns the final inference. This is what colluding
// servers do with pooled messages, and it must equal the live outcome.
struct ChainResult {
  std::vector<Poly> polys;
  LeakOutcome leak;
};
ChainResult replay_chain(HackOracle& oracle, const Qbf& q, std::uint64_t p,
                         std::size_t l_total,
                         const std::vector<Fp>& challenges);

// ---------------------------------------------------------------------------
// Protocol configurations

enum class ProtoConfig : std::uint8_t { S, MDuring, MDuringSim, MAfter };
const char* proto_config_str(ProtoConfig c);

struct HarnessOptions {
  std::uint64_t p = 0;
  bool allow_small_field = false;
  EvalMode mode = EvalMode::Auto;
  // Test hook: server 1 attempts an inter-server send in the first round.
  bool inject_rogue_send = false;
};

struct SessionResult {
  ProtoConfig config = ProtoConfig::S;
  unsigned n_servers = 1;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  unsigned rounds = 0;
  Verdict verdict = Verdict::Reject;
  std::string reject_reason;
  std::vector<TranscriptRecord> transcript;  // reassembled user-level exchange
  std::vector<Fp> challenges;                // draw order
  std::vector<ServerView> views;
  std::vector<std::string> violations;
  LeakOutcome leak;

  bool accepted() const { return verdict == Verdict::Accept; }
  std::string to_text() const;
};

// One server performs the whole schedule. With an oracle installed the
// server messages come from the oracle chain (honest oracles reproduce the
// plain run); the final oracle call after the user's last message is the
// session's leak outcome.
SessionResult run_protocol_S(const Qbf& q, std::uint64_t seed,
                             HackOracle* oracle = nullptr,
                             const HarnessOptions& opt = {});
// As above with scripted verifier randomness (for enumeration).
SessionResult run_protocol_S_scripted(const Qbf& q,
                                      const std::vector<Fp>& script,
                                      HackOracle* oracle = nullptr,
                                      const HarnessOptions& opt = {});

// The user splits every outbound payload into round-robin shares, one per
// server; servers 2..N forward their shares to server 1, which computes and
// answers in shares routed back the same way. Inter-server channels are
// open during computation.
SessionResult run_M_during(const Qbf& q, unsigned n_servers, std::uint64_t seed,
                           const HarnessOptions& opt = {});

// Reduction argument for the split configuration: one server receives all N
// shares directly and answers with all N response shares. Its view is
// byte-identical to server 1's view in run_M_during.
SessionResult simulate_M_during_on_single(const Qbf& q, unsigned n_servers,
                                          std::uint64_t seed,
                                          const HarnessOptions& opt = {});

// Round j is served by server 1 + (j-1 mod N); the user's message to a
// round's server carries every challenge drawn so far, since servers cannot
// share state while computing (the guard hard-blocks such sends). After the
// verdict the epoch opens, the servers pool the user messages, and replay
// the oracle chain; the replayed inference is the collusion leak.
SessionResult run_M_after(const Qbf& q, unsigned n_servers, std::uint64_t seed,
                          HackOracle& oracle, const HarnessOptions& opt = {});

}  // namespace blindbench
