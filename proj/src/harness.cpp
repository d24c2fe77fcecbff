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

#include "blindbench/harness.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "blindbench/errors.hpp"

namespace blindbench {

// ---------------------------------------------------------------------------
// Parties, policy, guard

std::string PartyId::str() const {
  if (!is_server()) return "user";
  return "server" + std::to_string(index);
}

Policy policy_single() { return {"single", false, false}; }
Policy policy_m_during() { return {"m-during", true, true}; }
Policy policy_m_after() { return {"m-after", false, true}; }

GuardDecision epoch_guard(PartyId from, PartyId to, Epoch epoch,
                          const Policy& policy) {
  if (!from.is_server() || !to.is_server()) return GuardDecision::Deliver;
  const bool open = epoch == Epoch::During ? policy.inter_server_during
                                           : policy.inter_server_after;
  return open ? GuardDecision::Deliver : GuardDecision::Block;
}

// ---------------------------------------------------------------------------
// Views, routing

std::string view_record_str(const ViewRecord& r) {
  std::ostringstream os;
  os << "round=" << r.round << " dir=" << (r.incoming ? "in" : "out")
     << " kind=" << msg_kind_str(r.kind) << " payload=" << payload_str(r.payload);
  return os.str();
}

std::string view_str(const ServerView& v) {
  std::ostringstream os;
  os << "view server=" << v.server << "\n";
  for (std::size_t i = 0; i < v.records.size(); ++i) {
    if (i == v.during_records) os << "  -- after-epoch --\n";
    os << "  " << view_record_str(v.records[i]) << "\n";
  }
  if (!v.pooled.empty()) {
    os << "pooled server=" << v.server << "\n";
    for (const Message& m : v.pooled)
      os << "  round=" << m.round << " kind=" << msg_kind_str(m.kind)
         << " payload=" << payload_str(m.payload) << "\n";
  }
  return os.str();
}

Net::Net(Policy policy, unsigned n_servers) : policy_(policy) {
  views_.resize(n_servers);
  for (unsigned i = 0; i < n_servers; ++i) views_[i].server = i + 1;
}

void Net::open_after_epoch() {
  epoch_ = Epoch::After;
  for (ServerView& v : views_) v.during_records = v.records.size();
}

void Net::send(PartyId from, PartyId to, Message msg) {
  if (epoch_guard(from, to, epoch_, policy_) == GuardDecision::Block) {
    std::ostringstream os;
    os << "blocked " << from.str() << "->" << to.str() << " round=" << msg.round
       << " kind=" << msg_kind_str(msg.kind)
       << " epoch=" << (epoch_ == Epoch::During ? "during" : "after");
    violations_.push_back(os.str());
    return;  // blocked sends never reach any view
  }
  if (from.is_server())
    views_[from.index - 1].records.push_back(
        {msg.round, false, msg.kind, msg.payload});
  queue_.push_back({from, to, std::move(msg)});
}

void Net::run(Actor& user, std::vector<std::unique_ptr<Actor>>& servers) {
  while (head_ < queue_.size()) {
    // By value: handlers may send, growing (and relocating) the queue.
    const Envelope env = queue_[head_++];
    if (env.to.is_server()) {
      views_[env.to.index - 1].records.push_back(
          {env.msg.round, true, env.msg.kind, env.msg.payload});
      servers.at(env.to.index - 1)->on_message(*this, env);
    } else {
      user.on_message(*this, env);
    }
  }
}

// ---------------------------------------------------------------------------
// Oracles

std::string LeakOutcome::str() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::InfNo:
      return "inf-no";
    case Kind::InfCircuit:
      return "inf-circuit:" + circuit;
  }
  return "?";
}

OracleStep HonestOracle::step(const OracleQuery& query) {
  if (query.challenges.size() + 1 != query.i)
    throw DomainError("oracle query needs exactly i-1 challenges");
  if (query.final)
    return {OracleStep::Kind::Leak, Poly(query.p),
            {LeakOutcome::Kind::InfNo, ""}};
  const std::vector<Round> sched = build_schedule(*query.q);
  if (query.i > sched.size())
    throw DomainError("oracle position past the schedule");
  std::vector<Fp> by_var(query.q->prefix.size() + 1, Fp::zero(query.p));
  for (std::size_t j = 0; j < query.challenges.size(); ++j)
    by_var[sched[j].var] = query.challenges[j];
  Poly poly = honest_round_poly(*query.q, sched, query.i - 1, by_var, mode_);
  return {OracleStep::Kind::Next, std::move(poly), {}};
}

bool TranscriptPredicate::eval(const std::vector<Fp>& challenges) const {
  if (kind == Kind::AnyChallengeEquals) {
    for (const Fp& c : challenges)
      if (c.value() == value) return true;
    return false;
  }
  return challenges.size() >= round && challenges[round - 1].value() == value;
}

std::string TranscriptPredicate::str() const {
  if (kind == Kind::AnyChallengeEquals)
    return "any==" + std::to_string(value);
  return "r" + std::to_string(round) + "==" + std::to_string(value);
}

TranscriptPredicate TranscriptPredicate::parse(const std::string& spec) {
  const auto bad = [&spec]() {
    return ConfigError("bad predicate '" + spec +
                       "': expected r<k>==<v> or any==<v>");
  };
  const std::size_t eq = spec.find("==");
  if (eq == std::string::npos) throw bad();
  const std::string lhs = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 2);
  const auto digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (!digits(rhs)) throw bad();
  TranscriptPredicate pred;
  try {
    pred.value = std::stoull(rhs);
    if (lhs == "any") {
      pred.kind = Kind::AnyChallengeEquals;
      return pred;
    }
    if (lhs.size() < 2 || lhs[0] != 'r' || !digits(lhs.substr(1))) throw bad();
    pred.kind = Kind::ChallengeEquals;
    pred.round = static_cast<unsigned>(std::stoul(lhs.substr(1)));
  } catch (const std::out_of_range&) {
    throw bad();
  }
  if (pred.kind == Kind::ChallengeEquals && pred.round == 0)
    throw ConfigError("bad predicate '" + spec +
                      "': challenge indices are 1-based");
  return pred;
}

OracleStep PredicateOracle::step(const OracleQuery& query) {
  if (!query.final) return honest_.step(query);
  LeakOutcome leak;
  if (pred_.eval(query.challenges)) {
    leak.kind = LeakOutcome::Kind::InfCircuit;
    leak.circuit = pred_.str();
  } else {
    leak.kind = LeakOutcome::Kind::InfNo;
  }
  return {OracleStep::Kind::Leak, Poly(query.p), leak};
}

ChainResult replay_chain(HackOracle& oracle, const Qbf& q, std::uint64_t p,
                         std::size_t l_total,
                         const std::vector<Fp>& challenges) {
  if (l_total == 0) throw DomainError("replay needs at least one user message");
  if (challenges.size() + 1 != l_total)
    throw DomainError("replay needs exactly l-1 challenges");
  ChainResult out{{}, {}};
  for (std::size_t i = 1; i < l_total; ++i) {
    OracleQuery qy{&q, p, i, false,
                   std::vector<Fp>(challenges.begin(),
                                   challenges.begin() +
                                       static_cast<std::ptrdiff_t>(i - 1)),
                   out.polys};
    OracleStep st = oracle.step(qy);
    if (st.kind != OracleStep::Kind::Next)
      throw DomainError("oracle leaked before the final message");
    out.polys.push_back(std::move(st.poly));
  }
  OracleQuery qy{&q, p, l_total, true, challenges, out.polys};
  OracleStep st = oracle.step(qy);
  if (st.kind != OracleStep::Kind::Leak)
    throw DomainError("oracle did not finish with an inference");
  out.leak = st.leak;
  return out;
}

// ---------------------------------------------------------------------------
// Session plumbing shared by the configurations

const char* proto_config_str(ProtoConfig c) {
  switch (c) {
    case ProtoConfig::S:
      return "S";
    case ProtoConfig::MDuring:
      return "M-during";
    case ProtoConfig::MDuringSim:
      return "M-during-sim";
    case ProtoConfig::MAfter:
      return "M-after";
  }
  return "?";
}

std::string SessionResult::to_text() const {
  std::string out = "blindbench-session v1\n";
  out += "config=" + std::string(proto_config_str(config)) +
         " servers=" + std::to_string(n_servers) + " p=" + std::to_string(p) +
         " seed=" + std::to_string(seed) + " rounds=" + std::to_string(rounds) +
         " verdict=" + verdict_str(verdict);
  if (!reject_reason.empty()) out += " reason=" + reject_reason;
  out += '\n';
  out += transcript_str(transcript);
  for (const ServerView& v : views) out += view_str(v);
  if (!violations.empty()) {
    out += "violations\n";
    for (const std::string& s : violations) out += "  " + s + "\n";
  }
  out += "leak=" + leak.str() + "\n";
  out += "end\n";
  return out;
}

namespace {

// Round-robin split of a payload into n shares: field t goes to share t mod n.
std::vector<std::vector<Fp>> split_shares(const std::vector<Fp>& payload,
                                          unsigned n) {
  std::vector<std::vector<Fp>> shares(n);
  for (std::size_t t = 0; t < payload.size(); ++t)
    shares[t % n].push_back(payload[t]);
  return shares;
}

std::vector<Fp> merge_shares(const std::vector<std::vector<Fp>>& shares) {
  std::size_t total = 0;
  for (const std::vector<Fp>& s : shares) total += s.size();
  const std::size_t n = shares.size();
  std::vector<Fp> out;
  out.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    const std::vector<Fp>& s = shares[t % n];
    if (t / n >= s.size()) throw DomainError("ragged share sizes");
    out.push_back(s[t / n]);
  }
  return out;
}

OracleStep next_or_throw(HackOracle& oracle, const OracleQuery& query) {
  OracleStep st = oracle.step(query);
  if (st.kind != OracleStep::Kind::Next)
    throw DomainError("oracle leaked before the final message");
  return st;
}

// Verifier half shared by every configuration: consumes round polynomials,
// produces challenges, owns the canonical user-level transcript.
class UserCore {
 public:
  UserCore(const Qbf& q, std::uint64_t p, ChallengeSource& src, EvalMode mode)
      : verifier_(q, p, mode), src_(src), p_(p) {}

  unsigned rounds() const {
    return static_cast<unsigned>(verifier_.schedule().size());
  }
  unsigned next_round() const {
    return static_cast<unsigned>(verifier_.cursor()) + 1;
  }
  bool done() const { return done_; }
  Verdict verdict() const { return verdict_; }
  const std::string& reject_reason() const { return reason_; }
  const std::vector<Fp>& challenges() const { return challenges_; }
  std::vector<TranscriptRecord>& transcript() { return transcript_; }

  void record(unsigned round, Direction dir, MsgKind kind,
              std::vector<Fp> payload) {
    transcript_.push_back({round, dir, kind, std::move(payload)});
  }

  // Feeds one round polynomial; returns the fresh challenge, or nullopt on
  // rejection (the session is then over). Marks the session done after the
  // last round's challenge.
  std::optional<Fp> accept_poly(const std::vector<Fp>& payload) {
    const unsigned round = next_round();
    record(round, Direction::ServerToUser, MsgKind::Poly, payload);
    std::optional<Fp> r = verifier_.step(Poly(p_, payload), src_);
    if (!r.has_value()) {
      verdict_ = verifier_.finish();
      reason_ = verifier_.reject_reason();
      done_ = true;
      return std::nullopt;
    }
    challenges_.push_back(*r);
    if (verifier_.done()) {
      verdict_ = verifier_.finish();
      done_ = true;
    }
    return r;
  }

 private:
  VerifierState verifier_;
  ChallengeSource& src_;
  std::uint64_t p_;
  std::vector<Fp> challenges_;
  std::vector<TranscriptRecord> transcript_;
  Verdict verdict_ = Verdict::Reject;
  std::string reason_;
  bool done_ = false;
};

// --------------------------- configuration S ------------------------------

class UserActorS final : public Actor {
 public:
  UserCore core;

  UserActorS(const Qbf& q, std::uint64_t p, ChallengeSource& src, EvalMode mode)
      : core(q, p, src, mode) {}

  void begin(Net& net) {
    core.record(0, Direction::UserToServer, MsgKind::Start, {});
    net.send(PartyId::user(), PartyId::server(1), {0, MsgKind::Start, {}});
  }

  void on_message(Net& net, const Envelope& env) override {
    const unsigned round = core.next_round();
    std::optional<Fp> r = core.accept_poly(env.msg.payload);
    if (!r.has_value()) return;
    core.record(round, Direction::UserToServer, MsgKind::Challenge, {*r});
    net.send(PartyId::user(), PartyId::server(1),
             {round, MsgKind::Challenge, {*r}});
  }
};

class ServerActorS final : public Actor {
 public:
  ServerActorS(const Qbf& q, std::uint64_t p, unsigned rounds,
               HackOracle& oracle)
      : q_(q), p_(p), rounds_(rounds), oracle_(oracle) {}

  const std::vector<Fp>& challenges() const { return challenges_; }
  const std::vector<Poly>& polys() const { return polys_; }

  void on_message(Net& net, const Envelope& env) override {
    if (env.msg.kind == MsgKind::Challenge)
      challenges_.push_back(env.msg.payload.at(0));
    const std::size_t i = ++received_;
    if (i > rounds_) return;  // the final challenge closes the session
    OracleStep st =
        next_or_throw(oracle_, {&q_, p_, i, false, challenges_, polys_});
    polys_.push_back(st.poly);
    net.send(PartyId::server(1), PartyId::user(),
             {static_cast<unsigned>(i), MsgKind::Poly, st.poly.payload()});
  }

 private:
  const Qbf& q_;
  std::uint64_t p_;
  std::size_t rounds_;
  HackOracle& oracle_;
  std::size_t received_ = 0;
  std::vector<Fp> challenges_;
  std::vector<Poly> polys_;
};

// ----------------------- split configuration (M_during) -------------------

class UserActorMD final : public Actor {
 public:
  UserCore core;

  UserActorMD(const Qbf& q, std::uint64_t p, unsigned n_servers, bool sim,
              ChallengeSource& src, EvalMode mode)
      : core(q, p, src, mode), n_(n_servers), sim_(sim) {}

  void begin(Net& net) {
    core.record(0, Direction::UserToServer, MsgKind::Start, {});
    send_split(net, 0, {});
  }

  void on_message(Net& net, const Envelope& env) override {
    // Response shares arrive in share order: the FIFO net delivers server
    // 1's direct share first, then the forwarded ones in server order.
    shares_.push_back(env.msg.payload);
    if (shares_.size() < n_) return;
    const std::vector<Fp> payload = merge_shares(shares_);
    shares_.clear();
    const unsigned round = core.next_round();
    std::optional<Fp> r = core.accept_poly(payload);
    if (!r.has_value()) return;
    core.record(round, Direction::UserToServer, MsgKind::Challenge, {*r});
    send_split(net, round, {*r});
  }

 private:
  void send_split(Net& net, unsigned round, const std::vector<Fp>& payload) {
    const std::vector<std::vector<Fp>> shares = split_shares(payload, n_);
    for (unsigned j = 1; j <= n_; ++j) {
      const PartyId dest = sim_ ? PartyId::server(1) : PartyId::server(j);
      net.send(PartyId::user(), dest, {round, MsgKind::MShare, shares[j - 1]});
    }
  }

  unsigned n_;
  bool sim_;
  std::vector<std::vector<Fp>> shares_;
};

// Server 1: reassembles the user message from its n shares, computes the
// round polynomial, answers in shares. In the single-server simulation the
// same actor sends every share straight back to the user.
class ComputeActorMD final : public Actor {
 public:
  ComputeActorMD(const Qbf& q, std::uint64_t p, unsigned rounds,
                 unsigned n_servers, bool sim, EvalMode mode)
      : q_(q), p_(p), rounds_(rounds), n_(n_servers), sim_(sim),
        honest_(mode) {}

  void on_message(Net& net, const Envelope& env) override {
    mshares_.push_back(env.msg.payload);
    if (mshares_.size() < n_) return;
    const std::vector<Fp> m = merge_shares(mshares_);
    mshares_.clear();
    const std::size_t i = ++received_;
    if (i > 1) challenges_.push_back(m.at(0));
    if (i > rounds_) return;
    OracleStep st =
        next_or_throw(honest_, {&q_, p_, i, false, challenges_, polys_});
    polys_.push_back(st.poly);
    const std::vector<std::vector<Fp>> shares =
        split_shares(st.poly.payload(), n_);
    for (unsigned j = 1; j <= n_; ++j) {
      const PartyId dest =
          (sim_ || j == 1) ? PartyId::user() : PartyId::server(j);
      net.send(PartyId::server(1), dest,
               {static_cast<unsigned>(i), MsgKind::SShare, shares[j - 1]});
    }
  }

 private:
  const Qbf& q_;
  std::uint64_t p_;
  std::size_t rounds_;
  unsigned n_;
  bool sim_;
  HonestOracle honest_;
  std::size_t received_ = 0;
  std::vector<std::vector<Fp>> mshares_;
  std::vector<Fp> challenges_;
  std::vector<Poly> polys_;
};

// Servers 2..n: pass user shares inward to server 1 and response shares
// outward to the user.
class ForwardActorMD final : public Actor {
 public:
  explicit ForwardActorMD(unsigned self) : self_(self) {}

  void on_message(Net& net, const Envelope& env) override {
    const PartyId dest =
        env.from.is_server() ? PartyId::user() : PartyId::server(1);
    net.send(PartyId::server(self_), dest, env.msg);
  }

 private:
  unsigned self_;
};

// ------------------- round-addressed configuration (M_after) --------------

class UserActorMA final : public Actor {
 public:
  UserCore core;

  UserActorMA(const Qbf& q, std::uint64_t p, unsigned n_servers,
              ChallengeSource& src, EvalMode mode)
      : core(q, p, src, mode), n_(n_servers) {}

  void begin(Net& net) { send_context(net, 1); }

  void on_message(Net& net, const Envelope& env) override {
    std::optional<Fp> r = core.accept_poly(env.msg.payload);
    if (!r.has_value()) return;
    // The fresh challenge travels inside the next context message; after
    // the last round a closing context hands the full list to its server.
    send_context(net, static_cast<unsigned>(core.challenges().size()) + 1);
  }

 private:
  void send_context(Net& net, unsigned round) {
    core.record(round, Direction::UserToServer, MsgKind::Context,
                core.challenges());
    net.send(PartyId::user(), PartyId::server(1 + (round - 1) % n_),
             {round, MsgKind::Context, core.challenges()});
  }

  unsigned n_;
};

// Stateless per round: every context carries the whole challenge prefix, so
// the server rebuilds the oracle chain from scratch each time it is asked.
class ServerActorMA final : public Actor {
 public:
  ServerActorMA(const Qbf& q, std::uint64_t p, unsigned rounds, unsigned self,
                unsigned n_servers, HackOracle& oracle, bool rogue)
      : q_(q), p_(p), rounds_(rounds), self_(self), n_(n_servers),
        oracle_(oracle), rogue_(rogue) {}

  const std::vector<Message>& received() const { return received_; }
  const std::vector<Message>& pooled() const { return pooled_; }

  void on_message(Net& net, const Envelope& env) override {
    if (net.epoch() == Epoch::After) {
      pooled_.push_back(env.msg);  // a colluding peer's stored user message
      return;
    }
    received_.push_back(env.msg);
    const unsigned k = env.msg.round;
    if (k > rounds_) return;  // closing context, nothing left to compute
    const std::vector<Fp>& chal = env.msg.payload;
    std::vector<Poly> priors;
    for (std::size_t idx = 1; idx < k; ++idx) {
      OracleStep st = next_or_throw(
          oracle_, {&q_, p_, idx, false,
                    std::vector<Fp>(chal.begin(),
                                    chal.begin() +
                                        static_cast<std::ptrdiff_t>(idx - 1)),
                    priors});
      priors.push_back(std::move(st.poly));
    }
    OracleStep st = next_or_throw(oracle_, {&q_, p_, k, false, chal, priors});
    net.send(PartyId::server(self_), PartyId::user(),
             {k, MsgKind::Poly, st.poly.payload()});
    if (rogue_ && k == 1)
      net.send(PartyId::server(self_), PartyId::server(self_ % n_ + 1),
               {k, MsgKind::Context, chal});
  }

 private:
  const Qbf& q_;
  std::uint64_t p_;
  unsigned rounds_;
  unsigned self_;
  unsigned n_;
  HackOracle& oracle_;
  bool rogue_;
  std::vector<Message> received_;
  std::vector<Message> pooled_;
};

// ------------------------------ assembly ----------------------------------

std::uint64_t session_prime(const Qbf& q, const HarnessOptions& opt) {
  IpOptions ip;
  ip.p = opt.p;
  ip.allow_small_field = opt.allow_small_field;
  ip.mode = opt.mode;
  return resolve_session_prime(q, ip);
}

void throw_on_violations(const Net& net) {
  if (net.violations().empty()) return;
  throw PolicyError("inter-server send blocked while computing: " +
                    net.violations().front());
}

SessionResult finish_result(ProtoConfig config, unsigned n_servers,
                            std::uint64_t p, std::uint64_t seed,
                            UserCore& core, Net& net, LeakOutcome leak) {
  SessionResult res;
  res.config = config;
  res.n_servers = n_servers;
  res.p = p;
  res.seed = seed;
  res.rounds = core.rounds();
  res.verdict = core.verdict();
  res.reject_reason = core.reject_reason();
  res.transcript = std::move(core.transcript());
  res.challenges = core.challenges();
  if (net.epoch() == Epoch::During)
    for (ServerView& v : net.views()) v.during_records = v.records.size();
  res.views = std::move(net.views());
  res.violations = net.violations();
  res.leak = std::move(leak);
  return res;
}

SessionResult run_S_core(const Qbf& q, std::uint64_t seed,
                         ChallengeSource& src, HackOracle* oracle,
                         const HarnessOptions& opt) {
  const std::uint64_t p = session_prime(q, opt);
  HonestOracle honest(opt.mode);
  HackOracle& server_oracle = oracle != nullptr ? *oracle : honest;

  Net net(policy_single(), 1);
  UserActorS user(q, p, src, opt.mode);
  std::vector<std::unique_ptr<Actor>> servers;
  servers.push_back(std::make_unique<ServerActorS>(q, p, user.core.rounds(),
                                                   server_oracle));
  user.begin(net);
  net.run(user, servers);
  throw_on_violations(net);

  LeakOutcome leak;
  if (oracle != nullptr) {
    // The chain's final query: one past the last user message the server
    // saw a polynomial request for, with everything the user actually sent.
    auto& srv = static_cast<ServerActorS&>(*servers.front());
    const std::size_t l_eff = 1 + srv.challenges().size();
    std::vector<Poly> priors(srv.polys().begin(),
                             srv.polys().begin() +
                                 static_cast<std::ptrdiff_t>(l_eff - 1));
    OracleStep st =
        oracle->step({&q, p, l_eff, true, srv.challenges(), priors});
    if (st.kind != OracleStep::Kind::Leak)
      throw DomainError("oracle did not finish with an inference");
    leak = st.leak;
  }
  return finish_result(ProtoConfig::S, 1, p, seed, user.core, net, leak);
}

SessionResult run_MD_core(const Qbf& q, unsigned n_servers, std::uint64_t seed,
                          bool sim, const HarnessOptions& opt) {
  if (n_servers < 2)
    throw ConfigError("split delegation needs at least 2 servers");
  const std::uint64_t p = session_prime(q, opt);

  Net net(sim ? policy_single() : policy_m_during(), sim ? 1 : n_servers);
  SeededChallenges src(seed);
  UserActorMD user(q, p, n_servers, sim, src, opt.mode);
  std::vector<std::unique_ptr<Actor>> servers;
  servers.push_back(std::make_unique<ComputeActorMD>(
      q, p, user.core.rounds(), n_servers, sim, opt.mode));
  if (!sim)
    for (unsigned j = 2; j <= n_servers; ++j)
      servers.push_back(std::make_unique<ForwardActorMD>(j));
  user.begin(net);
  net.run(user, servers);
  throw_on_violations(net);
  return finish_result(sim ? ProtoConfig::MDuringSim : ProtoConfig::MDuring,
                       n_servers, p, seed, user.core, net, {});
}

}  // namespace

SessionResult run_protocol_S(const Qbf& q, std::uint64_t seed,
                             HackOracle* oracle, const HarnessOptions& opt) {
  SeededChallenges src(seed);
  return run_S_core(q, seed, src, oracle, opt);
}

SessionResult run_protocol_S_scripted(const Qbf& q,
                                      const std::vector<Fp>& script,
                                      HackOracle* oracle,
                                      const HarnessOptions& opt) {
  ScriptedChallenges src(script);
  return run_S_core(q, 0, src, oracle, opt);
}

SessionResult run_M_during(const Qbf& q, unsigned n_servers,
                           std::uint64_t seed, const HarnessOptions& opt) {
  return run_MD_core(q, n_servers, seed, false, opt);
}

SessionResult simulate_M_during_on_single(const Qbf& q, unsigned n_servers,
                                          std::uint64_t seed,
                                          const HarnessOptions& opt) {
  return run_MD_core(q, n_servers, seed, true, opt);
}

SessionResult run_M_after(const Qbf& q, unsigned n_servers, std::uint64_t seed,
                          HackOracle& oracle, const HarnessOptions& opt) {
  if (n_servers < 2)
    throw ConfigError("round-addressed delegation needs at least 2 servers");
  const std::uint64_t p = session_prime(q, opt);

  Net net(policy_m_after(), n_servers);
  SeededChallenges src(seed);
  UserActorMA user(q, p, n_servers, src, opt.mode);
  std::vector<std::unique_ptr<Actor>> servers;
  for (unsigned j = 1; j <= n_servers; ++j)
    servers.push_back(std::make_unique<ServerActorMA>(
        q, p, user.core.rounds(), j, n_servers, oracle,
        opt.inject_rogue_send && j == 1));
  user.begin(net);
  net.run(user, servers);
  throw_on_violations(net);

  // Verdict is in; the after-epoch opens and the servers collude: everyone
  // hands their stored user messages to server 1, which replays the oracle
  // chain on the pooled sequence.
  net.open_after_epoch();
  for (unsigned j = 2; j <= n_servers; ++j)
    for (const Message& m :
         static_cast<ServerActorMA&>(*servers[j - 1]).received())
      net.send(PartyId::server(j), PartyId::server(1), m);
  net.run(user, servers);

  auto& collector = static_cast<ServerActorMA&>(*servers.front());
  std::vector<Message> pooled = collector.received();
  pooled.insert(pooled.end(), collector.pooled().begin(),
                collector.pooled().end());
  std::sort(pooled.begin(), pooled.end(),
            [](const Message& a, const Message& b) { return a.round < b.round; });
  const std::size_t l_eff = pooled.size();
  const std::vector<Fp> all_challenges = pooled.back().payload;
  ChainResult chain = replay_chain(oracle, q, p, l_eff, all_challenges);
  net.views()[0].pooled = std::move(pooled);

  return finish_result(ProtoConfig::MAfter, n_servers, p, seed, user.core, net,
                       chain.leak);
}

}  // namespace blindbench
