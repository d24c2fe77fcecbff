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

#include "blindbench/audit.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <utility>

#include "blindbench/errors.hpp"
#include "blindbench/rng.hpp"

namespace blindbench {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex16(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Subjects

IpSingleServerSubject::IpSingleServerSubject(std::vector<Qbf> inputs,
                                             const HarnessOptions& opt)
    : inputs_(std::move(inputs)), opt_(opt) {
  if (inputs_.empty()) throw ConfigError("audit subject needs inputs");
  IpOptions ip;
  ip.p = opt_.p;
  ip.allow_small_field = opt_.allow_small_field;
  ip.mode = opt_.mode;
  p_ = resolve_session_prime(inputs_.front(), ip);
  draws_ = build_schedule(inputs_.front()).size();
  for (const Qbf& q : inputs_) {
    if (q.prefix.size() != inputs_.front().prefix.size())
      throw ConfigError("audit inputs must share the variable count");
  }
  opt_.p = p_;  // freeze one modulus for the whole family
}

std::string IpSingleServerSubject::input_label(std::size_t idx) const {
  const std::string text = print_qbf(inputs_.at(idx));
  return "qbf#" + hex16(fnv1a64(text));
}

std::string IpSingleServerSubject::leakage_label(std::size_t idx) const {
  return leakage(inputs_.at(idx)).str();
}

std::string IpSingleServerSubject::view(std::size_t idx,
                                        const std::vector<Fp>& script) const {
  SessionResult r = run_protocol_S_scripted(inputs_.at(idx), script, nullptr,
                                            opt_);
  return view_str(r.views.front());
}

std::string IpSingleServerSubject::view_seeded(std::size_t idx,
                                               std::uint64_t seed) const {
  SessionResult r = run_protocol_S(inputs_.at(idx), seed, nullptr, opt_);
  return view_str(r.views.front());
}

PadSubject::PadSubject(std::uint64_t p, std::vector<std::uint64_t> xs)
    : p_(p), xs_(std::move(xs)) {
  if (!is_prime(p_)) throw ConfigError("pad modulus must be prime");
  if (xs_.empty()) throw ConfigError("audit subject needs inputs");
}

std::string PadSubject::input_label(std::size_t idx) const {
  return "x=" + std::to_string(xs_.at(idx) % p_);
}

std::string PadSubject::view(std::size_t idx,
                             const std::vector<Fp>& script) const {
  const Fp masked = Fp(xs_.at(idx), p_) + script.at(0);
  return "pad v=" + masked.str();
}

std::string PadSubject::view_seeded(std::size_t idx,
                                    std::uint64_t seed) const {
  SplitMix64 rng(seed);
  return view(idx, {Fp(rng.next_below(p_), p_)});
}

// ---------------------------------------------------------------------------
// Distributions

std::string AuditMode::str() const {
  if (kind == Kind::Enumerate) return "enumerate";
  return "sample k=" + std::to_string(samples) +
         " seed=" + std::to_string(seed);
}

double ViewDistribution::probability(const std::string& key) const {
  const auto it = counts.find(key);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp,
                          std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base)
      throw ConfigError("enumeration space " + std::to_string(base) + "^" +
                        std::to_string(exp) + " exceeds the cap " +
                        std::to_string(cap) + "; use sampled mode");
    out *= base;
  }
  return out;
}

// Distribution collection fans the independent sessions out across threads;
// per-thread tallies merge into one ordered map, so the result does not
// depend on the scheduling.
template <typename ViewFn>
ViewDistribution tally(std::uint64_t total, const ViewFn& view_of) {
  ViewDistribution dist;
  dist.total = total;
#pragma omp parallel
  {
    std::map<std::string, std::uint64_t> local;
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(total); ++i)
      ++local[view_of(static_cast<std::uint64_t>(i))];
#pragma omp critical(blindbench_audit_merge)
    for (const auto& [key, count] : local) dist.counts[key] += count;
  }
  return dist;
}

}  // namespace

ViewDistribution collect_view_distribution(const AuditSubject& subject,
                                           std::size_t input_idx,
                                           const AuditMode& mode) {
  const std::uint64_t p = subject.modulus();
  if (mode.kind == AuditMode::Kind::Enumerate) {
    const std::uint64_t total =
        checked_pow(p, subject.draw_count(), kEnumerationCap);
    ViewDistribution dist = tally(total, [&](std::uint64_t index) {
      std::vector<Fp> script(subject.draw_count(), Fp::zero(p));
      for (std::size_t j = 0; j < script.size(); ++j) {
        script[j] = Fp(index % p, p);
        index /= p;
      }
      return subject.view(input_idx, script);
    });
    dist.enumerated = true;
    return dist;
  }
  if (mode.samples == 0) throw ConfigError("sampled audit needs samples > 0");
  ViewDistribution dist = tally(mode.samples, [&](std::uint64_t i) {
    return subject.view_seeded(input_idx, derive_seed(mode.seed, i));
  });
  dist.enumerated = false;
  return dist;
}

double statistical_distance(const ViewDistribution& d1,
                            const ViewDistribution& d2) {
  if (d1.enumerated != d2.enumerated)
    throw DomainError("cannot compare enumerated with sampled distributions");
  if (d1.total == 0 || d2.total == 0)
    throw DomainError("empty distribution");
  double sum = 0;
  auto it1 = d1.counts.begin();
  auto it2 = d2.counts.begin();
  const auto p1 = [&](std::uint64_t c) {
    return static_cast<double>(c) / static_cast<double>(d1.total);
  };
  const auto p2 = [&](std::uint64_t c) {
    return static_cast<double>(c) / static_cast<double>(d2.total);
  };
  while (it1 != d1.counts.end() || it2 != d2.counts.end()) {
    if (it2 == d2.counts.end() ||
        (it1 != d1.counts.end() && it1->first < it2->first)) {
      sum += p1(it1->second);
      ++it1;
    } else if (it1 == d1.counts.end() || it2->first < it1->first) {
      sum += p2(it2->second);
      ++it2;
    } else {
      sum += std::abs(p1(it1->second) - p2(it2->second));
      ++it1;
      ++it2;
    }
  }
  return sum / 2;
}

bool distributions_equal(const ViewDistribution& d1,
                         const ViewDistribution& d2) {
  if (d1.enumerated != d2.enumerated || d1.total == 0 || d2.total == 0)
    return false;
  if (d1.counts.size() != d2.counts.size()) return false;
  auto it2 = d2.counts.begin();
  for (const auto& [key, c1] : d1.counts) {
    if (it2->first != key) return false;
    // c1/t1 == c2/t2 as exact rationals
    if (static_cast<unsigned __int128>(c1) * d2.total !=
        static_cast<unsigned __int128>(it2->second) * d1.total)
      return false;
    ++it2;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Verdict

const char* audit_verdict_str(AuditVerdict v) {
  return v == AuditVerdict::BlindAtScale ? "BLIND_AT_SCALE" : "NOT_BLIND";
}

AuditReport audit_blindness(const AuditSubject& subject, const AuditMode& mode,
                            double tolerance) {
  const std::size_t count = subject.input_count();
  if (count < 2)
    throw ConfigError("blindness audit needs at least two inputs");
  for (std::size_t i = 1; i < count; ++i) {
    if (subject.leakage_label(i) != subject.leakage_label(0))
      throw ConfigError(
          "audit inputs leak different values (" + subject.leakage_label(0) +
          " vs " + subject.leakage_label(i) + "); the audit would be vacuous");
  }

  AuditReport report;
  report.mode = mode;
  report.leakage = subject.leakage_label(0);
  if (tolerance < 0)
    tolerance = mode.kind == AuditMode::Kind::Enumerate ? 0.0 : 0.02;
  report.tolerance = tolerance;

  std::vector<ViewDistribution> dists;
  dists.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    report.labels.push_back(subject.input_label(i));
    dists.push_back(collect_view_distribution(subject, i, mode));
  }

  bool blind = true;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      PairDistance pd{a, b, statistical_distance(dists[a], dists[b]),
                      distributions_equal(dists[a], dists[b])};
      report.max_distance = std::max(report.max_distance, pd.distance);
      if (tolerance == 0 ? !pd.exact_equal : pd.distance > tolerance)
        blind = false;
      report.pairs.push_back(pd);
    }
  }
  report.verdict = blind ? AuditVerdict::BlindAtScale : AuditVerdict::NotBlind;
  return report;
}

std::string AuditReport::to_text() const {
  std::ostringstream os;
  os << "blindbench-audit v1\n";
  os << "mode=" << mode.str() << " tolerance=" << tolerance
     << " leakage=" << leakage << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    os << "input " << i << ": label=" << labels[i]
       << " hash=" << hex16(fnv1a64(labels[i])) << "\n";
  for (const PairDistance& pd : pairs)
    os << "pair " << pd.a << "," << pd.b << ": distance=" << pd.distance
       << " exact-equal=" << (pd.exact_equal ? "yes" : "no") << "\n";
  os << "max-distance=" << max_distance << "\n";
  os << "verdict=" << audit_verdict_str(verdict) << "\n";
  os << "end\n";
  return os.str();
}

}  // namespace blindbench
