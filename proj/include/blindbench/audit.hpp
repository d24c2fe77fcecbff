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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "blindbench/harness.hpp"

namespace blindbench {

// Blindness audit: a protocol is blind (at the audited scale) when the
// server's view distribution is the same for every input that shares the
// declared leakage. The audit runs a family of inputs under identical
// randomness models and compares the view distributions pairwise.

// ---------------------------------------------------------------------------
// Audit subjects

// One input family under one protocol. A subject fixes everything except
// the protocol randomness: given an input index and either an explicit
// challenge script (enumeration) or a session seed (sampling), it returns
// the server's serialized view.
class AuditSubject {
 public:
  virtual ~AuditSubject() = default;

  virtual std::size_t input_count() const = 0;
  virtual std::string input_label(std::size_t idx) const = 0;
  // Inputs may only be audited against each other when these agree.
  virtual std::string leakage_label(std::size_t idx) const = 0;

  virtual std::uint64_t modulus() const = 0;
  // Uniform field draws a session consumes at most (rejecting sessions may
  // consume fewer; the unused suffix is still enumerated).
  virtual std::size_t draw_count() const = 0;

  virtual std::string view(std::size_t idx,
                           const std::vector<Fp>& script) const = 0;
  virtual std::string view_seeded(std::size_t idx,
                                  std::uint64_t seed) const = 0;
};

// Server 1's view in the single-server protocol on a family of formulas.
class IpSingleServerSubject final : public AuditSubject {
 public:
  explicit IpSingleServerSubject(std::vector<Qbf> inputs,
                                 const HarnessOptions& opt = {});

  std::size_t input_count() const override { return inputs_.size(); }
  std::string input_label(std::size_t idx) const override;
  std::string leakage_label(std::size_t idx) const override;
  std::uint64_t modulus() const override { return p_; }
  std::size_t draw_count() const override { return draws_; }
  std::string view(std::size_t idx,
                   const std::vector<Fp>& script) const override;
  std::string view_seeded(std::size_t idx, std::uint64_t seed) const override;

 private:
  std::vector<Qbf> inputs_;
  HarnessOptions opt_;
  std::uint64_t p_;
  std::size_t draws_;
};

// One-time-pad fixture: the user sends x + r for a uniform field element r,
// the server's view is that single value. Blind by construction; the audit
// must return distance exactly 0 on it.
class PadSubject final : public AuditSubject {
 public:
  PadSubject(std::uint64_t p, std::vector<std::uint64_t> xs);

  std::size_t input_count() const override { return xs_.size(); }
  std::string input_label(std::size_t idx) const override;
  std::string leakage_label(std::size_t) const override { return "pad"; }
  std::uint64_t modulus() const override { return p_; }
  std::size_t draw_count() const override { return 1; }
  std::string view(std::size_t idx,
                   const std::vector<Fp>& script) const override;
  std::string view_seeded(std::size_t idx, std::uint64_t seed) const override;

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> xs_;
};

// ---------------------------------------------------------------------------
// Distributions

struct AuditMode {
  enum class Kind : std::uint8_t { Enumerate, Sample };
  Kind kind = Kind::Enumerate;
  std::uint64_t samples = 10000;  // Sample only
  std::uint64_t seed = 1;         // Sample only

  static AuditMode enumerate() { return {}; }
  static AuditMode sample(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::Sample, samples, seed};
  }
  std::string str() const;
};

// Enumeration walks every challenge script in [0, p^draws) (base-p digits,
// least significant digit = first draw), so counts are exact rationals over
// `total`. Sampling runs `samples` sessions on seeds derived from the mode
// seed. Keys are serialized views.
struct ViewDistribution {
  bool enumerated = true;
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> counts;

  double probability(const std::string& key) const;
};

// Cap on p^draws for enumeration mode.
inline constexpr std::uint64_t kEnumerationCap = 1000000;

ViewDistribution collect_view_distribution(const AuditSubject& subject,
                                           std::size_t input_idx,
                                           const AuditMode& mode);

// Total variation distance, 1/2 * sum |p1(v) - p2(v)|. Mixing enumerated
// and sampled distributions is a DomainError.
double statistical_distance(const ViewDistribution& d1,
                            const ViewDistribution& d2);

// Exact equality via cross-multiplied counts; no floating point involved.
bool distributions_equal(const ViewDistribution& d1,
                         const ViewDistribution& d2);

// ---------------------------------------------------------------------------
// Verdict

enum class AuditVerdict : std::uint8_t { BlindAtScale, NotBlind };
const char* audit_verdict_str(AuditVerdict v);

struct PairDistance {
  std::size_t a;
  std::size_t b;
  double distance;
  bool exact_equal;
};

struct AuditReport {
  AuditMode mode;
  double tolerance = 0;
  std::vector<std::string> labels;
  std::string leakage;  // shared leakage label of the family
  std::vector<PairDistance> pairs;
  double max_distance = 0;
  AuditVerdict verdict = AuditVerdict::NotBlind;

  bool blind() const { return verdict == AuditVerdict::BlindAtScale; }
  std::string to_text() const;
};

// Pairwise distances over the subject's input family. Requires at least two
// inputs with identical leakage labels (otherwise the audit is vacuous and
// throws ConfigError). Tolerance < 0 picks the default for the mode: 0 for
// enumeration, 0.02 for sampling. At tolerance 0 the verdict uses exact
// count comparison, never floating point.
AuditReport audit_blindness(const AuditSubject& subject, const AuditMode& mode,
                            double tolerance = -1);

// FNV-1a, used to fingerprint inputs in reports.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace blindbench
