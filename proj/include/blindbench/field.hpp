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
#include <string>

#include "blindbench/errors.hpp"

namespace blindbench {

// Element of the prime field Z/p. Each element carries its modulus; mixing
// moduli in one operation is a DomainError. All session randomness, round
// polynomials and transcript payloads are values of this type.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  Fp operator+(Fp o) const {
    check(o);
    std::uint64_t s = v_ + o.v_;  // p < 2^63 keeps this from wrapping
    if (s >= p_) s -= p_;
    return raw(s, p_);
  }

  Fp operator-(Fp o) const {
    check(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
  }

  Fp operator*(Fp o) const {
    check(o);
    return raw(static_cast<std::uint64_t>(
                   (static_cast<unsigned __int128>(v_) * o.v_) % p_),
               p_);
  }

  Fp operator/(Fp o) const {
    check(o);
    return *this * o.inv();
  }

  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

  bool operator==(Fp o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(Fp o) const { return !(*this == o); }

  bool is_zero() const { return v_ == 0; }

  // Multiplicative inverse by extended Euclid; inverting zero is the
  // division-by-zero error the callers rely on being loud.
  Fp inv() const {
    if (v_ == 0)
      throw DomainError("division by zero in F_" + std::to_string(p_));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_);
    std::int64_t new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return raw(static_cast<std::uint64_t>(t), p_);
  }

  Fp pow(std::uint64_t e) const {
    Fp acc = raw(1 % p_, p_);
    Fp base = *this;
    while (e != 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const { return std::to_string(v_); }

  static Fp zero(std::uint64_t p) { return raw(0, p); }
  static Fp one(std::uint64_t p) { return raw(1 % p, p); }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp e;
    e.v_ = v;
    e.p_ = p;
    return e;
  }

  void check(Fp o) const {
    if (p_ != o.p_)
      throw DomainError("field element moduli differ: " + std::to_string(p_) +
                        " vs " + std::to_string(o.p_));
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

// Deterministic trial-division primality test; moduli here stay tiny.
bool is_prime(std::uint64_t x);

// Smallest prime admissible for a session on n variables. The soundness
// error of a run scales like (sum of round degrees)/p, so the field must
// grow with the instance: p >= n^4, with a floor of 17 so single-variable
// sessions are not run over toy fields.
std::uint64_t smallest_session_prime(unsigned n);

}  // namespace blindbench
