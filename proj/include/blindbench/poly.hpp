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
#include <utility>
#include <vector>

#include "blindbench/field.hpp"

namespace blindbench {

// Dense univariate polynomial over one prime field, coefficients in
// ascending order with trailing zeros trimmed. The zero polynomial has an
// empty coefficient list and degree -1.
class Poly {
 public:
  explicit Poly(std::uint64_t p) : p_(p) {}
  Poly(std::uint64_t p, std::vector<Fp> coeffs);

  static Poly constant(Fp c);
  static Poly from_values(std::uint64_t p,
                          const std::vector<std::uint64_t>& coeffs);

  // Unique polynomial of degree < points.size() through the given points.
  // Duplicate x values are a DomainError.
  static Poly interpolate(const std::vector<std::pair<Fp, Fp>>& points);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Fp coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Fp::zero(p_);
  }

  Fp eval(Fp x) const;

  bool operator==(const Poly& o) const {
    return p_ == o.p_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Wire form: the coefficient list, padded to at least one entry so the
  // zero polynomial is visible on the wire as "0".
  std::vector<Fp> payload() const;
  std::string str() const;

 private:
  std::uint64_t p_;
  std::vector<Fp> coeffs_;
};

// Value of the degree-reduction blend w * P(1) + (1 - w) * P(0): the
// multilinear extension of P's values on {0, 1}, read at w.
inline Fp reduce_blend(const Poly& poly, Fp w) {
  Fp one = Fp::one(w.modulus());
  return w * poly.eval(one) + (one - w) * poly.eval(Fp::zero(w.modulus()));
}

}  // namespace blindbench
