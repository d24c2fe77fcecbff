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

#include "blindbench/poly.hpp"

namespace blindbench {

Poly::Poly(std::uint64_t p, std::vector<Fp> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  for (const Fp& c : coeffs_) {
    if (c.modulus() != p_)
      throw DomainError("polynomial coefficient from a different field");
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(Fp c) { return Poly(c.modulus(), {c}); }

Poly Poly::from_values(std::uint64_t p,
                       const std::vector<std::uint64_t>& coeffs) {
  std::vector<Fp> cs;
  cs.reserve(coeffs.size());
  for (std::uint64_t c : coeffs) cs.emplace_back(c, p);
  return Poly(p, std::move(cs));
}

Fp Poly::eval(Fp x) const {
  Fp acc = Fp::zero(p_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Poly Poly::interpolate(const std::vector<std::pair<Fp, Fp>>& points) {
  if (points.empty()) throw DomainError("interpolation needs at least 1 point");
  const std::uint64_t p = points[0].first.modulus();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].first == points[j].first)
        throw DomainError("interpolation points share x = " +
                          points[i].first.str());
    }
  }

  // Lagrange: sum_i y_i * prod_{j != i} (x - x_j) / (x_i - x_j).
  std::vector<Fp> acc(points.size(), Fp::zero(p));
  std::vector<Fp> basis;
  for (std::size_t i = 0; i < points.size(); ++i) {
    basis.assign(1, Fp::one(p));
    Fp denom = Fp::one(p);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      // basis *= (x - x_j)
      basis.emplace_back(Fp::zero(p));
      for (std::size_t k = basis.size(); k-- > 1;)
        basis[k] = basis[k - 1] - basis[k] * points[j].first;
      basis[0] = -basis[0] * points[j].first;
      denom = denom * (points[i].first - points[j].first);
    }
    Fp scale = points[i].second / denom;
    for (std::size_t k = 0; k < basis.size(); ++k)
      acc[k] = acc[k] + basis[k] * scale;
  }
  return Poly(p, std::move(acc));
}

std::vector<Fp> Poly::payload() const {
  if (coeffs_.empty()) return {Fp::zero(p_)};
  return coeffs_;
}

std::string Poly::str() const {
  std::string out;
  for (const Fp& c : payload()) {
    if (!out.empty()) out += ',';
    out += c.str();
  }
  return out;
}

}  // namespace blindbench
