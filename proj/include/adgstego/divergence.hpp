// Copyright 2026 The adgstego Authors.
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

#ifndef ADGSTEGO_DIVERGENCE_HPP
#define ADGSTEGO_DIVERGENCE_HPP

#include <cmath>
#include <limits>
#include <span>

#include "adgstego/common.hpp"

namespace adgstego::metrics {

/// Pairwise (cascade) summation; the result depends only on the order of
/// `values`, which keeps reductions reproducible.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Shannon entropy in bits.
inline double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

/// D_KL(p‖q) in bits. Terms with p = 0 contribute nothing; p > 0 = q gives
/// +infinity.
inline double kl_bits(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw PreconditionError("kl_bits: distributions differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

}  // namespace adgstego::metrics

#endif  // ADGSTEGO_DIVERGENCE_HPP
