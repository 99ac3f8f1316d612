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

// Capacity and imperceptibility figures, all in bits.

#ifndef ADGSTEGO_METRICS_HPP
#define ADGSTEGO_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "adgstego/codec.hpp"
#include "adgstego/common.hpp"
#include "adgstego/divergence.hpp"
#include "adgstego/random.hpp"

namespace adgstego::metrics {

inline constexpr std::size_t kVectorDim = 100;
inline constexpr double kSigmaFloor = 1e-6;
inline constexpr const char* kVectorizerId = "hashed-bow-pm1";

/// Carried bits per generated token; header and padding bits count.
inline double embedding_rate(std::span<const stego::TraceRecord> trace) {
  if (trace.empty()) throw PreconditionError("embedding_rate: empty trace");
  std::uint64_t bits = 0;
  for (const auto& r : trace) bits += r.step.bits;
  return static_cast<double>(bits) / static_cast<double>(trace.size());
}

/// Payload bits per generated token, ignoring framing and padding.
inline double payload_embedding_rate(std::span<const stego::TraceRecord> trace, std::uint64_t payload_bits) {
  if (trace.empty()) throw PreconditionError("payload_embedding_rate: empty trace");
  return static_cast<double>(payload_bits) / static_cast<double>(trace.size());
}

struct Kld1 {
  double qp = 0.0;  // mean D(q‖p)
  double pq = 0.0;  // mean D(p‖q); +inf if any step is infinite
  std::size_t steps = 0;
};

/// Mean per-step divergences over records that carry metrics.
inline Kld1 kld1(std::span<const stego::TraceRecord> trace) {
  std::vector<double> qp;
  std::vector<double> pq;
  for (const auto& r : trace) {
    if (!r.metrics) continue;
    qp.push_back(r.metrics->kl_qp);
    pq.push_back(r.metrics->kl_pq);
  }
  if (qp.empty()) throw PreconditionError("kld1: trace has no per-step metrics");
  const auto n = static_cast<double>(qp.size());
  return {pairwise_sum(qp) / n, pairwise_sum(pq) / n, qp.size()};
}

/// Mean per-step model entropy over records that carry metrics.
inline double mean_entropy(std::span<const stego::TraceRecord> trace) {
  std::vector<double> h;
  for (const auto& r : trace) {
    if (r.metrics) h.push_back(r.metrics->entropy);
  }
  if (h.empty()) throw PreconditionError("mean_entropy: trace has no per-step metrics");
  return pairwise_sum(h) / static_cast<double>(h.size());
}

/// Hashed bag-of-words projection: every token contributes a ±1 pattern
/// derived from its hash and `seed`; the sum is scaled to unit length.
inline std::vector<double> sentence_vector(std::span<const std::string> tokens, std::uint64_t seed,
                                           std::size_t dim = kVectorDim) {
  if (tokens.empty()) throw PreconditionError("sentence_vector: empty sentence");
  if (dim == 0) throw PreconditionError("sentence_vector: zero dimension");
  std::vector<double> v(dim, 0.0);
  for (const auto& t : tokens) {
    std::uint64_t state = fnv1a64(t) ^ seed;
    for (std::size_t d = 0; d < dim; ++d) v[d] += (splitmix64(state) >> 63) != 0 ? 1.0 : -1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

inline std::vector<double> sentence_vector(std::string_view sentence, std::uint64_t seed,
                                           std::size_t dim = kVectorDim) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(sentence)};
  for (std::string t; in >> t;) tokens.push_back(t);
  return sentence_vector(std::span<const std::string>(tokens), seed, dim);
}

namespace detail {

struct Moments {
  std::vector<double> mean;
  std::vector<double> sd;
};

inline Moments moments(const std::vector<std::vector<double>>& vs) {
  const std::size_t dim = vs.front().size();
  const auto n = static_cast<double>(vs.size());
  Moments m{std::vector<double>(dim), std::vector<double>(dim)};
  std::vector<double> column(vs.size());
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].size() != dim) throw PreconditionError("kld2: vectors differ in dimension");
      column[i] = vs[i][d];
    }
    const double mu = pairwise_sum(column) / n;
    for (double& x : column) x = (x - mu) * (x - mu);
    m.mean[d] = mu;
    m.sd[d] = std::max(std::sqrt(pairwise_sum(column) / (n - 1.0)), kSigmaFloor);
  }
  return m;
}

}  // namespace detail

/// Sum over dimensions of KL(N(μx, σx²) ‖ N(μy, σy²)) in bits, x the cover
/// sample and y the stego sample.
inline double kld2(const std::vector<std::vector<double>>& cover, const std::vector<std::vector<double>>& stego) {
  if (cover.size() < 2 || stego.size() < 2) throw PreconditionError("kld2: need at least two vectors per side");
  if (cover.front().size() != stego.front().size()) throw PreconditionError("kld2: vectors differ in dimension");
  const auto x = detail::moments(cover);
  const auto y = detail::moments(stego);
  std::vector<double> terms(x.mean.size());
  for (std::size_t d = 0; d < terms.size(); ++d) {
    const double diff = x.mean[d] - y.mean[d];
    terms[d] = std::log(y.sd[d] / x.sd[d]) + (x.sd[d] * x.sd[d] + diff * diff) / (2.0 * y.sd[d] * y.sd[d]) - 0.5;
  }
  return pairwise_sum(terms) / std::numbers::ln2;
}

/// Effective embedding rate: capacity discounted by steganalysis accuracy.
/// Accuracies below one half are reflected.
inline double eer(double acc, double er) {
  if (!(acc >= 0.0 && acc <= 1.0)) throw PreconditionError("eer: accuracy must lie in [0, 1]");
  if (!(er >= 0.0)) throw PreconditionError("eer: embedding rate must be nonnegative");
  const double a = std::max(acc, 1.0 - acc);
  return 2.0 * (1.0 - a) * er;
}

struct MetricReport {
  std::string method;
  std::string params;
  std::string corpus;
  double er = 0.0;
  double payload_er = 0.0;
  double kld1_qp = 0.0;
  double kld1_pq = 0.0;
  double kld2 = 0.0;
  std::optional<double> eer;
  double mean_entropy = 0.0;
  std::size_t tokens = 0;
  std::size_t stegotexts = 0;
};

inline std::string csv_header() { return "method,params,corpus,er,kld1_qp,kld1_pq,kld2,eer"; }

inline std::string format_fixed(double v, int digits = 6) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

inline std::string csv_row(const MetricReport& r) {
  std::string row = r.method + ',' + r.params + ',' + r.corpus + ',' + format_fixed(r.er) + ',' +
                    format_fixed(r.kld1_qp) + ',' + format_fixed(r.kld1_pq) + ',' + format_fixed(r.kld2) + ',';
  if (r.eer) row += format_fixed(*r.eer);
  return row;
}

}  // namespace adgstego::metrics

#endif  // ADGSTEGO_METRICS_HPP
