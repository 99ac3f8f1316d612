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

// Method grid evaluation over a trained n-gram model.
//
// Each cell embeds `stegotexts` independent random payloads, prompting from
// BOS only. Payload i, and the sampling and padding streams used for it, are
// derived from the configured seeds and i alone, so every cell hides the same
// payloads and a cell's result does not depend on which thread ran it.

#ifndef ADGSTEGO_BENCH_HPP
#define ADGSTEGO_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "adgstego/baselines.hpp"
#include "adgstego/codec.hpp"
#include "adgstego/config.hpp"
#include "adgstego/corpus.hpp"
#include "adgstego/language_model.hpp"
#include "adgstego/metrics.hpp"
#include "adgstego/random.hpp"

namespace adgstego::bench {

/// Stream seed for item `index` of the stream family `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  return splitmix64(s);
}

inline bitio::Bits random_payload(std::size_t bits, std::uint64_t seed) {
  Rng rng(seed);
  bitio::Bits out(bits);
  for (std::size_t i = 0; i < bits; ++i) out[i] = random_bit(rng);
  return out;
}

/// Covertext sample of `n` sentences from `test`, re-rendered through the
/// vocabulary so unknown words read as _UNK just as in generated text. Draws
/// without replacement while possible.
inline std::vector<std::string> cover_sample(const std::vector<std::string>& test, const corpus::Vocabulary& vocab,
                                             std::size_t n, std::uint64_t seed) {
  if (test.empty()) throw PreconditionError("bench: test split is empty");
  std::vector<std::size_t> order(test.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  while (out.size() < n) {
    portable_shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t i = 0; i < order.size() && out.size() < n; ++i) {
      const auto s = vocab.encode(test[order[i]]);
      out.push_back(vocab.decode(std::span<const TokenId>(s.tokens).subspan(1, s.tokens.size() - 2)));
    }
  }
  return out;
}

struct CellResult {
  metrics::MetricReport report;
  std::size_t sentences = 0;
  std::uint64_t payload_bits = 0;
};

/// Runs one grid cell.
inline CellResult run_cell(const lm::NGramLM& model, const stego::CodecSpec& spec, const config::RunConfig& cfg,
                           const std::vector<std::vector<double>>& cover_vectors) {
  const auto codec = stego::make_codec(spec, model.vocabulary().size(), cfg.seeds.partition);
  lm::NGramSource source(model, 4096);
  std::vector<stego::TraceRecord> trace;
  std::vector<std::vector<double>> stego_vectors;
  CellResult out;
  for (std::size_t i = 0; i < cfg.bench.stegotexts; ++i) {
    const auto payload = random_payload(cfg.bench.payload_bits, derive_seed(cfg.seeds.payload, i));
    const stego::Seeds seeds{derive_seed(cfg.seeds.sample, i), derive_seed(cfg.seeds.pad, i)};
    auto text = stego::embed(*codec, payload, source, seeds, cfg.limits, true);
    std::vector<std::string> words;
    for (const auto& s : text.sentences) {
      out.sentences += 1;
      for (TokenId id : s) words.push_back(model.vocabulary().surface(id));
    }
    if (words.empty()) words.push_back(std::string(corpus::Vocabulary::kReserved[kEosId]));
    stego_vectors.push_back(metrics::sentence_vector(std::span<const std::string>(words), cfg.seeds.vector));
    out.payload_bits += payload.size();
    trace.insert(trace.end(), std::make_move_iterator(text.trace.begin()), std::make_move_iterator(text.trace.end()));
  }
  auto& r = out.report;
  r.method = codec->method();
  r.params = codec->params();
  r.corpus = cfg.bench.corpus_name;
  r.er = metrics::embedding_rate(trace);
  r.payload_er = metrics::payload_embedding_rate(trace, out.payload_bits);
  const auto k1 = metrics::kld1(trace);
  r.kld1_qp = k1.qp;
  r.kld1_pq = k1.pq;
  r.kld2 = metrics::kld2(cover_vectors, stego_vectors);
  r.mean_entropy = metrics::mean_entropy(trace);
  r.tokens = trace.size();
  r.stegotexts = cfg.bench.stegotexts;
  return out;
}

struct BenchResult {
  std::vector<CellResult> cells;
  double cover_noise_floor = 0.0;  // KLD2 between two halves of the cover sample
};

/// Evaluates every method in cfg.bench.methods. Results keep the order of
/// the method list regardless of scheduling.
inline BenchResult run(const lm::NGramLM& model, const std::vector<std::string>& test_sentences,
                       const config::RunConfig& cfg, std::ostream* log = nullptr) {
  const auto cover = cover_sample(test_sentences, model.vocabulary(), cfg.bench.stegotexts, cfg.seeds.cover);
  std::vector<std::vector<double>> cover_vectors;
  cover_vectors.reserve(cover.size());
  for (const auto& s : cover) cover_vectors.push_back(metrics::sentence_vector(s, cfg.seeds.vector));

  BenchResult result;
  if (cover_vectors.size() >= 4) {
    const auto half = static_cast<std::ptrdiff_t>(cover_vectors.size() / 2);
    const std::vector<std::vector<double>> a(cover_vectors.begin(), cover_vectors.begin() + half);
    const std::vector<std::vector<double>> b(cover_vectors.begin() + half, cover_vectors.end());
    result.cover_noise_floor = metrics::kld2(a, b);
  }

  std::vector<stego::CodecSpec> specs;
  for (const auto& m : cfg.bench.methods) specs.push_back(stego::parse_codec_spec(m));
  result.cells.resize(specs.size());

  std::size_t threads = cfg.bench.threads == 0 ? std::thread::hardware_concurrency() : cfg.bench.threads;
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(specs.size(), 1));
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr failure;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        result.cells[i] = run_cell(model, specs[i], cfg, cover_vectors);
        if (log) {
          const std::lock_guard lock(log_mutex);
          *log << "bench: " << cfg.bench.methods[i] << " done (er " << metrics::format_fixed(result.cells[i].report.er, 3)
               << ")\n";
        }
      } catch (...) {
        const std::lock_guard lock(log_mutex);
        if (!failure) failure = std::current_exception();
        next.store(specs.size());
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

inline void write_csv(std::ostream& out, const BenchResult& result) {
  out << metrics::csv_header() << '\n';
  for (const auto& c : result.cells) out << metrics::csv_row(c.report) << '\n';
}

/// Human-readable report: the configuration that produced the run, then one
/// block per cell with the figures the CSV omits.
inline void write_report(std::ostream& out, const BenchResult& result, const config::RunConfig& cfg,
                         const lm::NGramLM& model) {
  out << "model: order " << model.order() << ", smoothing " << model.smoothing() << ", vocabulary "
      << model.vocabulary().size() << '\n';
  out << "seeds: " << config::seeds_json(cfg.seeds).dump() << '\n';
  out << "stegotexts per cell: " << cfg.bench.stegotexts << ", payload bits: " << cfg.bench.payload_bits << '\n';
  out << "prompt: BOS only; sentence length " << cfg.limits.min_length << ".." << cfg.limits.max_length << '\n';
  out << "vectorizer: " << metrics::kVectorizerId << ", dim " << metrics::kVectorDim << ", seed " << cfg.seeds.vector
      << '\n';
  out << "kld2 cover noise floor: " << metrics::format_fixed(result.cover_noise_floor) << '\n';
  out << '\n';
  out << "method             params          er        payload_er  entropy   kld1_qp   kld1_pq   kld2      tokens  "
         "sentences\n";
  for (const auto& c : result.cells) {
    const auto& r = c.report;
    std::string line = r.method;
    line.resize(19, ' ');
    std::string params = r.params;
    params.resize(16, ' ');
    line += params;
    for (double v : {r.er, r.payload_er, r.mean_entropy, r.kld1_qp, r.kld1_pq, r.kld2}) {
      std::string f = metrics::format_fixed(v, 4);
      f.resize(10, ' ');
      line += f;
    }
    line += std::to_string(r.tokens);
    line.resize(line.size() + (8 > std::to_string(r.tokens).size() ? 8 - std::to_string(r.tokens).size() : 1), ' ');
    line += std::to_string(c.sentences);
    out << line << '\n';
  }
}

}  // namespace adgstego::bench

#endif  // ADGSTEGO_BENCH_HPP
