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

// Run configuration: a JSON document whose key set is fixed by the
// defaults below. Files and `key.path=value` overrides are merged onto the
// defaults and then type-checked; any problem is reported with its key path.

#ifndef ADGSTEGO_CONFIG_HPP
#define ADGSTEGO_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgstego/baselines.hpp"
#include "adgstego/codec.hpp"
#include "adgstego/common.hpp"
#include "adgstego/corpus.hpp"

namespace adgstego::config {

using nlohmann::json;

struct SeedConfig {
  std::uint64_t split = 42;
  std::uint64_t sample = 1;
  std::uint64_t pad = 2;
  std::uint64_t partition = 3;
  std::uint64_t payload = 4;
  std::uint64_t cover = 5;
  std::uint64_t vector = 6;
};

struct BenchConfig {
  std::size_t stegotexts = 1000;
  std::size_t payload_bits = 64;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::string corpus_name = "corpus";
  std::vector<std::string> methods;
};

struct RunConfig {
  // corpus
  std::string raw;
  std::string train;
  std::string test;
  std::string vocab;
  bool line_mode = true;
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 200;
  std::uint64_t split_train = 9;
  std::uint64_t split_test = 1;
  std::uint64_t min_count = 10;
  // lm
  std::string model;
  unsigned order = 3;
  double smoothing = 0.1;
  std::string provider;
  // codec
  stego::CodecSpec codec;
  stego::Limits limits;
  SeedConfig seeds;
  BenchConfig bench;
  std::string out_dir = "out";
};

inline std::vector<std::string> default_methods() {
  return {"adg",
          "bins:b=1",
          "bins:b=2",
          "bins:b=3",
          "bins:b=4",
          "bins:b=5",
          "huffman:k=1",
          "huffman:k=2",
          "huffman:k=3",
          "huffman:k=4",
          "huffman:k=5",
          "patient_huffman:k=3,delta=1",
          "patient_huffman:k=3,delta=1.5",
          "patient_huffman:k=3,delta=2",
          "arithmetic:h=100",
          "arithmetic:h=200",
          "arithmetic:h=300"};
}

inline json defaults() {
  const RunConfig c;
  return json{
      {"corpus",
       {{"raw", c.raw},
        {"train", c.train},
        {"test", c.test},
        {"vocab", c.vocab},
        {"line_mode", c.line_mode},
        {"min_tokens", c.min_tokens},
        {"max_tokens", c.max_tokens},
        {"split", {c.split_train, c.split_test}},
        {"min_count", c.min_count}}},
      {"lm", {{"model", c.model}, {"order", c.order}, {"smoothing", c.smoothing}, {"provider", c.provider}}},
      {"codec",
       {{"method", c.codec.method},
        {"b", c.codec.b},
        {"k", c.codec.k},
        {"delta", c.codec.delta},
        {"h", c.codec.h},
        {"precision", c.codec.precision}}},
      {"limits",
       {{"min_length", c.limits.min_length},
        {"max_length", c.limits.max_length},
        {"max_tokens", c.limits.max_tokens},
        {"max_sentences", c.limits.max_sentences}}},
      {"seeds",
       {{"split", c.seeds.split},
        {"sample", c.seeds.sample},
        {"pad", c.seeds.pad},
        {"partition", c.seeds.partition},
        {"payload", c.seeds.payload},
        {"cover", c.seeds.cover},
        {"vector", c.seeds.vector}}},
      {"bench",
       {{"stegotexts", c.bench.stegotexts},
        {"payload_bits", c.bench.payload_bits},
        {"threads", c.bench.threads},
        {"corpus_name", c.bench.corpus_name},
        {"methods", default_methods()}}},
      {"output", {{"dir", c.out_dir}}},
  };
}

namespace detail {

inline std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

inline const char* kind(const json& j) {
  if (j.is_boolean()) return "a boolean";
  if (j.is_number_unsigned()) return "a nonnegative integer";
  if (j.is_number()) return "a number";
  if (j.is_string()) return "a string";
  if (j.is_array()) return "an array";
  if (j.is_object()) return "an object";
  return "null";
}

inline bool compatible(const json& schema, const json& value) {
  if (schema.is_boolean()) return value.is_boolean();
  if (schema.is_number_unsigned()) return value.is_number_unsigned();
  if (schema.is_number_float()) return value.is_number();
  if (schema.is_string()) return value.is_string();
  if (schema.is_array()) return value.is_array();
  if (schema.is_object()) return value.is_object();
  return false;
}

// Overlays `patch` onto `base`, rejecting unknown keys and type changes.
inline void merge(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string path = join(prefix, it.key());
    if (!base.contains(it.key())) throw ConfigError(path, "unknown key");
    json& slot = base[it.key()];
    if (!compatible(slot, it.value())) {
      throw ConfigError(path, std::string("expected ") + kind(slot) + ", got " + kind(it.value()));
    }
    if (slot.is_object()) {
      merge(slot, it.value(), path);
    } else {
      slot = it.value();
    }
  }
}

template <class T>
T get(const json& root, const std::string& path) {
  const json* j = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    j = &j->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    return j->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace detail

/// Applies one `a.b.c=value` override. The value is read as JSON when it
/// parses as such and as a bare string otherwise.
inline void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like key.path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json patch = value;
  std::vector<std::string> keys;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    keys.push_back(path.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
    if (it->empty()) throw ConfigError(path, "empty key in path");
    patch = json{{*it, patch}};
  }
  detail::merge(doc, patch, "");
}

template <class T>
T require_positive(T v, const std::string& path) {
  if (v <= T{0}) throw ConfigError(path, "must be positive");
  return v;
}

/// Builds a RunConfig from a merged document.
inline RunConfig from_json(const json& doc) {
  using detail::get;
  RunConfig c;
  c.raw = get<std::string>(doc, "corpus.raw");
  c.train = get<std::string>(doc, "corpus.train");
  c.test = get<std::string>(doc, "corpus.test");
  c.vocab = get<std::string>(doc, "corpus.vocab");
  c.line_mode = get<bool>(doc, "corpus.line_mode");
  c.min_tokens = get<std::size_t>(doc, "corpus.min_tokens");
  c.max_tokens = get<std::size_t>(doc, "corpus.max_tokens");
  if (c.min_tokens > c.max_tokens) throw ConfigError("corpus.min_tokens", "exceeds corpus.max_tokens");
  const auto split = get<std::vector<std::uint64_t>>(doc, "corpus.split");
  if (split.size() != 2 || split[0] == 0 || split[1] == 0) {
    throw ConfigError("corpus.split", "expected two positive integers train:test");
  }
  c.split_train = split[0];
  c.split_test = split[1];
  c.min_count = require_positive(get<std::uint64_t>(doc, "corpus.min_count"), "corpus.min_count");

  c.model = get<std::string>(doc, "lm.model");
  c.order = get<unsigned>(doc, "lm.order");
  if (c.order < 2) throw ConfigError("lm.order", "must be at least 2");
  c.smoothing = require_positive(get<double>(doc, "lm.smoothing"), "lm.smoothing");
  c.provider = get<std::string>(doc, "lm.provider");

  stego::CodecSpec base;
  base.b = get<unsigned>(doc, "codec.b");
  base.k = get<unsigned>(doc, "codec.k");
  base.delta = get<double>(doc, "codec.delta");
  base.h = get<std::size_t>(doc, "codec.h");
  base.precision = get<unsigned>(doc, "codec.precision");
  try {
    c.codec = stego::parse_codec_spec(get<std::string>(doc, "codec.method"), base);
  } catch (const PreconditionError& e) {
    throw ConfigError("codec.method", e.what());
  }
  if (c.codec.delta < 0.0) throw ConfigError("codec.delta", "must be nonnegative");
  if (c.codec.h == 0) throw ConfigError("codec.h", "must be positive");
  if (c.codec.precision < 33 || c.codec.precision > 62) throw ConfigError("codec.precision", "must lie in [33, 62]");
  if (c.codec.b < 1 || c.codec.b > 20) throw ConfigError("codec.b", "must lie in [1, 20]");
  if (c.codec.k < 1 || c.codec.k > 20) throw ConfigError("codec.k", "must lie in [1, 20]");

  c.limits.min_length = get<std::size_t>(doc, "limits.min_length");
  c.limits.max_length = require_positive(get<std::size_t>(doc, "limits.max_length"), "limits.max_length");
  if (c.limits.min_length > c.limits.max_length) throw ConfigError("limits.min_length", "exceeds limits.max_length");
  c.limits.max_tokens = require_positive(get<std::size_t>(doc, "limits.max_tokens"), "limits.max_tokens");
  c.limits.max_sentences = require_positive(get<std::size_t>(doc, "limits.max_sentences"), "limits.max_sentences");

  c.seeds.split = get<std::uint64_t>(doc, "seeds.split");
  c.seeds.sample = get<std::uint64_t>(doc, "seeds.sample");
  c.seeds.pad = get<std::uint64_t>(doc, "seeds.pad");
  c.seeds.partition = get<std::uint64_t>(doc, "seeds.partition");
  c.seeds.payload = get<std::uint64_t>(doc, "seeds.payload");
  c.seeds.cover = get<std::uint64_t>(doc, "seeds.cover");
  c.seeds.vector = get<std::uint64_t>(doc, "seeds.vector");

  c.bench.stegotexts = require_positive(get<std::size_t>(doc, "bench.stegotexts"), "bench.stegotexts");
  c.bench.payload_bits = get<std::size_t>(doc, "bench.payload_bits");
  c.bench.threads = get<std::size_t>(doc, "bench.threads");
  c.bench.corpus_name = get<std::string>(doc, "bench.corpus_name");
  c.bench.methods = get<std::vector<std::string>>(doc, "bench.methods");
  for (std::size_t i = 0; i < c.bench.methods.size(); ++i) {
    try {
      (void)stego::parse_codec_spec(c.bench.methods[i]);
    } catch (const PreconditionError& e) {
      throw ConfigError("bench.methods[" + std::to_string(i) + "]", e.what());
    }
  }
  c.out_dir = get<std::string>(doc, "output.dir");
  return c;
}

/// Loads `path` (if non-empty) over the defaults and applies overrides.
/// Returns the merged document; pass it to from_json for the typed view.
inline json load_document(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = defaults();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file " + path);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("<file>", "invalid JSON in " + path + ": " + e.what());
    }
    detail::merge(doc, file, "");
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return doc;
}

inline json seeds_json(const SeedConfig& s) {
  return json{{"split", s.split},     {"sample", s.sample}, {"pad", s.pad},      {"partition", s.partition},
              {"payload", s.payload}, {"cover", s.cover},   {"vector", s.vector}};
}

}  // namespace adgstego::config

#endif  // ADGSTEGO_CONFIG_HPP
