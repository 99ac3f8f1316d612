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

// Corpus preprocessing, vocabularies and train/test splits.
//
// Preprocessing lowercases ASCII letters, removes HTML tags, drops all
// ASCII punctuation except apostrophes inside words, and splits sentences
// at runs of `.`, `!` or `?` that are followed by whitespace (or the end of
// a document). Tokens are the whitespace-separated units that remain.

#ifndef ADGSTEGO_CORPUS_HPP
#define ADGSTEGO_CORPUS_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adgstego/common.hpp"
#include "adgstego/random.hpp"

namespace adgstego::corpus {

struct PreprocessConfig {
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 200;
  /// Treat every line as its own document; a line break always ends a
  /// sentence. Otherwise the input is free-running text.
  bool line_mode = false;
};

/// Throws DecodeError with the byte offset of the first invalid sequence.
inline void validate_utf8(std::string_view text) {
  std::size_t i = 0;
  const auto fail = [&] { throw DecodeError("input is not valid UTF-8 at byte " + std::to_string(i)); };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      fail();
    }
    if (i + len > text.size()) fail();
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    i += len;
  }
}

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
inline bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
inline bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && ((u >= 0x21 && u <= 0x2F) || (u >= 0x3A && u <= 0x40) || (u >= 0x5B && u <= 0x60) ||
                      (u >= 0x7B && u <= 0x7E));
}
inline bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

// Replaces every `<...>` region with a single space.
inline std::string strip_tags(std::string_view doc) {
  std::string out;
  out.reserve(doc.size());
  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] == '<') {
      const auto close = doc.find('>', i + 1);
      if (close != std::string_view::npos) {
        out.push_back(' ');
        i = close + 1;
        continue;
      }
    }
    out.push_back(doc[i++]);
  }
  return out;
}

inline void split_document(std::string_view raw_doc, std::vector<std::vector<std::string>>& sentences) {
  std::string doc = strip_tags(raw_doc);
  for (auto& c : doc) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  std::vector<std::string> sentence;
  std::string token;
  const auto end_token = [&] {
    if (!token.empty()) sentence.push_back(std::move(token));
    token.clear();
  };
  const auto end_sentence = [&] {
    end_token();
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    sentence.clear();
  };
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const char c = doc[i];
    if (is_space(c)) {
      end_token();
    } else if (is_terminal(c)) {
      std::size_t j = i;
      while (j < doc.size() && is_terminal(doc[j])) ++j;
      if (j == doc.size() || is_space(doc[j])) end_sentence();
      i = j - 1;
    } else if (c == '\'') {
      if (!token.empty() && i + 1 < doc.size() && is_word_char(doc[i + 1])) token.push_back(c);
    } else if (is_ascii_punct(c) || static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
      // dropped
    } else {
      token.push_back(c);
    }
  }
  end_sentence();
}

}  // namespace detail

/// Cleans and splits raw text into sentences of space-joined tokens,
/// keeping those whose token count lies in [min_tokens, max_tokens]. Text
/// with no sentence at all is an EmptyCorpusError; sentences that exist but
/// are all filtered by length give an empty result.
inline std::vector<std::string> preprocess(std::string_view raw, const PreprocessConfig& config = {}) {
  validate_utf8(raw);
  std::vector<std::vector<std::string>> sentences;
  if (config.line_mode) {
    std::size_t start = 0;
    while (start <= raw.size()) {
      auto nl = raw.find('\n', start);
      if (nl == std::string_view::npos) nl = raw.size();
      detail::split_document(raw.substr(start, nl - start), sentences);
      start = nl + 1;
    }
  } else {
    detail::split_document(raw, sentences);
  }
  std::vector<std::string> out;
  for (const auto& s : sentences) {
    if (s.size() < config.min_tokens || s.size() > config.max_tokens) continue;
    std::string joined;
    for (const auto& t : s) {
      if (!joined.empty()) joined.push_back(' ');
      joined += t;
    }
    out.push_back(std::move(joined));
  }
  if (sentences.empty()) throw EmptyCorpusError("preprocess: input contains no sentences");
  return out;
}

/// Splits a preprocessed sentence on single spaces.
inline std::vector<std::string> tokens_of(std::string_view sentence) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < sentence.size()) {
    auto sp = sentence.find(' ', start);
    if (sp == std::string_view::npos) sp = sentence.size();
    if (sp > start) out.emplace_back(sentence.substr(start, sp - start));
    start = sp + 1;
  }
  return out;
}

/// Token ids of one sentence, bracketed by BOS and EOS.
struct Sentence {
  std::vector<TokenId> tokens;

  std::size_t content_length() const { return tokens.size() < 2 ? 0 : tokens.size() - 2; }
};

class Vocabulary {
 public:
  static constexpr std::string_view kReserved[] = {"_PAD", "_UNK", "_BOS", "_EOS"};

  /// Words seen at least `min_count` times get their own id, most frequent
  /// first (ties alphabetical); everything else maps to _UNK.
  static Vocabulary build(const std::vector<std::string>& sentences, std::uint64_t min_count = 10) {
    if (sentences.empty()) throw EmptyCorpusError("build_vocab: no sentences");
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& s : sentences) {
      for (auto& t : tokens_of(s)) ++counts[std::move(t)];
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    std::uint64_t unk = 0;
    for (auto& [word, n] : counts) {
      if (n >= min_count) {
        kept.emplace_back(word, n);
      } else {
        unk += n;
      }
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    Vocabulary v;
    v.min_count_ = min_count;
    v.add(std::string(kReserved[0]), 0);
    v.add(std::string(kReserved[1]), unk);
    v.add(std::string(kReserved[2]), sentences.size());
    v.add(std::string(kReserved[3]), sentences.size());
    for (auto& [word, n] : kept) v.add(std::move(word), n);
    return v;
  }

  /// Parses `id<TAB>surface<TAB>count` lines sorted by id.
  static Vocabulary read(std::istream& in) {
    Vocabulary v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
      if (t2 == std::string::npos) throw FormatError("vocabulary: malformed line '" + line + "'");
      std::uint64_t id = 0;
      std::uint64_t count = 0;
      try {
        id = std::stoull(line.substr(0, t1));
        count = std::stoull(line.substr(t2 + 1));
      } catch (const std::exception&) {
        throw FormatError("vocabulary: malformed line '" + line + "'");
      }
      if (id != v.surfaces_.size()) throw FormatError("vocabulary: ids must be dense and sorted");
      std::string surface = line.substr(t1 + 1, t2 - t1 - 1);
      if (id < kFirstWordId && surface != kReserved[id]) {
        throw FormatError("vocabulary: reserved id " + std::to_string(id) + " must be " + std::string(kReserved[id]));
      }
      if (v.ids_.count(surface)) throw FormatError("vocabulary: duplicate surface '" + surface + "'");
      v.add(std::move(surface), count);
    }
    if (v.size() < kFirstWordId) throw FormatError("vocabulary: missing reserved tokens");
    return v;
  }

  static Vocabulary load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open vocabulary file " + path);
    return read(in);
  }

  void write(std::ostream& out) const {
    for (std::size_t i = 0; i < surfaces_.size(); ++i) out << i << '\t' << surfaces_[i] << '\t' << counts_[i] << '\n';
  }

  std::size_t size() const noexcept { return surfaces_.size(); }
  const std::string& surface(TokenId id) const { return surfaces_.at(id); }
  std::uint64_t count(TokenId id) const { return counts_.at(id); }
  std::uint64_t min_count() const noexcept { return min_count_; }

  /// Id of `word`, or _UNK.
  TokenId id(std::string_view word) const {
    const auto it = ids_.find(std::string(word));
    return it == ids_.end() ? kUnkId : it->second;
  }

  /// Id of `word` only if it is in the vocabulary.
  std::optional<TokenId> find(std::string_view word) const {
    const auto it = ids_.find(std::string(word));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  Sentence encode(std::string_view sentence) const {
    Sentence s;
    s.tokens.push_back(kBosId);
    for (const auto& t : tokens_of(sentence)) s.tokens.push_back(id(t));
    s.tokens.push_back(kEosId);
    return s;
  }

  std::string decode(std::span<const TokenId> ids) const {
    std::string out;
    for (TokenId id : ids) {
      if (!out.empty()) out.push_back(' ');
      out += surface(id);
    }
    return out;
  }

  /// FNV-1a over the id/surface mapping. Counts do not participate.
  std::uint64_t hash() const {
    std::uint64_t h = kFnvOffset;
    for (std::size_t i = 0; i < surfaces_.size(); ++i) {
      h = fnv1a64(std::to_string(i), h);
      h = fnv1a64("\t", h);
      h = fnv1a64(surfaces_[i], h);
      h = fnv1a64("\n", h);
    }
    return h;
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.surfaces_ == b.surfaces_; }

 private:
  void add(std::string surface, std::uint64_t count) {
    ids_.emplace(surface, static_cast<TokenId>(surfaces_.size()));
    surfaces_.push_back(std::move(surface));
    counts_.push_back(count);
  }

  std::vector<std::string> surfaces_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, TokenId> ids_;
  std::uint64_t min_count_ = 0;
};

inline Vocabulary build_vocab(const std::vector<std::string>& sentences, std::uint64_t min_count = 10) {
  return Vocabulary::build(sentences, min_count);
}

/// Train share as train:test, e.g. 9:1.
struct Ratio {
  std::uint64_t train = 9;
  std::uint64_t test = 1;
};

/// Seeded portable shuffle, then the first round(n * train/(train+test))
/// sentences (clamped so both sides are non-empty) go to training.
inline std::pair<std::vector<std::string>, std::vector<std::string>> split(std::vector<std::string> sentences,
                                                                           Ratio ratio, std::uint64_t seed) {
  if (ratio.train == 0 || ratio.test == 0) throw PreconditionError("split: train fraction must lie strictly between 0 and 1");
  if (sentences.size() < 2) throw PreconditionError("split: need at least two sentences");
  Rng rng(seed);
  portable_shuffle(std::span<std::string>(sentences), rng);
  const std::uint64_t n = sentences.size();
  const std::uint64_t whole = ratio.train + ratio.test;
  std::uint64_t n_train = (2 * n * ratio.train + whole) / (2 * whole);
  n_train = std::clamp<std::uint64_t>(n_train, 1, n - 1);
  std::vector<std::string> test(std::make_move_iterator(sentences.begin() + static_cast<std::ptrdiff_t>(n_train)),
                                std::make_move_iterator(sentences.end()));
  sentences.resize(n_train);
  return {std::move(sentences), std::move(test)};
}

inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline void write_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace adgstego::corpus

#endif  // ADGSTEGO_CORPUS_HPP
