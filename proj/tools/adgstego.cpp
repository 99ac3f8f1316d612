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

// adgstego command-line tool. Data goes to files (or stdout where noted),
// progress and errors go to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adgstego/adgstego.hpp"

namespace fs = std::filesystem;
using namespace adgstego;
using nlohmann::json;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON run configuration");
  cmd->add_option("--set", c.overrides, "override a configuration key, e.g. --set codec.method=bins:b=2")
      ->allow_extra_args(false);
}

std::string pick(const std::string& flag, const std::string& configured, const char* key) {
  const std::string& v = flag.empty() ? configured : flag;
  if (v.empty()) throw ConfigError(key, "no path given (use the flag or set the key)");
  return v;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(std::string("cannot open ") + what + " " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  return out;
}

std::vector<std::string> read_lines_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(std::string("cannot open ") + what + " " + path);
  return corpus::read_lines(in);
}

// Sentences of a stegotext file, one per line; blank lines are empty
// sentences.
std::vector<std::string> read_stegotext(const std::string& path) {
  std::istringstream in(read_file(path, "stegotext"));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

// Model used for generation: either the built-in n-gram model or an
// external provider (with its vocabulary loaded separately).
struct ModelHandle {
  std::unique_ptr<lm::NGramLM> ngram;
  std::unique_ptr<lm::LanguageModel> source;
  corpus::Vocabulary vocab;
  std::string id;  // recorded in trace headers
};

ModelHandle open_model(const config::RunConfig& cfg, const std::string& model_flag) {
  ModelHandle h;
  if (!cfg.provider.empty()) {
    h.vocab = corpus::Vocabulary::load(pick("", cfg.vocab, "corpus.vocab"));
    std::unique_ptr<lm::Transport> transport;
    if (cfg.provider.starts_with("tcp:")) {
      const std::string rest = cfg.provider.substr(4);
      const auto colon = rest.rfind(':');
      if (colon == std::string::npos) throw ConfigError("lm.provider", "expected tcp:host:port");
      transport = lm::connect_provider(rest.substr(0, colon), std::stoi(rest.substr(colon + 1)));
    } else {
      const std::string cmd = cfg.provider.starts_with("cmd:") ? cfg.provider.substr(4) : cfg.provider;
      transport = lm::spawn_provider(cmd);
    }
    h.source = std::make_unique<lm::ProviderModel>(std::move(transport));
    h.id = "provider:" + cfg.provider;
    return h;
  }
  const std::string path = pick(model_flag, cfg.model, "lm.model");
  if (!fs::exists(path)) throw FormatError("model file not found: " + path);
  h.ngram = std::make_unique<lm::NGramLM>(lm::NGramLM::load(path));
  h.vocab = h.ngram->vocabulary();
  h.source = std::make_unique<lm::NGramSource>(*h.ngram);
  std::ostringstream id;
  id << "ngram:" << std::hex << h.vocab.hash();
  h.id = id.str();
  return h;
}

json trace_header(const config::RunConfig& cfg, const stego::Codec& codec, const ModelHandle& model,
                  std::uint64_t payload_bits) {
  return json{{"method", codec.method()},
              {"params", codec.params()},
              {"model", model.id},
              {"payload_bits", payload_bits},
              {"seeds", config::seeds_json(cfg.seeds)},
              {"limits",
               {{"min_length", cfg.limits.min_length},
                {"max_length", cfg.limits.max_length},
                {"max_tokens", cfg.limits.max_tokens},
                {"max_sentences", cfg.limits.max_sentences}}}};
}

int cmd_preprocess(const Common& common, const std::string& in_flag, const std::string& out_flag) {
  const auto cfg = config::from_json(config::load_document(common.config_path, common.overrides));
  const std::string in = pick(in_flag, cfg.raw, "corpus.raw");
  const std::string out_dir = out_flag.empty() ? cfg.out_dir : out_flag;
  corpus::PreprocessConfig pc;
  pc.min_tokens = cfg.min_tokens;
  pc.max_tokens = cfg.max_tokens;
  pc.line_mode = cfg.line_mode;
  const auto sentences = corpus::preprocess(read_file(in, "corpus"), pc);
  auto [train, test] = corpus::split(sentences, {cfg.split_train, cfg.split_test}, cfg.seeds.split);
  const auto vocab = corpus::build_vocab(train, cfg.min_count);
  {
    auto f = open_out((fs::path(out_dir) / "train.txt").string());
    corpus::write_lines(f, train);
  }
  {
    auto f = open_out((fs::path(out_dir) / "test.txt").string());
    corpus::write_lines(f, test);
  }
  {
    auto f = open_out((fs::path(out_dir) / "vocab.tsv").string());
    vocab.write(f);
  }
  std::cerr << "preprocess: " << sentences.size() << " sentences -> " << train.size() << " train / " << test.size()
            << " test (split seed " << cfg.seeds.split << "), vocabulary " << vocab.size() << " (min_count "
            << cfg.min_count << ")\n";
  return 0;
}

int cmd_train(const Common& common, const std::string& train_flag, const std::string& out_flag) {
  const auto cfg = config::from_json(config::load_document(common.config_path, common.overrides));
  const auto train = read_lines_file(pick(train_flag, cfg.train, "corpus.train"), "training corpus");
  const auto vocab =
      cfg.vocab.empty() ? corpus::build_vocab(train, cfg.min_count) : corpus::Vocabulary::load(cfg.vocab);
  std::vector<corpus::Sentence> encoded;
  encoded.reserve(train.size());
  for (const auto& s : train) encoded.push_back(vocab.encode(s));
  const auto model = lm::train_ngram(encoded, vocab, cfg.order, cfg.smoothing);
  const std::string out = pick(out_flag, cfg.model, "lm.model");
  auto f = open_out(out);
  model.save(f);
  if (!f) throw FormatError("failed writing model file " + out);
  std::cerr << "train: order " << cfg.order << ", smoothing " << cfg.smoothing << ", " << encoded.size()
            << " sentences, vocabulary " << vocab.size() << " -> " << out << '\n';
  return 0;
}

int cmd_embed(const Common& common, const std::string& model_flag, const std::string& in_file, const std::string& hex,
              const std::string& out, const std::string& trace_path) {
  const auto cfg = config::from_json(config::load_document(common.config_path, common.overrides));
  if (in_file.empty() == hex.empty()) throw ConfigError("payload", "give exactly one of --in or --hex");
  std::vector<std::uint8_t> bytes;
  if (!hex.empty()) {
    bytes = bitio::parse_hex(hex);
  } else {
    const auto raw = read_file(in_file, "payload");
    bytes.assign(raw.begin(), raw.end());
  }
  auto model = open_model(cfg, model_flag);
  const auto codec = stego::make_codec(cfg.codec, model.vocab.size(), cfg.seeds.partition);
  const auto payload = bitio::bytes_to_bits(bytes);
  const stego::Seeds seeds{cfg.seeds.sample, cfg.seeds.pad};
  const auto text = stego::embed(*codec, payload, *model.source, seeds, cfg.limits, !trace_path.empty());
  {
    auto f = open_out(out);
    for (const auto& s : text.sentences) f << model.vocab.decode(s) << '\n';
    if (!f) throw FormatError("failed writing " + out);
  }
  if (!trace_path.empty()) {
    auto f = open_out(trace_path);
    stego::write_trace(f, trace_header(cfg, *codec, model, payload.size()), text.trace);
  }
  std::cerr << "embed: " << codec->method() << " " << codec->params() << ", " << payload.size() << " payload bits in "
            << text.trace.size() << " tokens over " << text.sentences.size() << " sentences -> " << out << '\n';
  return 0;
}

int cmd_extract(const Common& common, const std::string& model_flag, const std::string& stego_path,
                const std::string& out, bool print_hex) {
  const auto cfg = config::from_json(config::load_document(common.config_path, common.overrides));
  if (out.empty() && !print_hex) throw ConfigError("output", "give --out and/or --hex");
  auto model = open_model(cfg, model_flag);
  const auto codec = stego::make_codec(cfg.codec, model.vocab.size(), cfg.seeds.partition);
  std::vector<std::vector<TokenId>> sentences;
  const auto lines = read_stegotext(stego_path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<TokenId> ids;
    for (const auto& w : corpus::tokens_of(lines[i])) {
      const auto id = model.vocab.find(w);
      if (!id) throw DesyncError("extract: line " + std::to_string(i + 1) + ": '" + w + "' is not in the vocabulary");
      ids.push_back(*id);
    }
    sentences.push_back(std::move(ids));
  }
  const auto bits = stego::extract(*codec, sentences, *model.source, cfg.limits);
  if (bits.size() % 8 != 0) throw FormatError("extract: payload is not a whole number of bytes");
  const auto bytes = bitio::bits_to_bytes(bits);
  if (!out.empty()) {
    auto f = open_out(out);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw FormatError("failed writing " + out);
  }
  if (print_hex) std::cout << bitio::to_hex(bytes) << '\n';
  std::cerr << "extract: " << bits.size() << " payload bits from " << sentences.size() << " sentences\n";
  return 0;
}

int cmd_bench(const Common& common, const std::string& model_flag, const std::string& test_flag,
              const std::string& out_flag) {
  const auto doc = config::load_document(common.config_path, common.overrides);
  const auto cfg = config::from_json(doc);
  const std::string path = pick(model_flag, cfg.model, "lm.model");
  if (!fs::exists(path)) throw FormatError("model file not found: " + path);
  const auto model = lm::NGramLM::load(path);
  const auto test = read_lines_file(pick(test_flag, cfg.test, "corpus.test"), "test corpus");
  const std::string out_dir = out_flag.empty() ? cfg.out_dir : out_flag;
  const auto result = bench::run(model, test, cfg, &std::cerr);
  {
    auto f = open_out((fs::path(out_dir) / "results.csv").string());
    bench::write_csv(f, result);
  }
  {
    auto f = open_out((fs::path(out_dir) / "report.txt").string());
    bench::write_report(f, result, cfg, model);
  }
  {
    auto f = open_out((fs::path(out_dir) / "config.json").string());
    f << doc.dump(2) << '\n';
  }
  std::cerr << "bench: " << result.cells.size() << " cells -> " << out_dir << '\n';
  return 0;
}

int cmd_metrics(const Common& common, const std::vector<std::string>& traces, const std::string& cover_path,
                const std::string& stego_path, double acc, const std::string& out) {
  const auto cfg = config::from_json(config::load_document(common.config_path, common.overrides));
  std::ostringstream csv;
  csv << metrics::csv_header() << '\n';
  std::optional<double> kld2;
  if (!cover_path.empty() || !stego_path.empty()) {
    if (cover_path.empty() || stego_path.empty()) throw ConfigError("kld2", "give both --cover and --stego");
    std::vector<std::vector<double>> cv, sv;
    for (const auto& s : read_lines_file(cover_path, "covertext")) cv.push_back(metrics::sentence_vector(s, cfg.seeds.vector));
    for (const auto& s : read_lines_file(stego_path, "stegotext")) sv.push_back(metrics::sentence_vector(s, cfg.seeds.vector));
    kld2 = metrics::kld2(cv, sv);
  }
  for (const auto& path : traces) {
    std::istringstream in(read_file(path, "trace"));
    const auto trace = stego::read_trace(in);
    metrics::MetricReport r;
    r.method = trace.header.value("method", "?");
    r.params = trace.header.value("params", "?");
    r.corpus = cfg.bench.corpus_name;
    r.er = metrics::embedding_rate(trace.records);
    const bool has_metrics =
        std::any_of(trace.records.begin(), trace.records.end(), [](const auto& x) { return x.metrics.has_value(); });
    if (has_metrics) {
      const auto k = metrics::kld1(trace.records);
      r.kld1_qp = k.qp;
      r.kld1_pq = k.pq;
    } else {
      r.kld1_qp = r.kld1_pq = std::numeric_limits<double>::quiet_NaN();
    }
    r.kld2 = kld2.value_or(std::numeric_limits<double>::quiet_NaN());
    if (acc >= 0.0) r.eer = metrics::eer(acc, r.er);
    csv << metrics::csv_row(r) << '\n';
    const auto payload_bits = trace.header.value("payload_bits", std::uint64_t{0});
    std::cerr << "metrics: " << path << ": er " << metrics::format_fixed(r.er, 4) << " (payload only "
              << metrics::format_fixed(metrics::payload_embedding_rate(trace.records, payload_bits), 4) << ")\n";
  }
  if (traces.empty() && kld2) csv << ",,," << ",,," << metrics::format_fixed(*kld2) << ",\n";
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    auto f = open_out(out);
    f << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adgstego: linguistic steganography by adaptive dynamic grouping"};
  app.require_subcommand(1);

  Common common;
  std::string in, out, hex, model, trace, test, train, stego, cover;
  std::vector<std::string> traces;
  bool print_hex = false;
  double acc = -1.0;

  auto* pre = app.add_subcommand("preprocess", "raw text -> train/test sentence files and vocabulary");
  add_common(pre, common);
  pre->add_option("--in", in, "raw corpus (default corpus.raw)");
  pre->add_option("--out", out, "output directory (default output.dir)");

  auto* tr = app.add_subcommand("train", "train the n-gram model");
  add_common(tr, common);
  tr->add_option("--train", train, "training sentences (default corpus.train)");
  tr->add_option("--out", out, "model file (default lm.model)");

  auto* emb = app.add_subcommand("embed", "hide a payload in generated text");
  add_common(emb, common);
  emb->add_option("--model", model, "model file (default lm.model)");
  emb->add_option("--in", in, "payload file");
  emb->add_option("--hex", hex, "payload as hex digits");
  emb->add_option("--out", out, "stegotext file")->required();
  emb->add_option("--trace", trace, "write a per-token trace (NDJSON)");

  auto* ext = app.add_subcommand("extract", "recover a payload from stegotext");
  add_common(ext, common);
  ext->add_option("--model", model, "model file (default lm.model)");
  ext->add_option("--stego", stego, "stegotext file")->required();
  ext->add_option("--out", out, "payload file");
  ext->add_flag("--hex", print_hex, "print the payload as hex on stdout");

  auto* ben = app.add_subcommand("bench", "evaluate the method grid");
  add_common(ben, common);
  ben->add_option("--model", model, "model file (default lm.model)");
  ben->add_option("--test", test, "test sentences (default corpus.test)");
  ben->add_option("--out", out, "output directory (default output.dir)");

  auto* met = app.add_subcommand("metrics", "metrics from traces and text files");
  add_common(met, common);
  met->add_option("--trace", traces, "trace file (repeatable)");
  met->add_option("--cover", cover, "covertext file for KLD2");
  met->add_option("--stego", stego, "stegotext file for KLD2");
  met->add_option("--acc", acc, "steganalysis accuracy for EER")->check(CLI::Range(0.0, 1.0));
  met->add_option("--out", out, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pre) return cmd_preprocess(common, in, out);
    if (*tr) return cmd_train(common, train, out);
    if (*emb) return cmd_embed(common, model, in, hex, out, trace);
    if (*ext) return cmd_extract(common, model, stego, out, print_hex);
    if (*ben) return cmd_bench(common, model, test, out);
    if (*met) return cmd_metrics(common, traces, cover, stego, acc, out);
  } catch (const ConfigError& e) {
    std::cerr << "adgstego: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "adgstego: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
