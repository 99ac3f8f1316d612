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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support.hpp"

namespace {

using namespace adgstego;
using lm::kMassDenominator;
using lm::TokenMass;

constexpr std::uint64_t D = kMassDenominator;

// Straightforward quadratic rendering of the grouping procedure, used as an
// oracle for the indexed implementation.
std::vector<std::vector<TokenMass>> naive_groups(std::vector<TokenMass> pool, std::uint64_t u) {
  std::uint64_t remaining = 0;
  for (const auto& e : pool) remaining += e.mass;
  std::uint64_t num = remaining;
  std::uint64_t den = u;
  std::vector<std::vector<TokenMass>> out;
  for (std::uint64_t i = 1; i < u; ++i) {
    std::vector<TokenMass> g{pool.front()};
    std::uint64_t mass = pool.front().mass;
    pool.erase(pool.begin());
    while (mass * den < num && !pool.empty()) {
      const std::uint64_t eps = num - mass * den;
      std::size_t best = 0;
      for (std::size_t j = 1; j < pool.size(); ++j) {
        const auto dist = [&](std::size_t k) {
          const std::uint64_t m = pool[k].mass * den;
          return m > eps ? m - eps : eps - m;
        };
        const bool closer = dist(j) < dist(best);
        const bool tie = dist(j) == dist(best) &&
                         (pool[j].mass < pool[best].mass || (pool[j].mass == pool[best].mass && pool[j].id < pool[best].id));
        if (closer || tie) best = j;
      }
      if (!(pool[best].mass * den < 2 * eps)) break;
      mass += pool[best].mass;
      g.push_back(pool[best]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    std::sort(g.begin(), g.end(), lm::heavier);
    remaining -= mass;
    num = remaining;
    den = u - i;
    out.push_back(std::move(g));
  }
  out.push_back(pool);
  return out;
}

lm::ConditionalDistribution from(std::vector<std::uint64_t> masses, TokenId first = kFirstWordId) {
  std::vector<TokenMass> e;
  for (std::size_t i = 0; i < masses.size(); ++i) e.push_back({static_cast<TokenId>(first + i), masses[i]});
  return lm::ConditionalDistribution::from_masses(std::move(e));
}

lm::ConditionalDistribution from_probs(const std::vector<double>& p) {
  std::vector<TokenId> ids(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) ids[i] = static_cast<TokenId>(kFirstWordId + i);
  return lm::ConditionalDistribution::from_probabilities(ids, p);
}

// Distributions that stress the grouping: many ties, geometric tails, a
// dominant head, few entries.
lm::ConditionalDistribution awkward_distribution(Rng& rng) {
  const std::size_t n = 2 + uniform_below(rng, 200);
  std::vector<double> p(n);
  switch (uniform_below(rng, 5)) {
    case 0:
      for (auto& x : p) x = 1.0 + static_cast<double>(uniform_below(rng, 3));
      break;
    case 1:
      for (std::size_t i = 0; i < n; ++i) p[i] = std::pow(0.5, static_cast<double>(i % 40));
      break;
    case 2:
      for (std::size_t i = 0; i < n; ++i) p[i] = i == 0 ? static_cast<double>(n) * 0.9 : 1.0;
      break;
    case 3:
      for (std::size_t i = 0; i < n; ++i) p[i] = 1.0 / static_cast<double>((i + 1) * (i + 1));
      break;
    default:
      for (auto& x : p) x = static_cast<double>(1 + uniform_below(rng, 1000));
  }
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return from_probs(p);
}

TEST(GroupCount, Examples) {
  EXPECT_EQ(adg::group_count(D / 4, D), 4u);
  // 0.3 of D: floor(-log2 0.3) = 1.
  const auto m30 = static_cast<std::uint64_t>(0.3 * static_cast<double>(D));
  EXPECT_EQ(adg::group_count(m30, D), 2u);
  EXPECT_EQ(std::floor(-std::log2(0.3)), 1.0);
  EXPECT_EQ(adg::group_count(static_cast<std::uint64_t>(0.51 * static_cast<double>(D)), D), 1u);
  EXPECT_EQ(adg::group_count(D / 2, D), 2u);
  EXPECT_EQ(adg::group_count(D / 2 + 1, D), 1u);
  EXPECT_EQ(adg::group_count(1, D), D);
  EXPECT_THROW(adg::group_count(1, 0), PreconditionError);
}

TEST(GroupCount, MatchesFloatFormulaAwayFromPowers) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t m = 1 + uniform_below(rng, D);
    const double x = static_cast<double>(D) / static_cast<double>(m);
    if (std::fabs(std::log2(x) - std::round(std::log2(x))) < 1e-9) continue;
    ASSERT_EQ(adg::group_count(m, D), std::uint64_t{1} << static_cast<int>(std::floor(std::log2(x))));
  }
}

TEST(EqualGroup, FourTokenExample) {
  const auto d = from_probs({0.4, 0.3, 0.2, 0.1});
  const auto g = adg::equal_group(d);
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_EQ(g.groups[0].members, (std::vector<TokenMass>{d[0], d[3]}));
  EXPECT_EQ(g.groups[1].members, (std::vector<TokenMass>{d[1], d[2]}));
  EXPECT_EQ(g.groups[0].total_mass, D / 2);
  EXPECT_EQ(g.groups[1].total_mass, D / 2);
}

TEST(EqualGroup, UniformEight) {
  const auto d = from(std::vector<std::uint64_t>(8, D / 8));
  const auto g = adg::equal_group(d);
  ASSERT_EQ(g.groups.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    ASSERT_EQ(g.groups[i].members.size(), 1u);
    EXPECT_EQ(g.groups[i].members[0].id, kFirstWordId + i);
    EXPECT_EQ(g.groups[i].total_mass, D / 8);
  }
}

TEST(EqualGroup, DominantTokenIsNotDivisible) {
  const auto d = from_probs({0.6, 0.4});
  EXPECT_EQ(adg::group_count(d[0].mass, D), 1u);
  EXPECT_FALSE(adg::divisible(d.entries()));
}

TEST(EqualGroup, NearestTieTakesLighterCandidate) {
  // Mean 8, seed 6: shortfall 2. Candidates 3 and 1 are equally near; the
  // lighter one wins. The running mean never changes membership through
  // rounding because it stays a fraction.
  const std::vector<TokenMass> level{{4, 6}, {5, 3}, {6, 3}, {7, 3}, {8, 1}};
  const auto g = adg::equal_group(level);
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_EQ(g.groups[0].members, (std::vector<TokenMass>{{4, 6}, {8, 1}}));
  EXPECT_EQ(g.groups[1].members, (std::vector<TokenMass>{{5, 3}, {6, 3}, {7, 3}}));
}

TEST(EqualGroup, StrictAppendBoundary) {
  // Mean 6, seed 4: shortfall 2 and the nearest candidate has mass exactly
  // 4 = 2ε, so it is not appended.
  const std::vector<TokenMass> level{{4, 4}, {5, 4}, {6, 4}};
  const auto g = adg::equal_group(level);
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_EQ(g.groups[0].members, (std::vector<TokenMass>{{4, 4}}));
  EXPECT_EQ(g.groups[1].members, (std::vector<TokenMass>{{5, 4}, {6, 4}}));
}

TEST(EqualGroup, MatchesNaiveOracle) {
  Rng rng(17);
  for (int i = 0; i < 3000; ++i) {
    const auto d = i % 2 ? testing_support::random_distribution(rng, 2 + uniform_below(rng, 300)) : awkward_distribution(rng);
    if (!adg::divisible(d.entries())) continue;
    const auto g = adg::equal_group(d);
    const auto want = naive_groups({d.entries().begin(), d.entries().end()}, adg::group_count(d[0].mass, D));
    ASSERT_EQ(g.groups.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) ASSERT_EQ(g.groups[k].members, want[k]) << "case " << i << " group " << k;
  }
}

TEST(EqualGroup, PartitionInvariant) {
  Rng rng(23);
  for (int i = 0; i < 5000; ++i) {
    const auto d = i % 3 ? testing_support::random_distribution(rng, 2 + uniform_below(rng, 512)) : awkward_distribution(rng);
    if (!adg::divisible(d.entries())) continue;
    const auto g = adg::equal_group(d);
    ASSERT_TRUE(std::has_single_bit(g.groups.size()));
    ASSERT_GE(g.groups.size(), 2u);
    std::set<TokenId> seen;
    std::uint64_t total = 0;
    for (const auto& grp : g.groups) {
      ASSERT_FALSE(grp.members.empty());
      std::uint64_t m = 0;
      for (const auto& e : grp.members) {
        ASSERT_TRUE(seen.insert(e.id).second);
        m += e.mass;
      }
      ASSERT_EQ(m, grp.total_mass);
      ASSERT_TRUE(std::is_sorted(grp.members.begin(), grp.members.end(), lm::heavier));
      total += m;
    }
    ASSERT_EQ(seen.size(), d.size());
    ASSERT_EQ(total, D);
    ASSERT_EQ(g.level_mass, D);
  }
}

TEST(EqualGroup, RejectsUnsortedInput) {
  const std::vector<TokenMass> level{{4, 1}, {5, 3}};
  EXPECT_THROW(adg::equal_group(level), PreconditionError);
}

TEST(EmbedStep, FourTokenBitOne) {
  const auto d = from_probs({0.4, 0.3, 0.2, 0.1});
  for (std::uint64_t s = 0; s < 20; ++s) {
    bitio::BitMessage m(bitio::parse_bits("1"));
    Rng sample(s);
    Rng pad(99);
    const auto step = adg::embed_step(d, m, sample, pad);
    EXPECT_EQ(step.bits, 1u);
    EXPECT_TRUE(step.token == d[1].id || step.token == d[2].id);
    ASSERT_EQ(step.levels.size(), 1u);
    EXPECT_EQ(step.levels[0].index, 1u);
  }
}

TEST(EmbedStep, UniformEightSelectsSingleton) {
  const auto d = from(std::vector<std::uint64_t>(8, D / 8));
  bitio::BitMessage m(bitio::parse_bits("101"));
  Rng sample(1);
  Rng pad(2);
  const auto step = adg::embed_step(d, m, sample, pad);
  EXPECT_EQ(step.bits, 3u);
  EXPECT_EQ(step.token, kFirstWordId + 5);
}

TEST(EmbedStep, DominantTokenCarriesNothing) {
  const auto d = from_probs({0.9, 0.1});
  bitio::BitMessage m(bitio::parse_bits("1111"));
  Rng sample(1);
  Rng pad(2);
  const auto step = adg::embed_step(d, m, sample, pad);
  EXPECT_EQ(step.bits, 0u);
  EXPECT_EQ(m.cursor(), 0u);
  EXPECT_TRUE(adg::extract_step(d, step.token).empty());
}

TEST(ExtractStep, Examples) {
  const auto d = from_probs({0.4, 0.3, 0.2, 0.1});
  EXPECT_EQ(bitio::to_string(adg::extract_step(d, d[1].id)), "1");
  EXPECT_EQ(bitio::to_string(adg::extract_step(d, d[2].id)), "1");
  EXPECT_EQ(bitio::to_string(adg::extract_step(d, d[0].id)), "0");
  EXPECT_THROW(adg::extract_step(d, 999), DesyncError);
}

TEST(ExtractStep, RoundTripRandom) {
  Rng rng(31);
  Rng sample(32);
  Rng pad(33);
  for (int i = 0; i < 100000; ++i) {
    const auto d = testing_support::random_distribution(rng, 2 + uniform_below(rng, i % 10 == 0 ? 400 : 40));
    const auto bits = testing_support::random_bits(rng, 64);
    bitio::BitMessage m(bits);
    std::vector<adg::LevelChoice> levels;
    const auto step = adg::embed_step(d, m, sample, pad);
    const auto back = adg::extract_step(d.entries(), step.token, &levels);
    ASSERT_EQ(back.size(), step.bits);
    ASSERT_TRUE(std::equal(back.begin(), back.end(), bits.begin()));
    ASSERT_EQ(levels.size(), step.levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      ASSERT_EQ(levels[k].groups, step.levels[k].groups);
      ASSERT_EQ(levels[k].index, step.levels[k].index);
    }
  }
}

double kl_bits(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::log2(p[i] / q[i]);
  }
  return s;
}

TEST(ImplicitQ, EqualGroupsReproduceP) {
  const auto d = from_probs({0.4, 0.3, 0.2, 0.1});
  const auto q = adg::implicit_q(d);
  const auto p = d.probabilities();
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(q[i], p[i], 1e-15);
  EXPECT_NEAR(kl_bits(p, q), 0.0, 1e-15);
  const auto u8 = from(std::vector<std::uint64_t>(8, D / 8));
  for (double x : adg::implicit_q(u8)) EXPECT_DOUBLE_EQ(x, 0.125);
}

TEST(ImplicitQ, UnequalSharesDivergence) {
  // Hand-built two-group level with shares 3/4 and 1/4.
  const std::vector<TokenMass> level{{4, D / 2}, {5, D / 4}, {6, D / 4}};
  adg::Grouping g;
  g.level_mass = D;
  g.groups.push_back({{{4, D / 2}, {5, D / 4}}, 3 * D / 4});
  g.groups.push_back({{{6, D / 4}}, D / 4});
  const auto q = adg::single_level_q(level, g);
  const std::vector<double> p{0.5, 0.25, 0.25};
  const double want = 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5);
  EXPECT_NEAR(want, 0.18872, 5e-6);
  EXPECT_NEAR(kl_bits(p, q), want, 1e-12);
  EXPECT_NEAR(adg::group_divergence(adg::group_shares(g)), want, 1e-12);
}

TEST(ImplicitQ, SumsToOneAndFullSupport) {
  Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    const auto d = i % 2 ? testing_support::random_distribution(rng, 2 + uniform_below(rng, 300)) : awkward_distribution(rng);
    const auto q = adg::implicit_q(d);
    double s = 0.0;
    for (double x : q) {
      ASSERT_GT(x, 0.0);
      s += x;
    }
    ASSERT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(ImplicitQ, MatchesEmpiricalEmbedding) {
  // Frequencies of tokens chosen under uniformly random bits approach q.
  Rng rng(5);
  const auto d = testing_support::random_distribution(rng, 12);
  const auto q = adg::implicit_q(d);
  std::vector<double> freq(d.size(), 0.0);
  Rng sample(6);
  Rng pad(7);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    bitio::BitMessage m;
    const auto step = adg::embed_step(d, m, sample, pad);
    freq[*d.index_of(step.token)] += 1.0 / n;
  }
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(freq[i], q[i], 0.005);
}

TEST(KlIdentity, TokenFormEqualsGroupForm) {
  Rng rng(51);
  int checked = 0;
  while (checked < 10000) {
    const auto d = testing_support::random_distribution(rng, 2 + uniform_below(rng, 511));
    if (!adg::divisible(d.entries())) continue;
    const auto g = adg::equal_group(d);
    const auto q = adg::single_level_q(d.entries(), g);
    const double token_form = kl_bits(d.probabilities(), q);
    const double group_form = adg::group_divergence(adg::group_shares(g));
    ASSERT_NEAR(token_form, group_form, 1e-9);
    ASSERT_GE(group_form, -1e-12);
    ++checked;
  }
}

TEST(KlIdentity, JensenFloor) {
  Rng rng(61);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t u = std::size_t{1} << (1 + uniform_below(rng, 8));
    std::vector<double> eta(u);
    double s = 0.0;
    for (auto& e : eta) s += (e = -std::log((static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0));
    for (auto& e : eta) e /= s;
    ASSERT_GE(adg::group_divergence(eta), -1e-12);
    const std::vector<double> flat(u, 1.0 / static_cast<double>(u));
    ASSERT_NEAR(adg::group_divergence(flat), 0.0, 1e-12);
  }
}

TEST(Codec, EndToEndToyModel) {
  testing_support::ToyModel model(64);
  stego::AdgCodec codec;
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const auto payload = testing_support::random_bits(rng, uniform_below(rng, 1025));
    const stego::Seeds seeds{rng(), rng()};
    const auto text = stego::embed(codec, payload, model, seeds);
    for (const auto& s : text.sentences) {
      ASSERT_GE(s.size(), 5u);
      ASSERT_LE(s.size(), 200u);
    }
    ASSERT_EQ(stego::extract(codec, text.sentences, model), payload) << "payload " << i;
  }
}

TEST(Codec, EmptyPayloadCarriesHeader) {
  testing_support::ToyModel model(64);
  stego::AdgCodec codec;
  const auto text = stego::embed(codec, {}, model, {1, 2});
  std::size_t bits = 0;
  for (const auto& r : text.trace) bits += r.step.bits;
  EXPECT_GE(bits, 32u);
  EXPECT_TRUE(stego::extract(codec, text.sentences, model).empty());
}

TEST(Codec, UnknownTokenIsDesync) {
  testing_support::ToyModel model(64);
  stego::AdgCodec codec;
  Rng rng(1);
  auto text = stego::embed(codec, testing_support::random_bits(rng, 100), model, {1, 2});
  text.sentences[0][2] = 9999;
  EXPECT_THROW(stego::extract(codec, text.sentences, model), DesyncError);
}

TEST(Codec, ForcedEndAtMaxLength) {
  // A model that never wants to stop still yields bounded sentences.
  struct Chatty final : lm::LanguageModel {
    lm::ConditionalDistribution next_distribution(std::span<const TokenId>) override {
      std::vector<TokenMass> e{{kEosId, 1}};
      for (TokenId t = 4; t < 12; ++t) e.push_back({t, 0});
      const std::uint64_t share = (D - 1) / 8;
      for (std::size_t i = 1; i < e.size(); ++i) e[i].mass = share;
      e[1].mass += (D - 1) - share * 8;
      return lm::ConditionalDistribution::from_masses(e);
    }
  } model;
  stego::AdgCodec codec;
  Rng rng(3);
  const auto payload = testing_support::random_bits(rng, 1000);
  stego::Limits limits;
  limits.max_length = 20;
  const auto text = stego::embed(codec, payload, model, {1, 2}, limits);
  for (const auto& s : text.sentences) EXPECT_LE(s.size(), 20u);
  EXPECT_EQ(stego::extract(codec, text.sentences, model, limits), payload);
  std::vector<std::vector<TokenId>> too_long{std::vector<TokenId>(21, 4)};
  EXPECT_THROW(stego::extract(codec, too_long, model, limits), DesyncError);
}

TEST(Codec, BudgetExhaustion) {
  testing_support::ToyModel model(64);
  stego::AdgCodec codec;
  Rng rng(4);
  stego::Limits limits;
  limits.max_tokens = 10;
  EXPECT_THROW(stego::embed(codec, testing_support::random_bits(rng, 1000), model, {1, 2}, limits), CapacityError);
  limits = {};
  limits.max_sentences = 1;
  EXPECT_THROW(stego::embed(codec, testing_support::random_bits(rng, 5000), model, {1, 2}, limits), CapacityError);
}

TEST(Codec, DeterministicGivenSeeds) {
  testing_support::ToyModel model(64);
  stego::AdgCodec codec;
  Rng rng(5);
  const auto payload = testing_support::random_bits(rng, 300);
  const auto a = stego::embed(codec, payload, model, {9, 10});
  const auto b = stego::embed(codec, payload, model, {9, 10});
  EXPECT_EQ(a.sentences, b.sentences);
}

}  // namespace
