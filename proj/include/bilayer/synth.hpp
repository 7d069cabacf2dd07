#pragma once
// Synthetic fixtures: two small hand-traceable networks, seeded random
// corpora and networks for property suites, an overlap split with exact
// pre-computed candidate counts, and a corpus whose future links are planted
// along two-hop paths so path-based scorers have real signal to find.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "bilayer/network.hpp"
#include "bilayer/record.hpp"

namespace bilayer {

namespace detail {

inline BiblioRecord make_record(std::string id, int year, std::vector<std::string> author_names,
                                std::vector<std::string> topic_labels) {
  BiblioRecord rec;
  rec.record_id = std::move(id);
  rec.year = year;
  for (auto& name : author_names) {
    AuthorRef ref;
    ref.raw_name = name;
    ref.canonical_key = canonicalize_name(name);
    rec.authors.push_back(std::move(ref));
  }
  for (auto& label : topic_labels) rec.topics.push_back({normalize_topic_label(label), 1.0});
  return rec;
}

}  // namespace detail

// Two authors A and B, three topics. A and B co-authored once; A tags T1
// twice, B tags T1 and T2 once each; T1 co-occurs with T2 once and with T3
// three times. T3 is reachable from A only through the co-topic layer, T2
// through both layers.
inline std::vector<BiblioRecord> make_toy1() {
  std::vector<BiblioRecord> recs;
  recs.push_back(detail::make_record("r1", 2001, {"A", "B"}, {"T1"}));
  recs.push_back(detail::make_record("r2", 2001, {"A"}, {"T1"}));
  recs.push_back(detail::make_record("r3", 2001, {"B"}, {"T2"}));
  recs.push_back(detail::make_record("r4", 2002, {}, {"T1", "T2"}));
  recs.push_back(detail::make_record("r5", 2002, {}, {"T1", "T3"}));
  recs.push_back(detail::make_record("r6", 2002, {}, {"T1", "T3"}));
  recs.push_back(detail::make_record("r7", 2002, {}, {"T1", "T3"}));
  return recs;
}

// Same shape with the T1-T3 tie reduced to weight 1, which flips the final
// ranking of T2 and T3.
inline std::vector<BiblioRecord> make_toy2() {
  std::vector<BiblioRecord> recs;
  recs.push_back(detail::make_record("r1", 2001, {"A", "B"}, {"T1"}));
  recs.push_back(detail::make_record("r2", 2001, {"A"}, {"T1"}));
  recs.push_back(detail::make_record("r3", 2001, {"B"}, {"T2"}));
  recs.push_back(detail::make_record("r4", 2002, {}, {"T1", "T2"}));
  recs.push_back(detail::make_record("r5", 2002, {}, {"T1", "T3"}));
  return recs;
}

struct RandomNetworkConfig {
  std::size_t authors = 20;
  std::size_t topics = 20;
  double p_aa = 0.15;
  double p_tt = 0.15;
  double p_at = 0.15;
  bool integer_weights = true;  // co-occurrence style; false draws reals in (0, 5]
};

// Independent edge draws per unordered pair. Useful for invariant suites
// that need arbitrary shapes rather than corpus-derived networks.
inline BiLayerNetwork random_network(std::uint64_t seed, const RandomNetworkConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> int_w(1, 5);
  std::uniform_real_distribution<double> real_w(0.25, 5.0);
  auto draw_weight = [&] {
    return cfg.integer_weights ? static_cast<double>(int_w(rng)) : real_w(rng);
  };

  std::vector<std::string> authors, topics;
  for (std::size_t i = 0; i < cfg.authors; ++i) authors.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < cfg.topics; ++i) topics.push_back("t" + std::to_string(i));

  std::vector<WeightedEdge> aa, tt, at;
  for (NodeIndex u = 0; u < cfg.authors; ++u)
    for (NodeIndex v = u + 1; v < cfg.authors; ++v)
      if (coin(rng) < cfg.p_aa) aa.push_back({u, v, draw_weight()});
  for (NodeIndex u = 0; u < cfg.topics; ++u)
    for (NodeIndex v = u + 1; v < cfg.topics; ++v)
      if (coin(rng) < cfg.p_tt) tt.push_back({u, v, draw_weight()});
  for (NodeIndex a = 0; a < cfg.authors; ++a)
    for (NodeIndex t = 0; t < cfg.topics; ++t)
      if (coin(rng) < cfg.p_at) at.push_back({a, t, draw_weight()});

  return BiLayerNetwork::from_edges(std::move(authors), std::move(topics), aa, tt, at);
}

struct RandomCorpusConfig {
  std::size_t records = 1000;
  std::size_t authors = 200;
  std::size_t topics = 120;
  std::size_t max_authors_per_record = 3;
  std::size_t max_topics_per_record = 4;
  int first_year = 2000;
  int last_year = 2009;
};

inline std::vector<BiblioRecord> random_corpus(std::uint64_t seed,
                                               const RandomCorpusConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_auth(1, cfg.max_authors_per_record);
  std::uniform_int_distribution<std::size_t> n_top(1, cfg.max_topics_per_record);
  std::uniform_int_distribution<std::size_t> pick_a(0, cfg.authors - 1);
  std::uniform_int_distribution<std::size_t> pick_t(0, cfg.topics - 1);
  std::uniform_int_distribution<int> pick_year(cfg.first_year, cfg.last_year);

  std::vector<BiblioRecord> recs;
  recs.reserve(cfg.records);
  for (std::size_t i = 0; i < cfg.records; ++i) {
    std::vector<std::string> authors, topics;
    const std::size_t na = n_auth(rng);
    while (authors.size() < na) {
      std::string name = "author " + std::to_string(pick_a(rng));
      if (std::find(authors.begin(), authors.end(), name) == authors.end())
        authors.push_back(std::move(name));
    }
    const std::size_t nt = n_top(rng);
    while (topics.size() < nt) {
      std::string label = "topic " + std::to_string(pick_t(rng));
      if (std::find(topics.begin(), topics.end(), label) == topics.end())
        topics.push_back(std::move(label));
    }
    recs.push_back(detail::make_record("rec" + std::to_string(i), pick_year(rng),
                                       std::move(authors), std::move(topics)));
  }
  return recs;
}

struct OverlapSplit {
  std::vector<BiblioRecord> train;  // year 2000
  std::vector<BiblioRecord> test;   // year 2001
  std::size_t authors = 0;
  std::size_t topics = 0;
  std::size_t train_cross_edges = 0;
};

// Engineered counts: 730 authors, 1817 topics, exactly 14184 training
// author-topic edges, every node present in both halves. One training record
// per author covers a consecutive window of topics (the first 314 windows
// hold 20 topics, the rest 19; 314*20 + 416*19 = 14184); window starts
// advance by 2 or 3 positions, so the windows cover every topic. One testing
// record per topic pairs it with one author.
inline OverlapSplit make_overlap_split() {
  OverlapSplit split;
  split.authors = 730;
  split.topics = 1817;
  for (std::size_t i = 0; i < split.authors; ++i) {
    const std::size_t start = i * split.topics / split.authors;
    const std::size_t len = i < 314 ? 20 : 19;
    std::vector<std::string> topics;
    for (std::size_t k = 0; k < len; ++k)
      topics.push_back("t" + std::to_string((start + k) % split.topics));
    split.train_cross_edges += len;
    split.train.push_back(detail::make_record("train" + std::to_string(i), 2000,
                                              {"a" + std::to_string(i)}, std::move(topics)));
  }
  for (std::size_t j = 0; j < split.topics; ++j) {
    split.test.push_back(detail::make_record("test" + std::to_string(j), 2001,
                                             {"a" + std::to_string(j % split.authors)},
                                             {"t" + std::to_string(j)}));
  }
  return split;
}

struct PlantedSplitConfig {
  std::size_t authors = 120;
  std::size_t topics = 150;
  std::size_t train_records = 400;
  std::size_t max_authors_per_record = 3;
  std::size_t max_topics_per_record = 4;
  std::size_t plants_per_author = 3;
};

struct PlantedSplit {
  std::vector<BiblioRecord> train;
  std::vector<BiblioRecord> test;
  std::size_t planted = 0;
};

// Future links are chosen by an explicit two-hop mass computed with nested
// loops over the raw co-occurrence counts: own topics reached through the
// co-topic layer plus co-author topics, both ratio-weighted. The test half
// holds one record per planted pair plus single-node records so every
// training node also appears after the cutoff.
inline PlantedSplit make_planted_split(std::uint64_t seed, const PlantedSplitConfig& cfg = {}) {
  PlantedSplit split;
  RandomCorpusConfig base;
  base.records = cfg.train_records;
  base.authors = cfg.authors;
  base.topics = cfg.topics;
  base.max_authors_per_record = cfg.max_authors_per_record;
  base.max_topics_per_record = cfg.max_topics_per_record;
  base.first_year = 2000;
  base.last_year = 2000;
  split.train = random_corpus(seed, base);

  // Raw pair counts straight from the records, keyed by display name.
  std::unordered_map<std::string, std::unordered_map<std::string, double>> mu, theta, phi;
  for (const auto& rec : split.train) {
    for (std::size_t i = 0; i < rec.authors.size(); ++i) {
      for (std::size_t j = i + 1; j < rec.authors.size(); ++j) {
        theta[rec.authors[i].identity()][rec.authors[j].identity()] += 1.0;
        theta[rec.authors[j].identity()][rec.authors[i].identity()] += 1.0;
      }
      for (const auto& t : rec.topics)
        mu[rec.authors[i].identity()][t.label] += 1.0;
    }
    for (std::size_t i = 0; i < rec.topics.size(); ++i)
      for (std::size_t j = i + 1; j < rec.topics.size(); ++j) {
        phi[rec.topics[i].label][rec.topics[j].label] += 1.0;
        phi[rec.topics[j].label][rec.topics[i].label] += 1.0;
      }
  }
  auto total = [](const std::unordered_map<std::string, double>& row) {
    double s = 0.0;
    for (const auto& [key, w] : row) s += w;
    return s;
  };

  int next_id = 0;
  for (std::size_t ai = 0; ai < cfg.authors; ++ai) {
    const std::string author = "author " + std::to_string(ai);
    auto mu_it = mu.find(author);
    std::unordered_map<std::string, double> mass;
    if (mu_it != mu.end()) {
      const double mu_total = total(mu_it->second);
      for (const auto& [topic, w] : mu_it->second) {
        auto phi_it = phi.find(topic);
        if (phi_it == phi.end()) continue;
        const double phi_total = total(phi_it->second);
        for (const auto& [other, pw] : phi_it->second)
          mass[other] += (w / mu_total) * (pw / phi_total);
      }
    }
    auto theta_it = theta.find(author);
    if (theta_it != theta.end()) {
      const double theta_total = total(theta_it->second);
      for (const auto& [coauthor, tw] : theta_it->second) {
        auto cmu_it = mu.find(coauthor);
        if (cmu_it == mu.end()) continue;
        const double cmu_total = total(cmu_it->second);
        for (const auto& [topic, w] : cmu_it->second)
          mass[topic] += (tw / theta_total) * (w / cmu_total);
      }
    }

    std::vector<std::pair<std::string, double>> ranked;
    for (const auto& [topic, m] : mass) {
      if (mu_it != mu.end() && mu_it->second.count(topic)) continue;  // already linked
      ranked.emplace_back(topic, m);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const std::size_t take = std::min(cfg.plants_per_author, ranked.size());
    for (std::size_t k = 0; k < take; ++k) {
      split.test.push_back(detail::make_record("plant" + std::to_string(next_id++), 2001,
                                               {author}, {ranked[k].first}));
      ++split.planted;
    }
  }

  // Presence-only records keep the train/test overlap total.
  for (std::size_t ai = 0; ai < cfg.authors; ++ai)
    split.test.push_back(detail::make_record("pa" + std::to_string(ai), 2001,
                                             {"author " + std::to_string(ai)}, {}));
  for (std::size_t ti = 0; ti < cfg.topics; ++ti)
    split.test.push_back(detail::make_record("pt" + std::to_string(ti), 2001, {},
                                             {"topic " + std::to_string(ti)}));
  return split;
}

}  // namespace bilayer
