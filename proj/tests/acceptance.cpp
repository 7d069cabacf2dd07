// End-to-end acceptance checks, one line of output per criterion. Each check
// states a property the library must hold: exact traces on the two worked
// fixtures, conservation and oracle agreement on seeded network sweeps,
// invariance properties, engineered candidate counts, a planted-signal
// benchmark, byte-identical artifacts across worker counts, and a wall-clock
// budget for a 10,000-record run. The last criterion needs real bibliographic
// data and is skipped unless its input is supplied via the environment.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bilayer/bilayer.hpp"
#include "support/oracle.hpp"

using namespace bilayer;

namespace {

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind = Pass;
  std::string detail;
};

Outcome pass() { return {Outcome::Pass, {}}; }
Outcome fail(std::string detail) { return {Outcome::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Outcome::Skip, std::move(detail)}; }

std::string num(double v) { return format_sig12(v); }

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---- criterion 1: exact diffusion traces on the worked fixtures ------------

Outcome check_toy_traces() {
  const double tol = 1e-12;
  {
    BiLayerNetwork net = build_network(make_toy1());
    const NodeIndex a = *net.find_author("a");
    ResourceState st = diffuse(net, a);
    const std::vector<double> want_direct{1.0, 0.0, 0.0};
    const std::vector<double> want_via_topics{0.0, 0.25, 0.75};
    const std::vector<double> want_via_authors{0.5, 0.5, 0.0};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!close(st.topic_direct[k], want_direct[k], tol))
        return fail("fixture 1 step 1 topic " + std::to_string(k) + ": got " +
                    num(st.topic_direct[k]));
      if (!close(st.topic_via_topics[k], want_via_topics[k], tol))
        return fail("fixture 1 step 3 topic " + std::to_string(k) + ": got " +
                    num(st.topic_via_topics[k]));
      if (!close(st.topic_via_authors[k], want_via_authors[k], tol))
        return fail("fixture 1 step 4 topic " + std::to_string(k) + ": got " +
                    num(st.topic_via_authors[k]));
    }
    if (!close(st.coauthor[*net.find_author("b")], 1.0, tol))
      return fail("fixture 1 step 2: co-author share " +
                  num(st.coauthor[*net.find_author("b")]));
    auto rec = recommend(net, a);
    if (rec.entries.size() != 2 || rec.entries[0].topic != "T2" ||
        rec.entries[1].topic != "T3" || !close(rec.entries[0].score, 0.75, tol) ||
        !close(rec.entries[1].score, 0.75, tol))
      return fail("fixture 1 final ranking is not [T2 0.75, T3 0.75]");
  }
  {
    BiLayerNetwork net = build_network(make_toy2());
    auto rec = recommend(net, *net.find_author("a"));
    if (rec.entries.size() != 2 || rec.entries[0].topic != "T2" ||
        rec.entries[1].topic != "T3" || !close(rec.entries[0].score, 1.0, tol) ||
        !close(rec.entries[1].score, 0.5, tol))
      return fail("fixture 2 final ranking is not [T2 1.0, T3 0.5]");
  }
  return pass();
}

// ---- criterion 2: resource conservation on seeded networks -----------------

Outcome check_conservation() {
  const double probs[] = {0.05, 0.1, 0.2, 0.35};
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    RandomNetworkConfig cfg;
    cfg.authors = 1 + (static_cast<std::size_t>(i) * 13) % 100;
    cfg.topics = 1 + (static_cast<std::size_t>(i) * 29) % 100;
    cfg.p_aa = probs[i % 4];
    cfg.p_tt = probs[(i + 1) % 4];
    cfg.p_at = probs[(i + 2) % 4];
    cfg.integer_weights = i % 2 == 0;
    BiLayerNetwork net = random_network(4000 + static_cast<std::uint64_t>(i), cfg);
    const double r_init = (i % 3 == 0) ? 2.5 : 1.0;
    std::vector<NodeIndex> targets{0};
    if (net.author_count() > 2) targets.push_back(static_cast<NodeIndex>(net.author_count() / 2));
    if (net.author_count() > 1) targets.push_back(static_cast<NodeIndex>(net.author_count() - 1));
    for (NodeIndex t : targets) {
      const std::string violation = detail::conservation_violation(net, t, r_init, 1e-9);
      if (!violation.empty())
        return fail("network " + std::to_string(i) + " target " + std::to_string(t) + ": " +
                    violation);
      ++checked;
    }
  }
  if (checked < 200) return fail("only " + std::to_string(checked) + " spreads checked");
  return pass();
}

// ---- criterion 3: dense matrix oracle, plain and semantic ------------------

Outcome check_dense_oracle() {
  std::mt19937_64 vec_rng(3301);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    RandomNetworkConfig cfg;
    cfg.authors = 1 + (static_cast<std::size_t>(i) * 7) % 50;
    cfg.topics = 1 + (static_cast<std::size_t>(i) * 11) % 50;
    cfg.p_aa = 0.1 + 0.05 * (i % 3);
    cfg.p_tt = 0.1 + 0.05 * ((i + 1) % 3);
    cfg.p_at = 0.15;
    cfg.integer_weights = i % 2 == 0;
    BiLayerNetwork net = random_network(7000 + static_cast<std::uint64_t>(i), cfg);

    auto compare = [&](const BiLayerNetwork& n, const char* tag) -> std::optional<std::string> {
      std::vector<NodeIndex> targets{0};
      if (n.author_count() > 1)
        targets.push_back(static_cast<NodeIndex>(n.author_count() / 2));
      for (NodeIndex t : targets) {
        const std::vector<double> oracle = testsupport::dense_diffusion_scores(n, t);
        ResourceState st = diffuse(n, t);
        for (std::size_t k = 0; k < n.topic_count(); ++k) {
          const double got = st.topic_via_topics[k] + st.topic_via_authors[k];
          if (!close(got, oracle[k], 1e-9))
            return "network " + std::to_string(i) + " (" + tag + ") target " +
                   std::to_string(t) + " topic " + std::to_string(k) + ": " + num(got) +
                   " vs oracle " + num(oracle[k]);
        }
      }
      return std::nullopt;
    };

    if (auto err = compare(net, "corpus")) return fail(*err);
    if (i % 5 == 0 && net.topic_count() > 1) {
      SemanticLayerConfig sem;
      for (const auto& label : net.topic_labels()) {
        std::vector<double> v(8);
        for (double& x : v) x = comp(vec_rng);
        sem.vectors[label] = v;
      }
      BiLayerNetwork snet = build_semantic_layer(net, sem);
      if (auto err = compare(snet, "semantic")) return fail(*err);
    }
  }
  return pass();
}

// ---- criterion 4: weight-scale invariance and linearity in the seed mass ---

Outcome check_scale_invariance() {
  for (std::uint64_t seed : {61u, 62u, 63u, 64u, 65u}) {
    RandomNetworkConfig cfg;
    cfg.authors = 30;
    cfg.topics = 25;
    cfg.integer_weights = seed % 2 == 0;
    BiLayerNetwork net = random_network(seed, cfg);
    const NodeIndex target = static_cast<NodeIndex>(seed % net.author_count());
    auto base = recommend(net, target, net.topic_count());

    for (double c : {0.5, 3.0, 1000.0}) {
      std::vector<WeightedEdge> aa = net.aa_edges(), tt = net.tt_edges(), at = net.at_edges();
      for (auto* edges : {&aa, &tt, &at})
        for (auto& e : *edges) e.w *= c;
      BiLayerNetwork scaled =
          BiLayerNetwork::from_edges(net.author_labels(), net.topic_labels(), aa, tt, at);
      auto rec = recommend(scaled, target, scaled.topic_count());
      if (rec.entries.size() != base.entries.size())
        return fail("seed " + std::to_string(seed) + " x" + num(c) + ": entry count changed");
      for (std::size_t k = 0; k < rec.entries.size(); ++k) {
        if (rec.entries[k].topic_index != base.entries[k].topic_index)
          return fail("seed " + std::to_string(seed) + " x" + num(c) + ": order changed");
        if (!close(rec.entries[k].score, base.entries[k].score, 1e-12))
          return fail("seed " + std::to_string(seed) + " x" + num(c) + ": score " +
                      num(rec.entries[k].score) + " vs " + num(base.entries[k].score));
      }
    }

    for (double c : {0.5, 3.0, 12.5}) {
      auto rec = recommend(net, target, net.topic_count(), c);
      if (rec.entries.size() != base.entries.size())
        return fail("seed " + std::to_string(seed) + " r=" + num(c) + ": entry count changed");
      for (std::size_t k = 0; k < rec.entries.size(); ++k)
        if (!close(rec.entries[k].score, c * base.entries[k].score, 1e-12))
          return fail("seed " + std::to_string(seed) + " r=" + num(c) + ": not linear at " +
                      rec.entries[k].topic);
    }
  }
  return pass();
}

// ---- criterion 5: rank-statistic auc equals exhaustive pairing -------------

std::vector<LabeledCandidate> as_labeled(const std::vector<std::pair<double, bool>>& rows) {
  std::vector<LabeledCandidate> out;
  for (const auto& [score, positive] : rows) out.push_back({{0, 0}, score, positive});
  return out;
}

Outcome check_auc_equivalence() {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> size_dist(2, 1000);
    const std::size_t n = size_dist(rng);
    std::uniform_int_distribution<int> score_dist(0, 15);
    std::bernoulli_distribution label_dist(0.35);
    std::vector<std::pair<double, bool>> scored;
    for (std::size_t i = 0; i < n; ++i)
      scored.emplace_back(static_cast<double>(score_dist(rng)), label_dist(rng));
    scored[0].second = true;
    scored[1].second = false;

    const double rank_auc = roc_auc(as_labeled(scored)).auc;
    const double pair_auc = testsupport::pairwise_auc(scored);
    if (!close(rank_auc, pair_auc, 1e-12))
      return fail("trial " + std::to_string(trial) + ": rank " + num(rank_auc) + " vs pairs " +
                  num(pair_auc));

    auto transformed = scored;
    for (auto& [s, l] : transformed) s = 3.0 * s + 1.0;
    if (!close(roc_auc(as_labeled(transformed)).auc, rank_auc, 1e-12))
      return fail("trial " + std::to_string(trial) + ": monotone rescaling moved the auc");

    auto flipped = scored;
    for (auto& [s, l] : flipped) l = !l;
    if (!close(roc_auc(as_labeled(flipped)).auc, 1.0 - rank_auc, 1e-12))
      return fail("trial " + std::to_string(trial) + ": label reversal broke the complement");
  }
  return pass();
}

// ---- criterion 6: engineered overlap counts --------------------------------

Outcome check_overlap_counts() {
  OverlapSplit split = make_overlap_split();
  BiLayerNetwork train = build_network(split.train);
  BiLayerNetwork test = build_network(split.test);
  NetworkStats stats = network_stats(train, split.train);

  if (train.author_count() != 730 || train.topic_count() != 1817)
    return fail("training network is " + std::to_string(train.author_count()) + " x " +
                std::to_string(train.topic_count()));
  if (stats.at_edges != 14184)
    return fail("training cross edges: " + std::to_string(stats.at_edges));
  if (stats.at_participants != stats.at_author_participants + stats.at_topic_participants)
    return fail("participant identity violated");
  if (stats.at_participants != 730 + 1817)
    return fail("participants: " + std::to_string(stats.at_participants));

  CandidateSet set = enumerate_candidates(train, test);
  if (set.possible_pairs != 1326410)
    return fail("possible pairs: " + std::to_string(set.possible_pairs));
  if (set.train_edges_in_overlap != 14184)
    return fail("trained pairs in overlap: " + std::to_string(set.train_edges_in_overlap));
  if (set.pairs.size() != 1312226)
    return fail("candidates: " + std::to_string(set.pairs.size()));
  return pass();
}

// ---- criterion 7: planted future links rank above chance and above ra ------

Outcome check_planted_signal() {
  PlantedSplit split = make_planted_split(424242);
  BiLayerNetwork train = build_network(split.train);
  BiLayerNetwork test = build_network(split.test);
  CandidateSet set = enumerate_candidates(train, test);

  auto auc_for = [&](Method m) {
    auto scores = score_pairs(train, m, set.pairs, 4);
    return roc_auc(label_candidates(set, train, test, scores)).auc;
  };
  const double diffusion_auc = auc_for(Method::Diffusion);
  const double ra_auc = auc_for(Method::Ra);
  if (diffusion_auc < 0.70)
    return fail("diffusion auc " + num(diffusion_auc) + " below 0.70");
  if (diffusion_auc < ra_auc)
    return fail("diffusion auc " + num(diffusion_auc) + " below ra auc " + num(ra_auc));
  return pass();
}

// ---- criterion 8: worker count never changes artifact bytes ----------------

Outcome check_worker_determinism() {
  RandomCorpusConfig cfg;
  cfg.records = 2000;
  cfg.authors = 300;
  cfg.topics = 150;
  auto records = random_corpus(808, cfg);
  BiLayerNetwork net = build_network(records);
  const ArtifactHeader header{"00c0ffee00c0ffee", 42};

  auto lists1 = recommend_all(net, net.author_labels(), 100, 1);
  auto lists8 = recommend_all(net, net.author_labels(), 100, 8);
  if (recommendations_to_jsonl(lists1, &header) != recommendations_to_jsonl(lists8, &header))
    return fail("recommendation artifacts differ between 1 and 8 workers");

  std::vector<CandidatePair> pairs;
  for (NodeIndex a = 0; a < 50 && a < net.author_count(); ++a)
    for (NodeIndex t = 0; t < net.topic_count(); ++t)
      if (net.mu(a, t) == 0.0) pairs.push_back({a, t});
  for (Method m : {Method::Diffusion, Method::Wra, Method::Content}) {
    const std::string tsv1 = scores_to_tsv(net, pairs, score_pairs(net, m, pairs, 1), &header);
    const std::string tsv8 = scores_to_tsv(net, pairs, score_pairs(net, m, pairs, 8), &header);
    if (tsv1 != tsv8)
      return fail(std::string("score table for ") + method_name(m) +
                  " differs between 1 and 8 workers");
  }
  return pass();
}

// ---- criterion 9: a 10,000-record run fits the time budget -----------------

Outcome check_pipeline_budget() {
  const auto start = std::chrono::steady_clock::now();

  RandomCorpusConfig cfg;
  cfg.records = 10000;
  cfg.authors = 800;
  cfg.topics = 300;
  auto generated = random_corpus(909, cfg);

  std::string jsonl;
  for (const auto& rec : generated) {
    nlohmann::ordered_json j;
    j["id"] = rec.record_id;
    j["year"] = rec.year;
    auto& authors = j["authors"] = nlohmann::ordered_json::array();
    for (const auto& a : rec.authors) authors.push_back(a.raw_name);
    auto& fos = j["fos"] = nlohmann::ordered_json::array();
    for (const auto& t : rec.topics) fos.push_back(t.label);
    jsonl += j.dump();
    jsonl += '\n';
  }
  const auto dir = std::filesystem::temp_directory_path() / "bilayer_acceptance";
  std::filesystem::create_directories(dir);
  const std::string corpus_path = (dir / "pipeline.jsonl").string();
  write_file_atomic(corpus_path, jsonl);

  ParseReport report;
  auto records = parse_corpus(corpus_path, RecordFormat::Jsonl, report);
  if (report.parsed != 10000)
    return fail("expected 10000 parsed records, got " + std::to_string(report.parsed));

  CorpusSplit split = split_by_year(records, 2004);
  BiLayerNetwork train = build_network(split.train);
  BiLayerNetwork test = build_network(split.test);

  auto lists = recommend_all(train, train.author_labels(), 100, 8);
  if (lists.size() != train.author_count()) return fail("missing recommendation lists");

  CandidateSet set = enumerate_candidates(train, test);
  std::vector<NamedRocReport> reports;
  for (Method m : {Method::Diffusion, Method::Jc, Method::Aa, Method::Pa, Method::Ra,
                   Method::Wra, Method::Content, Method::Cf}) {
    auto scores = score_pairs(train, m, set.pairs, 8);
    reports.push_back({method_name(m), roc_auc(label_candidates(set, train, test, scores))});
  }
  if (reports.size() != 8) return fail("missing method reports");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed >= 60.0)
    return fail("pipeline took " + num(elapsed) + " s, budget is 60 s");
  return pass();
}

// ---- criterion 10: real bibliographic corpus (optional) --------------------

Outcome check_real_corpus() {
  const char* path = std::getenv("BILAYER_DBLP_IS");
  if (path == nullptr || *path == '\0')
    return skip("set BILAYER_DBLP_IS to a bibliographic JSONL file to enable");
  const char* cutoff_env = std::getenv("BILAYER_DBLP_CUTOFF");
  const int cutoff = cutoff_env ? std::atoi(cutoff_env) : 2015;

  ParseReport report;
  auto records = parse_corpus(path, RecordFormat::Jsonl, report);
  if (records.empty()) return fail(std::string(path) + ": no usable records");
  CorpusSplit split = split_by_year(records, cutoff);
  if (split.train.empty() || split.test.empty())
    return fail("cutoff " + std::to_string(cutoff) + " leaves an empty half");
  BiLayerNetwork train = build_network(split.train);
  BiLayerNetwork test = build_network(split.test);
  CandidateSet set = enumerate_candidates(train, test);

  auto auc_for = [&](Method m) {
    auto scores = score_pairs(train, m, set.pairs, 8);
    return roc_auc(label_candidates(set, train, test, scores)).auc;
  };
  const double diffusion_auc = auc_for(Method::Diffusion);
  const double ra_auc = auc_for(Method::Ra);
  std::printf("      corpus: %zu train / %zu test records, %zu candidates, diffusion auc %s, "
              "ra auc %s\n",
              split.train.size(), split.test.size(), set.pairs.size(),
              num(diffusion_auc).c_str(), num(ra_auc).c_str());
  if (diffusion_auc <= 0.5)
    return fail("diffusion auc " + num(diffusion_auc) + " is no better than chance");
  return pass();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"diffusion traces match the worked fixtures exactly", check_toy_traces},
      {"resource conservation holds on 200 seeded networks", check_conservation},
      {"spread equals the dense matrix oracle, semantic layer included", check_dense_oracle},
      {"global weight scaling and seed-mass linearity hold", check_scale_invariance},
      {"rank-statistic auc equals exhaustive pairing", check_auc_equivalence},
      {"engineered overlap yields the designed candidate counts", check_overlap_counts},
      {"planted future links: diffusion auc >= 0.70 and >= ra", check_planted_signal},
      {"artifact bytes are identical for 1 and 8 workers", check_worker_determinism},
      {"10,000-record pipeline finishes inside 60 s", check_pipeline_budget},
      {"real-corpus benchmark (optional, via BILAYER_DBLP_IS)", check_real_corpus},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = fail(std::string("unhandled error: ") + e.what());
    }
    const char* tag = outcome.kind == Outcome::Pass   ? "PASS"
                      : outcome.kind == Outcome::Skip ? "SKIP"
                                                      : "FAIL";
    std::printf("%s criterion %2d: %s%s%s\n", tag, index, c.name,
                outcome.detail.empty() ? "" : " :: ", outcome.detail.c_str());
    if (outcome.kind == Outcome::Fail) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
