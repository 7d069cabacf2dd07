#pragma once
// Time-split evaluation. Candidates are the author-topic non-edges of the
// training network whose endpoints also appear in the testing network; a
// candidate is positive when the testing network contains the edge. AUC uses
// the rank statistic with half credit for ties, which equals the exhaustive
// positive-negative pairing probability, and the ROC curve is swept over
// groups of equal score so ties never depend on input order. A sampled probe
// (half test edges, half absent pairs) gives the same statistic at scale.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bilayer/baselines.hpp"
#include "bilayer/io.hpp"
#include "bilayer/network.hpp"

namespace bilayer {

struct CandidateSet {
  std::vector<NodeIndex> authors;  // training indices of authors present in both networks
  std::vector<NodeIndex> topics;   // training indices of topics present in both networks
  std::vector<CandidatePair> pairs;  // training non-edges over the overlap, author-major
  std::size_t possible_pairs = 0;    // |authors| * |topics|
  std::size_t train_edges_in_overlap = 0;
};

inline CandidateSet enumerate_candidates(const BiLayerNetwork& train,
                                         const BiLayerNetwork& test) {
  CandidateSet set;
  for (NodeIndex a = 0; a < train.author_count(); ++a)
    if (test.find_author(train.author_label(a))) set.authors.push_back(a);
  for (NodeIndex t = 0; t < train.topic_count(); ++t)
    if (test.find_topic(train.topic_label(t))) set.topics.push_back(t);
  if (set.authors.empty() || set.topics.empty())
    throw std::invalid_argument("training and testing networks share no authors or no topics");
  set.possible_pairs = set.authors.size() * set.topics.size();
  set.pairs.reserve(set.possible_pairs);
  for (NodeIndex a : set.authors) {
    for (NodeIndex t : set.topics) {
      if (train.mu(a, t) > 0.0)
        ++set.train_edges_in_overlap;
      else
        set.pairs.push_back({a, t});
    }
  }
  return set;
}

struct LabeledCandidate {
  CandidatePair pair;
  double score = 0.0;
  bool positive = false;
};

inline std::vector<LabeledCandidate> label_candidates(const CandidateSet& set,
                                                      const BiLayerNetwork& train,
                                                      const BiLayerNetwork& test,
                                                      const std::vector<double>& scores) {
  if (scores.size() != set.pairs.size())
    throw std::invalid_argument("label_candidates: one score per candidate required");
  std::unordered_map<NodeIndex, NodeIndex> author_map, topic_map;
  for (NodeIndex a : set.authors) author_map[a] = *test.find_author(train.author_label(a));
  for (NodeIndex t : set.topics) topic_map[t] = *test.find_topic(train.topic_label(t));
  std::vector<LabeledCandidate> out;
  out.reserve(set.pairs.size());
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const CandidatePair p = set.pairs[i];
    out.push_back({p, scores[i], test.mu(author_map[p.author], topic_map[p.topic]) > 0.0});
  }
  return out;
}

struct RocReport {
  std::vector<std::pair<double, double>> curve;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.0;
  std::optional<std::size_t> k;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

struct NamedRocReport {
  std::string method;
  RocReport report;
};

namespace detail {

// Rank-statistic AUC plus the grouped ROC sweep over (score, label) rows.
// Input order only breaks ties deterministically; it never changes values.
inline RocReport roc_from_scored(std::vector<std::pair<double, bool>> scored) {
  RocReport rep;
  for (const auto& [score, positive] : scored) (positive ? rep.n_pos : rep.n_neg)++;
  if (rep.n_pos == 0) throw std::invalid_argument("no positive examples in evaluation set");
  if (rep.n_neg == 0) throw std::invalid_argument("no negative examples in evaluation set");

  std::vector<std::size_t> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored[a].first < scored[b].first;
  });

  // Average 1-based rank over each tie group, summed for positives.
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scored[order[j]].first == scored[order[i]].first) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t m = i; m < j; ++m)
      if (scored[order[m]].second) pos_rank_sum += avg_rank;
    i = j;
  }
  const double np = static_cast<double>(rep.n_pos);
  const double nn = static_cast<double>(rep.n_neg);
  rep.auc = (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);

  rep.curve.emplace_back(0.0, 0.0);
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = order.size(); i > 0;) {
    std::size_t j = i;  // sweep score groups from highest to lowest
    while (j > 0 && scored[order[j - 1]].first == scored[order[i - 1]].first) --j;
    for (std::size_t m = j; m < i; ++m) (scored[order[m]].second ? tp : fp)++;
    rep.curve.emplace_back(static_cast<double>(fp) / nn, static_cast<double>(tp) / np);
    i = j;
  }
  return rep;
}

}  // namespace detail

// With k set, only the k best-scored candidates form the population; ties at
// the cutoff keep their input order, so restriction is deterministic.
inline RocReport roc_auc(const std::vector<LabeledCandidate>& labeled,
                         std::optional<std::size_t> k = std::nullopt) {
  std::vector<std::size_t> order(labeled.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (k) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return labeled[a].score > labeled[b].score;
    });
    if (*k < order.size()) order.resize(*k);
  }
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(order.size());
  for (std::size_t i : order) scored.emplace_back(labeled[i].score, labeled[i].positive);
  RocReport rep = detail::roc_from_scored(std::move(scored));
  rep.k = k;
  return rep;
}

struct ProbeSet {
  std::vector<CandidatePair> positives;  // testing-network indices, edges
  std::vector<CandidatePair> negatives;  // testing-network indices, non-edges
  std::uint64_t rng_seed = 0;
  std::size_t size() const { return positives.size() + negatives.size(); }
};

// Half the probe holds distinct testing edges, half distinct absent pairs,
// drawn without replacement from a seeded generator.
inline ProbeSet make_probe(const BiLayerNetwork& test, std::size_t size, std::uint64_t seed) {
  if (size == 0 || size % 2 != 0)
    throw std::invalid_argument("probe size must be a positive even number");
  const std::size_t half = size / 2;

  std::vector<WeightedEdge> edges = test.at_edges();
  if (edges.size() < half)
    throw std::invalid_argument("probe larger than the testing edge set");
  const std::size_t na = test.author_count();
  const std::size_t nt = test.topic_count();
  if (na * nt - edges.size() < half)
    throw std::invalid_argument("testing network too dense to sample absent pairs");

  ProbeSet probe;
  probe.rng_seed = seed;
  std::mt19937_64 rng(seed);

  // Partial shuffle keeps the draw uniform and cheap for half << edge count.
  for (std::size_t i = 0; i < half; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, edges.size() - 1);
    std::swap(edges[i], edges[pick(rng)]);
    probe.positives.push_back({edges[i].u, edges[i].v});
  }

  std::uniform_int_distribution<std::size_t> pick_a(0, na - 1);
  std::uniform_int_distribution<std::size_t> pick_t(0, nt - 1);
  std::unordered_set<std::uint64_t> used;
  while (probe.negatives.size() < half) {
    const NodeIndex a = static_cast<NodeIndex>(pick_a(rng));
    const NodeIndex t = static_cast<NodeIndex>(pick_t(rng));
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | t;
    if (test.mu(a, t) > 0.0) continue;
    if (!used.insert(key).second) continue;
    probe.negatives.push_back({a, t});
  }
  return probe;
}

// score_fn receives testing-network pairs; callers resolve identities across
// networks themselves (unseen pairs usually score 0).
template <typename ScoreFn>
RocReport probe_auc(ScoreFn&& score_fn, const ProbeSet& probe) {
  if (probe.positives.empty() || probe.negatives.empty())
    throw std::invalid_argument("probe set must contain both classes");
  if (probe.positives.size() != probe.negatives.size())
    throw std::invalid_argument("probe set classes must have equal size");
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(probe.size());
  for (const CandidatePair& p : probe.positives) scored.emplace_back(score_fn(p), true);
  for (const CandidatePair& p : probe.negatives) scored.emplace_back(score_fn(p), false);
  return detail::roc_from_scored(std::move(scored));
}

// CSV rows: one per curve point with an empty auc column, then one summary
// row per report carrying only the area. Re-exports are byte-identical.
inline std::string report_to_csv(const std::vector<NamedRocReport>& reports,
                                 const ArtifactHeader* header = nullptr) {
  if (reports.empty()) throw std::invalid_argument("no reports to export");
  std::string out;
  if (header) out += tsv_comment_header(*header);
  out += "method,k,fpr,tpr,auc\n";
  auto k_field = [](const RocReport& r) { return r.k ? std::to_string(*r.k) : std::string(); };
  for (const auto& [method, rep] : reports) {
    for (const auto& [fpr, tpr] : rep.curve) {
      out += method;
      out += ',';
      out += k_field(rep);
      out += ',';
      out += format_sig12(fpr);
      out += ',';
      out += format_sig12(tpr);
      out += ",\n";
    }
  }
  for (const auto& [method, rep] : reports) {
    out += method;
    out += ',';
    out += k_field(rep);
    out += ",,,";
    out += format_sig12(rep.auc);
    out += '\n';
  }
  return out;
}

inline void export_report(const std::vector<NamedRocReport>& reports, const std::string& path,
                          const ArtifactHeader* header = nullptr) {
  write_file_atomic(path, report_to_csv(reports, header));
}

}  // namespace bilayer
