#pragma once
// Four-hop resource diffusion over the bi-layer network. A target author
// seeds resource into its own topics and, as a fresh copy, into its
// co-authors; topics then share along co-topic edges and co-authors push
// onto their topics. The two inbound flows are summed per topic and only
// topics the target is not already linked to are ranked.
//
// Every split is proportional to edge weight over the source's total weight,
// so scores are invariant to a global rescaling of the weights and scale
// linearly in the seed amount. Mass reaching a node with no onward edges
// vanishes. Depth is fixed at these four hops; there is no iteration.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bilayer/io.hpp"
#include "bilayer/network.hpp"
#include "bilayer/parallel.hpp"

namespace bilayer {

struct ResourceState {
  NodeIndex target = 0;
  double r_init = 1.0;
  std::vector<double> topic_direct;      // hop 1: target's own topics
  std::vector<double> coauthor;          // hop 2: fresh copy split over co-authors
  std::vector<double> topic_via_topics;  // hop 3: received along co-topic edges
  std::vector<double> topic_via_authors; // hop 4: received from co-authors
};

struct RecommendationEntry {
  NodeIndex topic_index = 0;
  std::string topic;
  double score = 0.0;
};

struct RecommendationList {
  std::string target;
  std::vector<RecommendationEntry> entries;
  std::chrono::system_clock::time_point generated_at;
};

inline std::vector<double> step1_author_to_topics(const BiLayerNetwork& net, NodeIndex target,
                                                  double r_init = 1.0) {
  if (r_init <= 0) throw std::invalid_argument("initial resource must be positive");
  std::vector<double> out(net.topic_count(), 0.0);
  const Adjacency& at = net.at();
  const double total = at.strength(target);
  if (total == 0.0) return out;
  const NodeIndex* n = at.neighbors_begin(target);
  const double* w = at.weights_begin(target);
  for (std::size_t k = 0; k < at.degree(target); ++k)
    out[n[k]] = w[k] / total * r_init;
  return out;
}

inline std::vector<double> step2_author_to_coauthors(const BiLayerNetwork& net, NodeIndex target,
                                                     double r_init = 1.0) {
  if (r_init <= 0) throw std::invalid_argument("initial resource must be positive");
  std::vector<double> out(net.author_count(), 0.0);
  const Adjacency& aa = net.aa();
  const double total = aa.strength(target);
  if (total == 0.0) return out;
  const NodeIndex* n = aa.neighbors_begin(target);
  const double* w = aa.weights_begin(target);
  for (std::size_t k = 0; k < aa.degree(target); ++k)
    out[n[k]] = w[k] / total * r_init;
  return out;
}

inline std::vector<double> step3_topic_to_topics(const BiLayerNetwork& net,
                                                 const std::vector<double>& topic_direct) {
  if (topic_direct.size() != net.topic_count())
    throw std::invalid_argument("topic resource vector size mismatch");
  std::vector<double> out(net.topic_count(), 0.0);
  const Adjacency& tt = net.tt();
  for (NodeIndex j = 0; j < topic_direct.size(); ++j) {
    const double held = topic_direct[j];
    if (held == 0.0) continue;
    const double total = tt.strength(j);
    if (total == 0.0) continue;  // no co-topic edges, mass vanishes
    const NodeIndex* n = tt.neighbors_begin(j);
    const double* w = tt.weights_begin(j);
    for (std::size_t k = 0; k < tt.degree(j); ++k)
      out[n[k]] += w[k] / total * held;
  }
  return out;
}

inline std::vector<double> step4_coauthors_to_topics(const BiLayerNetwork& net,
                                                     const std::vector<double>& coauthor) {
  if (coauthor.size() != net.author_count())
    throw std::invalid_argument("co-author resource vector size mismatch");
  std::vector<double> out(net.topic_count(), 0.0);
  const Adjacency& at = net.at();
  for (NodeIndex c = 0; c < coauthor.size(); ++c) {
    const double held = coauthor[c];
    if (held == 0.0) continue;
    const double total = at.strength(c);
    if (total == 0.0) continue;  // co-author without topics, mass vanishes
    const NodeIndex* n = at.neighbors_begin(c);
    const double* w = at.weights_begin(c);
    for (std::size_t k = 0; k < at.degree(c); ++k)
      out[n[k]] += w[k] / total * held;
  }
  return out;
}

// Keeps only topics with no existing link to the target and a positive
// combined score. Sorted by score descending, ties by ascending topic index.
inline RecommendationList finalize(const BiLayerNetwork& net, NodeIndex target,
                                   const std::vector<double>& topic_via_topics,
                                   const std::vector<double>& topic_via_authors) {
  if (topic_via_topics.size() != net.topic_count() ||
      topic_via_authors.size() != net.topic_count())
    throw std::invalid_argument("topic resource vector size mismatch");
  RecommendationList list;
  list.target = net.author_label(target);
  list.generated_at = std::chrono::system_clock::now();
  for (NodeIndex k = 0; k < net.topic_count(); ++k) {
    const double score = topic_via_topics[k] + topic_via_authors[k];
    if (score <= 0.0) continue;
    if (net.mu(target, k) != 0.0) continue;
    list.entries.push_back({k, net.topic_label(k), score});
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RecommendationEntry& a, const RecommendationEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.topic_index < b.topic_index;
            });
  return list;
}

inline ResourceState diffuse(const BiLayerNetwork& net, NodeIndex target, double r_init = 1.0) {
  ResourceState st;
  st.target = target;
  st.r_init = r_init;
  st.topic_direct = step1_author_to_topics(net, target, r_init);
  st.coauthor = step2_author_to_coauthors(net, target, r_init);
  st.topic_via_topics = step3_topic_to_topics(net, st.topic_direct);
  st.topic_via_authors = step4_coauthors_to_topics(net, st.coauthor);
  return st;
}

inline RecommendationList recommend(const BiLayerNetwork& net, NodeIndex target,
                                    std::size_t top_n = 100, double r_init = 1.0) {
  ResourceState st = diffuse(net, target, r_init);
  RecommendationList list = finalize(net, target, st.topic_via_topics, st.topic_via_authors);
  if (list.entries.size() > top_n) list.entries.resize(top_n);
  return list;
}

inline RecommendationList recommend(const BiLayerNetwork& net, std::string_view target_identity,
                                    std::size_t top_n = 100, double r_init = 1.0) {
  auto idx = net.find_author(target_identity);
  if (!idx) throw std::invalid_argument("unknown author: " + std::string(target_identity));
  return recommend(net, *idx, top_n, r_init);
}

// Batch driver. Targets are resolved up front so an unknown identity fails
// before any scoring happens; output order always matches input order.
inline std::vector<RecommendationList> recommend_all(const BiLayerNetwork& net,
                                                     const std::vector<std::string>& targets,
                                                     std::size_t top_n = 100,
                                                     std::size_t workers = 1,
                                                     double r_init = 1.0) {
  std::vector<NodeIndex> indices;
  indices.reserve(targets.size());
  for (const auto& t : targets) {
    auto idx = net.find_author(t);
    if (!idx) throw std::invalid_argument("unknown author: " + t);
    indices.push_back(*idx);
  }
  std::vector<RecommendationList> out(targets.size());
  parallel_chunks(targets.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = recommend(net, indices[i], top_n, r_init);
  });
  return out;
}

// ---- JSON-lines serialisation ----------------------------------------------
// One object per target with a 1-based rank per entry. Scores carry 12
// significant digits so re-exports are byte-identical.

inline std::string recommendations_to_jsonl(const std::vector<RecommendationList>& lists,
                                            const ArtifactHeader* header = nullptr) {
  std::string out;
  if (header) out += jsonl_header_line(*header);
  for (const auto& list : lists) {
    out += "{\"author\":";
    out += nlohmann::json(list.target).dump();
    out += ",\"recommendations\":[";
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      if (i) out += ',';
      out += "{\"topic\":";
      out += nlohmann::json(list.entries[i].topic).dump();
      out += ",\"score\":";
      out += format_sig12(list.entries[i].score);
      out += ",\"rank\":";
      out += std::to_string(i + 1);
      out += '}';
    }
    out += "]}\n";
  }
  return out;
}

inline void write_recommendations(const std::vector<RecommendationList>& lists,
                                  const std::string& path,
                                  const ArtifactHeader* header = nullptr) {
  write_file_atomic(path, recommendations_to_jsonl(lists, header));
}

inline std::vector<RecommendationList> read_recommendations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RecommendationList> lists;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": bad recommendation record");
    if (!obj.contains("author") && obj.contains("config_hash")) continue;
    if (!obj.contains("author") || !obj.contains("recommendations"))
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": bad recommendation record");
    RecommendationList list;
    list.target = obj["author"].get<std::string>();
    for (const auto& entry : obj["recommendations"]) {
      RecommendationEntry e;
      e.topic = entry.at("topic").get<std::string>();
      e.score = entry.at("score").get<double>();
      list.entries.push_back(std::move(e));
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

}  // namespace bilayer
