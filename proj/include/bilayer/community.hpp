#pragma once
// Community-level rollups of per-author recommendation lists. Community
// labels come from the outside as two-column TSV (identity, community id);
// detection itself is not this library's job. A digest counts, per topic,
// the distinct member authors whose top-n lists contain it, and summarises
// concentration with natural-log entropy and the sum of squared shares.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bilayer/diffusion.hpp"
#include "bilayer/io.hpp"
#include "bilayer/network.hpp"

namespace bilayer {

struct CommunityAssignment {
  enum class Kind { Author, Topic };
  Kind kind = Kind::Author;
  std::unordered_map<std::string, int> map;  // identity (topics: folded label) -> id

  int community_count() const {
    int max_id = -1;
    for (const auto& [identity, id] : map) max_id = std::max(max_id, id);
    return max_id + 1;
  }

  int lookup(const std::string& identity) const {
    auto it = map.find(kind == Kind::Topic ? normalize_topic_key(identity) : identity);
    return it == map.end() ? -1 : it->second;
  }
};

inline CommunityAssignment load_assignment(const std::string& path,
                                           CommunityAssignment::Kind kind) {
  CommunityAssignment asg;
  asg.kind = kind;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tsv(line);
    if (fields.size() != 2)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected identity<TAB>community");
    int id = -1;
    try {
      id = std::stoi(std::string(fields[1]));
    } catch (const std::exception&) {
      id = -1;
    }
    if (id < 0)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": community id must be a non-negative integer");
    std::string identity(fields[0]);
    if (kind == CommunityAssignment::Kind::Topic) identity = normalize_topic_key(identity);
    if (!asg.map.emplace(std::move(identity), id).second)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": duplicate identity");
  }
  return asg;
}

inline void validate_assignment(const BiLayerNetwork& net, const CommunityAssignment& asg) {
  for (const auto& [identity, id] : asg.map) {
    const bool known = asg.kind == CommunityAssignment::Kind::Author
                           ? net.find_author(identity).has_value()
                           : net.find_topic(identity).has_value();
    if (!known)
      throw std::invalid_argument("community label for unknown identity: " + identity);
  }
}

struct CommunityDigest {
  int community = -1;
  std::size_t size = 0;  // member authors that contributed a recommendation list
  std::vector<std::pair<std::string, std::size_t>> topic_counts;  // desc count, ties by label
  double entropy = 0.0;
  double hhi = 0.0;
};

inline std::pair<double, double> diversity(const CommunityDigest& digest) {
  if (digest.topic_counts.empty())
    throw std::invalid_argument("diversity of an empty topic distribution is undefined");
  double total = 0.0;
  for (const auto& [topic, count] : digest.topic_counts) total += static_cast<double>(count);
  double entropy = 0.0, hhi = 0.0;
  for (const auto& [topic, count] : digest.topic_counts) {
    const double p = static_cast<double>(count) / total;
    if (p > 0.0) entropy -= p * std::log(p);
    hhi += p * p;
  }
  return {entropy, hhi};
}

struct AggregateResult {
  std::vector<CommunityDigest> digests;  // ascending community id, only non-empty ones
  std::size_t unmapped_authors = 0;
};

inline AggregateResult aggregate_by_community(const std::vector<RecommendationList>& recs,
                                              const CommunityAssignment& authors,
                                              std::size_t top_n) {
  if (authors.kind != CommunityAssignment::Kind::Author)
    throw std::invalid_argument("author community assignment required");
  AggregateResult result;
  std::map<int, std::unordered_set<std::string>> members;
  std::map<int, std::unordered_map<std::string, std::unordered_set<std::string>>> counters;
  for (const auto& rec : recs) {
    const int comm = authors.lookup(rec.target);
    if (comm < 0) {
      ++result.unmapped_authors;
      continue;
    }
    members[comm].insert(rec.target);
    const std::size_t take = std::min(top_n, rec.entries.size());
    for (std::size_t i = 0; i < take; ++i)
      counters[comm][rec.entries[i].topic].insert(rec.target);
  }
  for (const auto& [comm, present] : members) {
    CommunityDigest digest;
    digest.community = comm;
    digest.size = present.size();
    auto it = counters.find(comm);
    if (it != counters.end()) {
      for (const auto& [topic, who] : it->second)
        digest.topic_counts.emplace_back(topic, who.size());
      std::sort(digest.topic_counts.begin(), digest.topic_counts.end(),
                [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
                });
      auto [entropy, hhi] = diversity(digest);
      digest.entropy = entropy;
      digest.hhi = hhi;
    }
    result.digests.push_back(std::move(digest));
  }
  return result;
}

struct CrossDistribution {
  std::vector<std::vector<std::size_t>> counts;  // [author community][topic community]
  std::size_t unmapped_authors = 0;
  std::size_t unmapped_topic_incidences = 0;
};

// Cell (i, j): recommendation incidences from authors of community i to
// topics of community j, each list truncated to its top-n entries.
inline CrossDistribution cross_distribution(const std::vector<RecommendationList>& recs,
                                            const CommunityAssignment& authors,
                                            const CommunityAssignment& topics,
                                            std::size_t top_n) {
  if (authors.kind != CommunityAssignment::Kind::Author ||
      topics.kind != CommunityAssignment::Kind::Topic)
    throw std::invalid_argument("author and topic assignments required, in that order");
  CrossDistribution dist;
  const int na = authors.community_count();
  const int nt = topics.community_count();
  dist.counts.assign(static_cast<std::size_t>(std::max(na, 0)),
                     std::vector<std::size_t>(static_cast<std::size_t>(std::max(nt, 0)), 0));
  for (const auto& rec : recs) {
    const int ac = authors.lookup(rec.target);
    if (ac < 0) {
      ++dist.unmapped_authors;
      continue;
    }
    const std::size_t take = std::min(top_n, rec.entries.size());
    for (std::size_t i = 0; i < take; ++i) {
      const int tc = topics.lookup(rec.entries[i].topic);
      if (tc < 0) {
        ++dist.unmapped_topic_incidences;
        continue;
      }
      ++dist.counts[static_cast<std::size_t>(ac)][static_cast<std::size_t>(tc)];
    }
  }
  return dist;
}

// One JSON object per line per community, topics in digest order.
inline std::string digests_to_jsonl(const AggregateResult& result,
                                    const ArtifactHeader* header = nullptr) {
  std::string out;
  if (header) out += jsonl_header_line(*header);
  for (const auto& d : result.digests) {
    nlohmann::ordered_json obj;
    obj["community"] = d.community;
    obj["size"] = d.size;
    obj["entropy"] = nlohmann::json::parse(format_sig12(d.entropy));
    obj["hhi"] = nlohmann::json::parse(format_sig12(d.hhi));
    auto& topics = obj["topics"] = nlohmann::ordered_json::array();
    for (const auto& [topic, count] : d.topic_counts)
      topics.push_back(nlohmann::ordered_json{{"topic", topic}, {"count", count}});
    out += obj.dump();
    out += '\n';
  }
  return out;
}

inline void write_digests(const AggregateResult& result, const std::string& path,
                          const ArtifactHeader* header = nullptr) {
  write_file_atomic(path, digests_to_jsonl(result, header));
}

inline std::string cross_to_csv(const CrossDistribution& dist,
                                const ArtifactHeader* header = nullptr) {
  std::string out;
  if (header) out += tsv_comment_header(*header);
  out += "author_community";
  const std::size_t nt = dist.counts.empty() ? 0 : dist.counts.front().size();
  for (std::size_t j = 0; j < nt; ++j) {
    out += ",topic_community_";
    out += std::to_string(j);
  }
  out += '\n';
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    out += std::to_string(i);
    for (std::size_t j = 0; j < nt; ++j) {
      out += ',';
      out += std::to_string(dist.counts[i][j]);
    }
    out += '\n';
  }
  return out;
}

inline void write_cross_distribution(const CrossDistribution& dist, const std::string& path,
                                     const ArtifactHeader* header = nullptr) {
  write_file_atomic(path, cross_to_csv(dist, header));
}

}  // namespace bilayer
