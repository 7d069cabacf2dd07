#pragma once
// Bi-layer bibliometric network: a co-authorship layer, a co-topic layer and
// the bipartite author-topic edges between them. Edge weights are pairwise
// co-occurrence counts accumulated over records; the co-topic layer can be
// swapped for a cosine-similarity layer built from supplied topic vectors.
//
// Adjacency is stored as compressed sorted-neighbor arrays per node per edge
// set. Construction is single-writer; a built network is immutable and can be
// shared read-only across any number of scoring threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bilayer/io.hpp"
#include "bilayer/record.hpp"

namespace bilayer {

using NodeIndex = std::uint32_t;

enum class Layer { Author, Topic };

struct NodeId {
  Layer layer;
  NodeIndex index;
};

struct WeightedEdge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double w = 0.0;
};

// One directed view of a symmetric edge set (CSR with sorted neighbors).
class Adjacency {
 public:
  Adjacency() = default;

  // entries: directed half-edges (src, dst, w); duplicates are an error.
  static Adjacency from_entries(std::size_t n_src, std::vector<WeightedEdge> entries) {
    std::sort(entries.begin(), entries.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    Adjacency adj;
    adj.offsets_.assign(n_src + 1, 0);
    for (const auto& e : entries) {
      if (e.u >= n_src) throw std::invalid_argument("adjacency: source index out of range");
      ++adj.offsets_[e.u + 1];
    }
    for (std::size_t i = 1; i <= n_src; ++i) adj.offsets_[i] += adj.offsets_[i - 1];
    adj.nbr_.reserve(entries.size());
    adj.w_.reserve(entries.size());
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].u == entries[i - 1].u && entries[i].v == entries[i - 1].v)
        throw std::invalid_argument("adjacency: duplicate edge");
    }
    for (const auto& e : entries) {
      adj.nbr_.push_back(e.v);
      adj.w_.push_back(e.w);
    }
    adj.strength_.assign(n_src, 0.0);
    for (std::size_t u = 0; u < n_src; ++u)
      for (std::size_t k = adj.offsets_[u]; k < adj.offsets_[u + 1]; ++k)
        adj.strength_[u] += adj.w_[k];
    return adj;
  }

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t entry_count() const { return nbr_.size(); }

  std::size_t degree(NodeIndex u) const { return offsets_[u + 1] - offsets_[u]; }
  double strength(NodeIndex u) const { return strength_[u]; }

  const NodeIndex* neighbors_begin(NodeIndex u) const { return nbr_.data() + offsets_[u]; }
  const NodeIndex* neighbors_end(NodeIndex u) const { return nbr_.data() + offsets_[u + 1]; }
  const double* weights_begin(NodeIndex u) const { return w_.data() + offsets_[u]; }

  // 0 when the edge is absent.
  double weight_between(NodeIndex u, NodeIndex v) const {
    const NodeIndex* lo = neighbors_begin(u);
    const NodeIndex* hi = neighbors_end(u);
    const NodeIndex* it = std::lower_bound(lo, hi, v);
    if (it == hi || *it != v) return 0.0;
    return w_[static_cast<std::size_t>(it - nbr_.data())];
  }

  bool has_edge(NodeIndex u, NodeIndex v) const { return weight_between(u, v) != 0.0; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> nbr_;
  std::vector<double> w_;
  std::vector<double> strength_;
};

class BiLayerNetwork {
 public:
  std::size_t author_count() const { return author_labels_.size(); }
  std::size_t topic_count() const { return topic_labels_.size(); }

  const std::string& author_label(NodeIndex i) const { return author_labels_[i]; }
  const std::string& topic_label(NodeIndex i) const { return topic_labels_[i]; }
  const std::vector<std::string>& author_labels() const { return author_labels_; }
  const std::vector<std::string>& topic_labels() const { return topic_labels_; }

  std::optional<NodeIndex> find_author(std::string_view identity) const {
    auto it = author_index_.find(std::string(identity));
    if (it == author_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<NodeIndex> find_topic(std::string_view label) const {
    auto it = topic_index_.find(normalize_topic_key(label));
    if (it == topic_index_.end()) return std::nullopt;
    return it->second;
  }

  const Adjacency& aa() const { return aa_; }  // author -> co-authors, weight theta
  const Adjacency& tt() const { return tt_; }  // topic -> co-topics, weight phi
  const Adjacency& at() const { return at_; }  // author -> topics, weight mu
  const Adjacency& ta() const { return ta_; }  // topic -> authors, weight mu

  double theta(NodeIndex a, NodeIndex b) const { return aa_.weight_between(a, b); }
  double phi(NodeIndex j, NodeIndex k) const { return tt_.weight_between(j, k); }
  double mu(NodeIndex a, NodeIndex t) const { return at_.weight_between(a, t); }

  std::size_t aa_edge_count() const { return aa_.entry_count() / 2; }
  std::size_t tt_edge_count() const { return tt_.entry_count() / 2; }
  std::size_t at_edge_count() const { return at_.entry_count(); }

  bool semantic_topic_layer() const { return semantic_tt_; }

  // Undirected edge lists in canonical order (u < v for intra-layer sets).
  std::vector<WeightedEdge> aa_edges() const { return collect_intra(aa_); }
  std::vector<WeightedEdge> tt_edges() const { return collect_intra(tt_); }
  std::vector<WeightedEdge> at_edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(at_.entry_count());
    for (NodeIndex a = 0; a < author_count(); ++a) {
      const NodeIndex* n = at_.neighbors_begin(a);
      const double* w = at_.weights_begin(a);
      for (std::size_t k = 0; k < at_.degree(a); ++k) out.push_back({a, n[k], w[k]});
    }
    return out;
  }

  static BiLayerNetwork from_edges(std::vector<std::string> author_labels,
                                   std::vector<std::string> topic_labels,
                                   const std::vector<WeightedEdge>& aa_edges,
                                   const std::vector<WeightedEdge>& tt_edges,
                                   const std::vector<WeightedEdge>& at_edges,
                                   bool semantic_topic_layer = false) {
    BiLayerNetwork net;
    net.author_labels_ = std::move(author_labels);
    net.topic_labels_ = std::move(topic_labels);
    net.semantic_tt_ = semantic_topic_layer;
    for (NodeIndex i = 0; i < net.author_labels_.size(); ++i) {
      if (!net.author_index_.emplace(net.author_labels_[i], i).second)
        throw std::invalid_argument("duplicate author identity: " + net.author_labels_[i]);
    }
    for (NodeIndex i = 0; i < net.topic_labels_.size(); ++i) {
      if (!net.topic_index_.emplace(normalize_topic_key(net.topic_labels_[i]), i).second)
        throw std::invalid_argument("duplicate topic label: " + net.topic_labels_[i]);
    }
    const std::size_t na = net.author_labels_.size();
    const std::size_t nt = net.topic_labels_.size();

    net.aa_ = build_symmetric(na, aa_edges, "author-author");
    net.tt_ = build_symmetric(nt, tt_edges, "topic-topic");

    std::vector<WeightedEdge> at_dir, ta_dir;
    at_dir.reserve(at_edges.size());
    ta_dir.reserve(at_edges.size());
    for (const auto& e : at_edges) {
      if (e.u >= na || e.v >= nt)
        throw std::invalid_argument("author-topic edge index out of range");
      if (e.w <= 0) throw std::invalid_argument("author-topic edge weight must be positive");
      at_dir.push_back({e.u, e.v, e.w});
      ta_dir.push_back({e.v, e.u, e.w});
    }
    net.at_ = Adjacency::from_entries(na, std::move(at_dir));
    net.ta_ = Adjacency::from_entries(nt, std::move(ta_dir));
    return net;
  }

 private:
  static Adjacency build_symmetric(std::size_t n, const std::vector<WeightedEdge>& edges,
                                   const char* what) {
    std::vector<WeightedEdge> dir;
    dir.reserve(edges.size() * 2);
    for (const auto& e : edges) {
      if (e.u == e.v) throw std::invalid_argument(std::string(what) + ": self-loop");
      if (e.u >= n || e.v >= n)
        throw std::invalid_argument(std::string(what) + ": edge index out of range");
      if (e.w <= 0) throw std::invalid_argument(std::string(what) + ": weight must be positive");
      dir.push_back({e.u, e.v, e.w});
      dir.push_back({e.v, e.u, e.w});
    }
    return Adjacency::from_entries(n, std::move(dir));
  }

  std::vector<WeightedEdge> collect_intra(const Adjacency& adj) const {
    std::vector<WeightedEdge> out;
    out.reserve(adj.entry_count() / 2);
    for (NodeIndex u = 0; u < adj.node_count(); ++u) {
      const NodeIndex* n = adj.neighbors_begin(u);
      const double* w = adj.weights_begin(u);
      for (std::size_t k = 0; k < adj.degree(u); ++k)
        if (u < n[k]) out.push_back({u, n[k], w[k]});
    }
    return out;
  }

  std::vector<std::string> author_labels_;
  std::vector<std::string> topic_labels_;
  std::unordered_map<std::string, NodeIndex> author_index_;
  std::unordered_map<std::string, NodeIndex> topic_index_;  // keyed by folded label
  Adjacency aa_, tt_, at_, ta_;
  bool semantic_tt_ = false;
};

// Every unordered pair of distinct authors in a record gains +1 on theta,
// every pair of distinct topics +1 on phi, every (author, topic) pair +1 on
// mu. Tag weights never affect co-occurrence counts. Nodes appearing in any
// record are registered even when they form no pair.
inline BiLayerNetwork build_network(const std::vector<BiblioRecord>& records) {
  if (records.empty()) throw std::invalid_argument("build_network: no records");

  std::vector<std::string> author_labels, topic_labels;
  std::unordered_map<std::string, NodeIndex> author_index, topic_index;
  auto author_of = [&](const AuthorRef& ref) {
    auto [it, inserted] = author_index.emplace(ref.identity(), author_labels.size());
    if (inserted) author_labels.push_back(ref.identity());
    return it->second;
  };
  auto topic_of = [&](const TopicTag& tag) {
    auto [it, inserted] = topic_index.emplace(normalize_topic_key(tag.label), topic_labels.size());
    if (inserted) topic_labels.push_back(tag.label);
    return it->second;
  };

  std::unordered_map<std::uint64_t, double> aa_w, tt_w, at_w;
  auto pair_key = [](NodeIndex u, NodeIndex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  };

  std::vector<NodeIndex> as, ts;
  for (const auto& rec : records) {
    as.clear();
    ts.clear();
    for (const auto& a : rec.authors) as.push_back(author_of(a));
    for (const auto& t : rec.topics) ts.push_back(topic_of(t));
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = i + 1; j < as.size(); ++j)
        aa_w[pair_key(std::min(as[i], as[j]), std::max(as[i], as[j]))] += 1.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j)
        tt_w[pair_key(std::min(ts[i], ts[j]), std::max(ts[i], ts[j]))] += 1.0;
    for (NodeIndex a : as)
      for (NodeIndex t : ts) at_w[pair_key(a, t)] += 1.0;
  }

  auto to_edges = [](const std::unordered_map<std::uint64_t, double>& m) {
    std::vector<WeightedEdge> edges;
    edges.reserve(m.size());
    for (const auto& [key, w] : m)
      edges.push_back({static_cast<NodeIndex>(key >> 32), static_cast<NodeIndex>(key), w});
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return edges;
  };

  return BiLayerNetwork::from_edges(std::move(author_labels), std::move(topic_labels),
                                    to_edges(aa_w), to_edges(tt_w), to_edges(at_w));
}

struct NetworkStats {
  std::size_t author_nodes = 0;
  std::size_t aa_edges = 0;
  std::size_t topic_nodes = 0;
  std::size_t tt_edges = 0;
  std::size_t at_edges = 0;
  std::size_t at_author_participants = 0;  // authors with >= 1 cross-layer edge
  std::size_t at_topic_participants = 0;
  std::size_t at_participants = 0;         // sum of the two above
  std::size_t papers = 0;
  std::size_t edge_sum = 0;                // plain sum over the three edge sets
};

inline NetworkStats network_stats(const BiLayerNetwork& net,
                                  const std::vector<BiblioRecord>& records) {
  NetworkStats s;
  s.author_nodes = net.author_count();
  s.topic_nodes = net.topic_count();
  s.aa_edges = net.aa_edge_count();
  s.tt_edges = net.tt_edge_count();
  s.at_edges = net.at_edge_count();
  for (NodeIndex a = 0; a < net.author_count(); ++a)
    if (net.at().degree(a) > 0) ++s.at_author_participants;
  for (NodeIndex t = 0; t < net.topic_count(); ++t)
    if (net.ta().degree(t) > 0) ++s.at_topic_participants;
  s.at_participants = s.at_author_participants + s.at_topic_participants;
  s.papers = records.size();
  s.edge_sum = s.aa_edges + s.tt_edges + s.at_edges;
  return s;
}

struct SemanticLayerConfig {
  // Keyed by topic label (folded on lookup); all vectors share one dimension.
  std::unordered_map<std::string, std::vector<double>> vectors;
  double similarity_floor = 0.0;  // only pairs with cosine above this become edges
};

// Replace the co-topic layer by pairwise cosine similarities. The author
// layer and the cross-layer edges are untouched. Weights must stay positive,
// so a negative floor behaves like 0.
inline BiLayerNetwork build_semantic_layer(const BiLayerNetwork& net,
                                           const SemanticLayerConfig& cfg) {
  if (cfg.similarity_floor < -1.0 || cfg.similarity_floor > 1.0)
    throw std::invalid_argument("similarity floor must be in [-1, 1]");

  std::unordered_map<std::string, const std::vector<double>*> by_key;
  by_key.reserve(cfg.vectors.size());
  std::size_t dim = 0;
  for (const auto& [label, vec] : cfg.vectors) {
    if (vec.empty()) throw std::invalid_argument("topic vector for '" + label + "' is empty");
    if (dim == 0) dim = vec.size();
    if (vec.size() != dim)
      throw std::invalid_argument("topic vector dimensions differ: '" + label + "'");
    by_key[normalize_topic_key(label)] = &vec;
  }

  const std::size_t nt = net.topic_count();
  std::vector<const std::vector<double>*> vecs(nt, nullptr);
  std::vector<double> norms(nt, 0.0);
  for (NodeIndex t = 0; t < nt; ++t) {
    auto it = by_key.find(normalize_topic_key(net.topic_label(t)));
    if (it == by_key.end())
      throw std::invalid_argument("missing vector for topic '" + net.topic_label(t) + "'");
    vecs[t] = it->second;
    double sq = 0.0;
    for (double x : *it->second) sq += x * x;
    if (sq == 0.0)
      throw std::invalid_argument("zero-norm vector for topic '" + net.topic_label(t) + "'");
    norms[t] = std::sqrt(sq);
  }

  const double floor = std::max(cfg.similarity_floor, 0.0);
  std::vector<WeightedEdge> tt_edges;
  for (NodeIndex i = 0; i < nt; ++i) {
    for (NodeIndex j = i + 1; j < nt; ++j) {
      double dot = 0.0;
      const std::vector<double>& vi = *vecs[i];
      const std::vector<double>& vj = *vecs[j];
      for (std::size_t d = 0; d < dim; ++d) dot += vi[d] * vj[d];
      double cos = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      if (cos > floor && cos > 0.0) tt_edges.push_back({i, j, cos});
    }
  }

  return BiLayerNetwork::from_edges(net.author_labels(), net.topic_labels(), net.aa_edges(),
                                    tt_edges, net.at_edges(), /*semantic_topic_layer=*/true);
}

// ---- TSV export / import ---------------------------------------------------
// Five files per network directory: aa.tsv, tt.tsv, at.tsv (id, id, weight)
// plus authors.tsv and topics.tsv (index, label). Rows are sorted by indices
// so identical networks export byte-identically.

namespace detail {

inline std::string edge_list_tsv(const std::vector<WeightedEdge>& edges,
                                 const ArtifactHeader* header) {
  std::string out;
  if (header) out += tsv_comment_header(*header);
  for (const auto& e : edges) {
    out += std::to_string(e.u);
    out += '\t';
    out += std::to_string(e.v);
    out += '\t';
    out += format_weight(e.w);
    out += '\n';
  }
  return out;
}

inline std::string label_map_tsv(const std::vector<std::string>& labels,
                                 const ArtifactHeader* header) {
  std::string out;
  if (header) out += tsv_comment_header(*header);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += labels[i];
    out += '\n';
  }
  return out;
}

inline std::vector<WeightedEdge> parse_edge_list_tsv(const std::string& content,
                                                     const std::string& what) {
  std::vector<WeightedEdge> edges;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tsv(line);
    if (fields.size() != 3)
      throw std::runtime_error(what + ": line " + std::to_string(lineno) + ": expected 3 fields");
    try {
      WeightedEdge e;
      e.u = static_cast<NodeIndex>(std::stoul(std::string(fields[0])));
      e.v = static_cast<NodeIndex>(std::stoul(std::string(fields[1])));
      e.w = std::stod(std::string(fields[2]));
      edges.push_back(e);
    } catch (const std::exception&) {
      throw std::runtime_error(what + ": line " + std::to_string(lineno) + ": bad number");
    }
  }
  return edges;
}

inline std::vector<std::string> parse_label_map_tsv(const std::string& content,
                                                    const std::string& what) {
  std::map<std::size_t, std::string> by_index;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tsv(line);
    if (fields.size() != 2)
      throw std::runtime_error(what + ": line " + std::to_string(lineno) + ": expected 2 fields");
    std::size_t idx = 0;
    try {
      idx = std::stoul(std::string(fields[0]));
    } catch (const std::exception&) {
      throw std::runtime_error(what + ": line " + std::to_string(lineno) + ": bad index");
    }
    if (!by_index.emplace(idx, std::string(fields[1])).second)
      throw std::runtime_error(what + ": duplicate index " + std::to_string(idx));
  }
  std::vector<std::string> labels;
  labels.reserve(by_index.size());
  for (const auto& [idx, label] : by_index) {
    if (idx != labels.size()) throw std::runtime_error(what + ": indices are not dense");
    labels.push_back(label);
  }
  return labels;
}

}  // namespace detail

inline void export_network(const BiLayerNetwork& net, const std::string& dir,
                           const ArtifactHeader* header = nullptr) {
  write_file_atomic(dir + "/authors.tsv", detail::label_map_tsv(net.author_labels(), header));
  write_file_atomic(dir + "/topics.tsv", detail::label_map_tsv(net.topic_labels(), header));
  write_file_atomic(dir + "/aa.tsv", detail::edge_list_tsv(net.aa_edges(), header));
  write_file_atomic(dir + "/tt.tsv", detail::edge_list_tsv(net.tt_edges(), header));
  write_file_atomic(dir + "/at.tsv", detail::edge_list_tsv(net.at_edges(), header));
}

inline BiLayerNetwork import_network(const std::string& dir) {
  auto authors = detail::parse_label_map_tsv(read_file(dir + "/authors.tsv"), "authors.tsv");
  auto topics = detail::parse_label_map_tsv(read_file(dir + "/topics.tsv"), "topics.tsv");
  auto aa = detail::parse_edge_list_tsv(read_file(dir + "/aa.tsv"), "aa.tsv");
  auto tt = detail::parse_edge_list_tsv(read_file(dir + "/tt.tsv"), "tt.tsv");
  auto at = detail::parse_edge_list_tsv(read_file(dir + "/at.tsv"), "at.tsv");
  bool semantic = false;
  for (const auto& e : tt)
    if (std::floor(e.w) != e.w) { semantic = true; break; }
  return BiLayerNetwork::from_edges(std::move(authors), std::move(topics), aa, tt, at, semantic);
}

}  // namespace bilayer
