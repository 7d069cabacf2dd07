#pragma once
// Comparison scorers for candidate author-topic links. The common-neighbor
// family (Jaccard, Adamic-Adar, preferential attachment, resource allocation
// and its weighted form) treats the three edge sets as one undirected
// heterogeneous graph, so a candidate's common neighbors are the authors
// adjacent to both endpoints plus the topics adjacent to both endpoints.
// The content scorer walks author->topic->topic, the co-author filter walks
// author->co-author->topic. Diffusion and its semantic variant reuse the
// four-hop spread and read the combined resource at the candidate topic.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bilayer/diffusion.hpp"
#include "bilayer/io.hpp"
#include "bilayer/network.hpp"
#include "bilayer/parallel.hpp"

namespace bilayer {

struct CandidatePair {
  NodeIndex author = 0;
  NodeIndex topic = 0;
};

enum class Method { Diffusion, Jc, Aa, Pa, Ra, Wra, Content, Cf, Semantic };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Diffusion: return "diffusion";
    case Method::Jc: return "jc";
    case Method::Aa: return "aa";
    case Method::Pa: return "pa";
    case Method::Ra: return "ra";
    case Method::Wra: return "wra";
    case Method::Content: return "content";
    case Method::Cf: return "cf";
    case Method::Semantic: return "semantic";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (Method m : {Method::Diffusion, Method::Jc, Method::Aa, Method::Pa, Method::Ra,
                   Method::Wra, Method::Content, Method::Cf, Method::Semantic})
    if (name == method_name(m)) return m;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

namespace detail {

// Union-graph degree and strength. Layer memberships are disjoint, so the
// totals are plain sums over the node's two incident edge sets.
inline std::size_t union_degree_author(const BiLayerNetwork& net, NodeIndex a) {
  return net.aa().degree(a) + net.at().degree(a);
}
inline std::size_t union_degree_topic(const BiLayerNetwork& net, NodeIndex t) {
  return net.tt().degree(t) + net.ta().degree(t);
}
inline double union_strength_author(const BiLayerNetwork& net, NodeIndex a) {
  return net.aa().strength(a) + net.at().strength(a);
}
inline double union_strength_topic(const BiLayerNetwork& net, NodeIndex t) {
  return net.tt().strength(t) + net.ta().strength(t);
}

// Calls fn(z, w_author_side, w_topic_side) for every common neighbor of the
// pair, authors first then topics, ascending index within each kind. Both
// neighbor lists are sorted, so a linear merge finds the intersections.
template <typename AuthorFn, typename TopicFn>
void for_each_common_neighbor(const BiLayerNetwork& net, CandidatePair pair, AuthorFn&& on_author,
                              TopicFn&& on_topic) {
  {
    const Adjacency& aa = net.aa();
    const Adjacency& ta = net.ta();
    const NodeIndex* p = aa.neighbors_begin(pair.author);
    const NodeIndex* pe = aa.neighbors_end(pair.author);
    const NodeIndex* q = ta.neighbors_begin(pair.topic);
    const NodeIndex* qe = ta.neighbors_end(pair.topic);
    const double* pw = aa.weights_begin(pair.author);
    const double* qw = ta.weights_begin(pair.topic);
    while (p != pe && q != qe) {
      if (*p < *q) {
        ++p; ++pw;
      } else if (*q < *p) {
        ++q; ++qw;
      } else {
        on_author(*p, *pw, *qw);
        ++p; ++pw; ++q; ++qw;
      }
    }
  }
  {
    const Adjacency& at = net.at();
    const Adjacency& tt = net.tt();
    const NodeIndex* p = at.neighbors_begin(pair.author);
    const NodeIndex* pe = at.neighbors_end(pair.author);
    const NodeIndex* q = tt.neighbors_begin(pair.topic);
    const NodeIndex* qe = tt.neighbors_end(pair.topic);
    const double* pw = at.weights_begin(pair.author);
    const double* qw = tt.weights_begin(pair.topic);
    while (p != pe && q != qe) {
      if (*p < *q) {
        ++p; ++pw;
      } else if (*q < *p) {
        ++q; ++qw;
      } else {
        on_topic(*p, *pw, *qw);
        ++p; ++pw; ++q; ++qw;
      }
    }
  }
}

inline std::size_t common_neighbor_count(const BiLayerNetwork& net, CandidatePair pair) {
  std::size_t n = 0;
  for_each_common_neighbor(
      net, pair, [&](NodeIndex, double, double) { ++n; }, [&](NodeIndex, double, double) { ++n; });
  return n;
}

}  // namespace detail

inline double score_jc(const BiLayerNetwork& net, CandidatePair pair) {
  const std::size_t cn = detail::common_neighbor_count(net, pair);
  const std::size_t uni = detail::union_degree_author(net, pair.author) +
                          detail::union_degree_topic(net, pair.topic) - cn;
  if (uni == 0) return 0.0;
  return static_cast<double>(cn) / static_cast<double>(uni);
}

inline double score_aa(const BiLayerNetwork& net, CandidatePair pair) {
  double s = 0.0;
  detail::for_each_common_neighbor(
      net, pair,
      [&](NodeIndex z, double, double) {
        const std::size_t d = detail::union_degree_author(net, z);
        if (d > 1) s += 1.0 / std::log(static_cast<double>(d));
      },
      [&](NodeIndex z, double, double) {
        const std::size_t d = detail::union_degree_topic(net, z);
        if (d > 1) s += 1.0 / std::log(static_cast<double>(d));
      });
  return s;
}

inline double score_pa(const BiLayerNetwork& net, CandidatePair pair) {
  return static_cast<double>(detail::union_degree_author(net, pair.author)) *
         static_cast<double>(detail::union_degree_topic(net, pair.topic));
}

inline double score_ra(const BiLayerNetwork& net, CandidatePair pair) {
  double s = 0.0;
  detail::for_each_common_neighbor(
      net, pair,
      [&](NodeIndex z, double, double) {
        s += 1.0 / static_cast<double>(detail::union_degree_author(net, z));
      },
      [&](NodeIndex z, double, double) {
        s += 1.0 / static_cast<double>(detail::union_degree_topic(net, z));
      });
  return s;
}

// Each common neighbor contributes the product of its two incident edge
// weights over its total strength.
inline double score_weighted_ra(const BiLayerNetwork& net, CandidatePair pair) {
  double s = 0.0;
  detail::for_each_common_neighbor(
      net, pair,
      [&](NodeIndex z, double wa, double wt) {
        s += wa * wt / detail::union_strength_author(net, z);
      },
      [&](NodeIndex z, double wa, double wt) {
        s += wa * wt / detail::union_strength_topic(net, z);
      });
  return s;
}

// Affinity of the candidate topic to the author's existing topics, summed
// over co-topic weights.
inline double score_content(const BiLayerNetwork& net, CandidatePair pair) {
  double s = 0.0;
  const Adjacency& at = net.at();
  const NodeIndex* n = at.neighbors_begin(pair.author);
  for (std::size_t k = 0; k < at.degree(pair.author); ++k)
    s += net.phi(n[k], pair.topic);
  return s;
}

// Co-author filtering: co-authors vote for their own topics, weighted by the
// tie to the target author.
inline double score_cf(const BiLayerNetwork& net, CandidatePair pair) {
  double s = 0.0;
  const Adjacency& aa = net.aa();
  const NodeIndex* n = aa.neighbors_begin(pair.author);
  const double* w = aa.weights_begin(pair.author);
  for (std::size_t k = 0; k < aa.degree(pair.author); ++k)
    s += w[k] * net.mu(n[k], pair.topic);
  return s;
}

// Same algorithm as recommend, run on a network whose co-topic layer carries
// cosine similarities.
inline RecommendationList score_semantic_diffusion(const BiLayerNetwork& net_semantic,
                                                   NodeIndex target, std::size_t top_n = 100) {
  return recommend(net_semantic, target, top_n);
}

// Scores aligned with the input pairs. Diffusion-family methods share one
// spread per distinct author; pairs for the same author should be contiguous
// (candidate enumeration emits them that way) or the spread is recomputed.
inline std::vector<double> score_pairs(const BiLayerNetwork& net, Method method,
                                       const std::vector<CandidatePair>& pairs,
                                       std::size_t workers = 1) {
  std::vector<double> scores(pairs.size(), 0.0);
  if (method == Method::Diffusion || method == Method::Semantic) {
    parallel_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
      bool have_state = false;
      NodeIndex cached_author = 0;
      ResourceState st;
      for (std::size_t i = begin; i < end; ++i) {
        const CandidatePair p = pairs[i];
        if (!have_state || cached_author != p.author) {
          st = diffuse(net, p.author);
          cached_author = p.author;
          have_state = true;
        }
        scores[i] = st.topic_via_topics[p.topic] + st.topic_via_authors[p.topic];
      }
    });
    return scores;
  }

  double (*scorer)(const BiLayerNetwork&, CandidatePair) = nullptr;
  switch (method) {
    case Method::Jc: scorer = score_jc; break;
    case Method::Aa: scorer = score_aa; break;
    case Method::Pa: scorer = score_pa; break;
    case Method::Ra: scorer = score_ra; break;
    case Method::Wra: scorer = score_weighted_ra; break;
    case Method::Content: scorer = score_content; break;
    case Method::Cf: scorer = score_cf; break;
    default: throw std::invalid_argument("score_pairs: unhandled method");
  }
  parallel_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) scores[i] = scorer(net, pairs[i]);
  });
  return scores;
}

inline std::string scores_to_tsv(const BiLayerNetwork& net,
                                 const std::vector<CandidatePair>& pairs,
                                 const std::vector<double>& scores,
                                 const ArtifactHeader* header = nullptr) {
  if (pairs.size() != scores.size())
    throw std::invalid_argument("scores_to_tsv: size mismatch");
  std::string out;
  if (header) out += tsv_comment_header(*header);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += net.author_label(pairs[i].author);
    out += '\t';
    out += net.topic_label(pairs[i].topic);
    out += '\t';
    out += format_sig12(scores[i]);
    out += '\n';
  }
  return out;
}

}  // namespace bilayer
