#pragma once
// Built-in sanity suite: replays the two hand-traced fixtures against their
// known scores and checks the resource-conservation identities on a batch of
// seeded random networks. Meant for `selfcheck` in the CLI and for quick
// confidence after a build; the full test suite is separate.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bilayer/diffusion.hpp"
#include "bilayer/network.hpp"
#include "bilayer/synth.hpp"

namespace bilayer {

struct SelfCheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckResult {
  std::vector<SelfCheckItem> items;
  bool all_passed() const {
    for (const auto& item : items)
      if (!item.passed) return false;
    return true;
  }
};

namespace detail {

inline double vec_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Empty string means the identities hold for this target.
inline std::string conservation_violation(const BiLayerNetwork& net, NodeIndex target,
                                          double r_init, double tol) {
  ResourceState st = diffuse(net, target, r_init);
  std::ostringstream oss;

  const double s1 = vec_sum(st.topic_direct);
  const double s1_expect = net.at().degree(target) > 0 ? r_init : 0.0;
  if (std::abs(s1 - s1_expect) > tol) {
    oss << "direct topic mass " << s1 << " != " << s1_expect;
    return oss.str();
  }

  const double s2 = vec_sum(st.coauthor);
  const double s2_expect = net.aa().degree(target) > 0 ? r_init : 0.0;
  if (std::abs(s2 - s2_expect) > tol) {
    oss << "co-author mass " << s2 << " != " << s2_expect;
    return oss.str();
  }

  double s3_expect = 0.0;
  for (NodeIndex j = 0; j < net.topic_count(); ++j)
    if (st.topic_direct[j] > 0.0 && net.tt().degree(j) > 0) s3_expect += st.topic_direct[j];
  const double s3 = vec_sum(st.topic_via_topics);
  if (std::abs(s3 - s3_expect) > tol) {
    oss << "co-topic spread mass " << s3 << " != " << s3_expect;
    return oss.str();
  }

  double s4_expect = 0.0;
  for (NodeIndex c = 0; c < net.author_count(); ++c)
    if (st.coauthor[c] > 0.0 && net.at().degree(c) > 0) s4_expect += st.coauthor[c];
  const double s4 = vec_sum(st.topic_via_authors);
  if (std::abs(s4 - s4_expect) > tol) {
    oss << "co-author spread mass " << s4 << " != " << s4_expect;
    return oss.str();
  }

  double final_sum = 0.0;
  for (const auto& e : finalize(net, target, st.topic_via_topics, st.topic_via_authors).entries)
    final_sum += e.score;
  if (final_sum > 2.0 * r_init + tol) {
    oss << "final scores sum " << final_sum << " exceeds " << 2.0 * r_init;
    return oss.str();
  }
  return {};
}

inline bool scores_match(const RecommendationList& got,
                         const std::vector<std::pair<std::string, double>>& want, double tol,
                         std::string& detail) {
  if (got.entries.size() != want.size()) {
    detail = "expected " + std::to_string(want.size()) + " entries, got " +
             std::to_string(got.entries.size());
    return false;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (got.entries[i].topic != want[i].first ||
        std::abs(got.entries[i].score - want[i].second) > tol) {
      std::ostringstream oss;
      oss << "entry " << i << ": expected (" << want[i].first << ", " << want[i].second
          << "), got (" << got.entries[i].topic << ", " << got.entries[i].score << ")";
      detail = oss.str();
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline SelfCheckResult run_selfcheck(std::size_t random_networks = 25,
                                     std::uint64_t base_seed = 90210) {
  SelfCheckResult result;

  {
    SelfCheckItem item;
    item.name = "trace fixture 1";
    BiLayerNetwork net = build_network(make_toy1());
    RecommendationList rec = recommend(net, std::string_view("a"));
    item.passed = detail::scores_match(rec, {{"T2", 0.75}, {"T3", 0.75}}, 1e-12, item.detail);
    result.items.push_back(std::move(item));
  }
  {
    SelfCheckItem item;
    item.name = "trace fixture 2";
    BiLayerNetwork net = build_network(make_toy2());
    RecommendationList rec = recommend(net, std::string_view("a"));
    item.passed = detail::scores_match(rec, {{"T2", 1.0}, {"T3", 0.5}}, 1e-12, item.detail);
    result.items.push_back(std::move(item));
  }
  {
    SelfCheckItem item;
    item.name = "resource conservation";
    item.passed = true;
    for (std::size_t i = 0; i < random_networks && item.passed; ++i) {
      RandomNetworkConfig cfg;
      cfg.authors = 12 + (i % 20);
      cfg.topics = 10 + (i % 25);
      cfg.integer_weights = (i % 2 == 0);
      BiLayerNetwork net = random_network(base_seed + i, cfg);
      for (NodeIndex a = 0; a < net.author_count(); ++a) {
        std::string why = detail::conservation_violation(net, a, 1.0, 1e-9);
        if (!why.empty()) {
          item.passed = false;
          item.detail = "seed " + std::to_string(base_seed + i) + ", author " +
                        std::to_string(a) + ": " + why;
          break;
        }
      }
    }
    result.items.push_back(std::move(item));
  }
  return result;
}

}  // namespace bilayer
