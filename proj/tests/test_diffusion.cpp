#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "bilayer/diffusion.hpp"
#include "bilayer/synth.hpp"
#include "support/oracle.hpp"

using namespace bilayer;
namespace fs = std::filesystem;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("toy trace, step by step") {
  BiLayerNetwork net = build_network(make_toy1());
  const NodeIndex a = *net.find_author("a");
  const NodeIndex b = *net.find_author("b");

  auto direct = step1_author_to_topics(net, a);
  CHECK(direct[0] == 1.0);  // T1 is A's only topic
  CHECK(direct[1] == 0.0);
  CHECK(direct[2] == 0.0);

  auto coauth = step2_author_to_coauthors(net, a);
  CHECK(coauth[b] == 1.0);  // fresh copy, independent of step 1
  CHECK(coauth[a] == 0.0);

  auto via_topics = step3_topic_to_topics(net, direct);
  CHECK(via_topics[1] == Catch::Approx(0.25).margin(1e-15));
  CHECK(via_topics[2] == Catch::Approx(0.75).margin(1e-15));
  CHECK(via_topics[0] == 0.0);

  auto via_authors = step4_coauthors_to_topics(net, coauth);
  CHECK(via_authors[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(via_authors[1] == Catch::Approx(0.5).margin(1e-15));
  CHECK(via_authors[2] == 0.0);

  auto list = finalize(net, a, via_topics, via_authors);
  REQUIRE(list.entries.size() == 2);
  CHECK(list.target == "a");
  // Equal scores; index order breaks the tie. T1 is excluded despite holding
  // resource, because A already links to it.
  CHECK(list.entries[0].topic == "T2");
  CHECK(list.entries[0].score == Catch::Approx(0.75).margin(1e-12));
  CHECK(list.entries[1].topic == "T3");
  CHECK(list.entries[1].score == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("second toy fixture ranks by score") {
  BiLayerNetwork net = build_network(make_toy2());
  auto list = recommend(net, std::string_view("a"));
  REQUIRE(list.entries.size() == 2);
  CHECK(list.entries[0].topic == "T2");
  CHECK(list.entries[0].score == Catch::Approx(1.0).margin(1e-12));
  CHECK(list.entries[1].topic == "T3");
  CHECK(list.entries[1].score == Catch::Approx(0.5).margin(1e-12));

  SECTION("truncation keeps the head of the ranking") {
    auto top1 = recommend(net, std::string_view("a"), 1);
    REQUIRE(top1.entries.size() == 1);
    CHECK(top1.entries[0].topic == "T2");
    CHECK(recommend(net, std::string_view("a"), 0).entries.empty());
  }
}

TEST_CASE("proportional splits follow edge weight ratios") {
  std::vector<std::string> authors{"x", "y", "z"};
  std::vector<std::string> topics{"P", "Q", "R"};
  BiLayerNetwork net = BiLayerNetwork::from_edges(
      authors, topics, {{0, 1, 3.0}, {0, 2, 1.0}},
      {}, {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 2.0}});

  auto direct = step1_author_to_topics(net, 0);
  CHECK(direct[0] == Catch::Approx(0.25));
  CHECK(direct[1] == Catch::Approx(0.25));
  CHECK(direct[2] == Catch::Approx(0.5));

  auto coauth = step2_author_to_coauthors(net, 0);
  CHECK(coauth[1] == Catch::Approx(0.75));
  CHECK(coauth[2] == Catch::Approx(0.25));
}

TEST_CASE("isolated and degenerate nodes give empty maps") {
  std::vector<std::string> authors{"x", "y"};
  std::vector<std::string> topics{"P"};
  BiLayerNetwork net =
      BiLayerNetwork::from_edges(authors, topics, {}, {}, {{1, 0, 1.0}});

  CHECK(sum(step1_author_to_topics(net, 0)) == 0.0);
  CHECK(sum(step2_author_to_coauthors(net, 0)) == 0.0);
  CHECK(recommend(net, NodeIndex{0}).entries.empty());

  auto zeros = std::vector<double>(net.topic_count(), 0.0);
  CHECK(sum(step3_topic_to_topics(net, zeros)) == 0.0);
  auto azeros = std::vector<double>(net.author_count(), 0.0);
  CHECK(sum(step4_coauthors_to_topics(net, azeros)) == 0.0);
}

TEST_CASE("input validation") {
  BiLayerNetwork net = build_network(make_toy1());
  CHECK_THROWS(step1_author_to_topics(net, 0, 0.0));
  CHECK_THROWS(step1_author_to_topics(net, 0, -1.0));
  CHECK_THROWS(step3_topic_to_topics(net, std::vector<double>(99, 0.0)));
  CHECK_THROWS(step4_coauthors_to_topics(net, std::vector<double>(99, 0.0)));
  CHECK_THROWS_WITH(recommend(net, std::string_view("nobody")),
                    Catch::Matchers::ContainsSubstring("nobody"));
}

TEST_CASE("resource conservation on random networks") {
  for (std::uint64_t seed = 500; seed < 550; ++seed) {
    RandomNetworkConfig cfg;
    cfg.authors = 8 + seed % 30;
    cfg.topics = 8 + (seed * 7) % 30;
    cfg.integer_weights = seed % 2 == 0;
    BiLayerNetwork net = random_network(seed, cfg);
    for (NodeIndex a = 0; a < net.author_count(); ++a) {
      ResourceState st = diffuse(net, a, 1.0);

      const double expect1 = net.at().degree(a) > 0 ? 1.0 : 0.0;
      REQUIRE_THAT(sum(st.topic_direct), Catch::Matchers::WithinAbs(expect1, 1e-9));
      const double expect2 = net.aa().degree(a) > 0 ? 1.0 : 0.0;
      REQUIRE_THAT(sum(st.coauthor), Catch::Matchers::WithinAbs(expect2, 1e-9));

      double expect3 = 0.0;
      for (NodeIndex j = 0; j < net.topic_count(); ++j)
        if (st.topic_direct[j] > 0.0 && net.tt().degree(j) > 0) expect3 += st.topic_direct[j];
      REQUIRE_THAT(sum(st.topic_via_topics), Catch::Matchers::WithinAbs(expect3, 1e-9));

      double expect4 = 0.0;
      for (NodeIndex c = 0; c < net.author_count(); ++c)
        if (st.coauthor[c] > 0.0 && net.at().degree(c) > 0) expect4 += st.coauthor[c];
      REQUIRE_THAT(sum(st.topic_via_authors), Catch::Matchers::WithinAbs(expect4, 1e-9));

      double final_sum = 0.0;
      for (const auto& e : finalize(net, a, st.topic_via_topics, st.topic_via_authors).entries)
        final_sum += e.score;
      REQUIRE(final_sum <= 2.0 + 1e-9);
    }
  }
}

TEST_CASE("scores scale linearly in the seed resource, ranking fixed") {
  BiLayerNetwork net = random_network(777, {});
  for (NodeIndex a = 0; a < net.author_count(); ++a) {
    auto base = recommend(net, a, 1000, 1.0);
    for (double c : {0.5, 3.0, 12.5}) {
      auto scaled = recommend(net, a, 1000, c);
      REQUIRE(scaled.entries.size() == base.entries.size());
      for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(scaled.entries[i].topic_index == base.entries[i].topic_index);
        REQUIRE_THAT(scaled.entries[i].score,
                     Catch::Matchers::WithinAbs(c * base.entries[i].score, 1e-12));
      }
    }
  }
}

TEST_CASE("global weight scaling leaves scores untouched") {
  BiLayerNetwork net = random_network(4242, {});
  for (double c : {0.5, 3.0, 1000.0}) {
    auto scale = [c](std::vector<WeightedEdge> edges) {
      for (auto& e : edges) e.w *= c;
      return edges;
    };
    BiLayerNetwork scaled = BiLayerNetwork::from_edges(
        net.author_labels(), net.topic_labels(), scale(net.aa_edges()),
        scale(net.tt_edges()), scale(net.at_edges()));
    for (NodeIndex a = 0; a < net.author_count(); ++a) {
      auto base = recommend(net, a, 1000);
      auto got = recommend(scaled, a, 1000);
      REQUIRE(got.entries.size() == base.entries.size());
      for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(got.entries[i].topic_index == base.entries[i].topic_index);
        REQUIRE_THAT(got.entries[i].score,
                     Catch::Matchers::WithinAbs(base.entries[i].score, 1e-12));
      }
    }
  }
}

TEST_CASE("sparse spread matches the dense matrix oracle") {
  for (std::uint64_t seed = 9000; seed < 9020; ++seed) {
    RandomNetworkConfig cfg;
    cfg.authors = 10 + seed % 41;
    cfg.topics = 10 + (seed * 3) % 41;
    cfg.integer_weights = seed % 2 == 0;
    BiLayerNetwork net = random_network(seed, cfg);
    for (NodeIndex a = 0; a < net.author_count(); ++a) {
      auto oracle = testsupport::dense_diffusion_scores(net, a);
      ResourceState st = diffuse(net, a);
      for (NodeIndex k = 0; k < net.topic_count(); ++k) {
        REQUIRE_THAT(st.topic_via_topics[k] + st.topic_via_authors[k],
                     Catch::Matchers::WithinAbs(oracle[k], 1e-9));
      }
    }
  }
}

TEST_CASE("batch scoring is order-preserving and worker-count invariant") {
  BiLayerNetwork net = random_network(31337, {});
  std::vector<std::string> targets;
  for (NodeIndex a = 0; a < net.author_count(); ++a)
    targets.push_back(net.author_label(net.author_count() - 1 - a));  // deliberately reversed

  auto serial = recommend_all(net, targets, 50, 1);
  auto parallel = recommend_all(net, targets, 50, 8);
  REQUIRE(serial.size() == targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    CHECK(serial[i].target == targets[i]);
    REQUIRE(parallel[i].entries.size() == serial[i].entries.size());
    for (std::size_t j = 0; j < serial[i].entries.size(); ++j) {
      CHECK(parallel[i].entries[j].topic_index == serial[i].entries[j].topic_index);
      CHECK(parallel[i].entries[j].score == serial[i].entries[j].score);  // bit-identical
    }
  }
  CHECK(recommendations_to_jsonl(parallel) == recommendations_to_jsonl(serial));

  CHECK_THROWS_WITH(recommend_all(net, {"a0", "ghost"}, 10, 2),
                    Catch::Matchers::ContainsSubstring("ghost"));
}

TEST_CASE("recommendation lists survive a serialisation round trip") {
  BiLayerNetwork net = build_network(make_toy2());
  auto lists = recommend_all(net, {"a", "b"}, 100, 1);
  const std::string path =
      (fs::temp_directory_path() / "bilayer_recs_roundtrip.jsonl").string();
  ArtifactHeader header{"00000000000000ff", 13};
  write_recommendations(lists, path, &header);

  auto back = read_recommendations(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].target == "a");
  REQUIRE(back[0].entries.size() == 2);
  CHECK(back[0].entries[0].topic == "T2");
  CHECK(back[0].entries[0].score == 1.0);
  CHECK(recommendations_to_jsonl(back) == recommendations_to_jsonl(lists));

  const std::string raw = read_file(path);
  CHECK(raw.rfind("{\"config_hash\":\"00000000000000ff\",\"seed\":13}\n", 0) == 0);
  CHECK(raw.find("\"rank\":1") != std::string::npos);
  fs::remove(path);
}
