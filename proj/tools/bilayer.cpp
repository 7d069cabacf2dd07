// Command-line driver for the bi-layer network toolkit. Subcommands cover
// the full pipeline: ingest records, build the train/test networks, emit
// per-author recommendation lists, benchmark scorers with ROC/AUC over the
// candidate edges or a sampled probe, and roll recommendations up to
// community digests. Every artifact carries a config fingerprint and the
// seed, and outputs are written via temp-file-then-rename.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilayer/bilayer.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::string out_dir = "out";
  std::size_t workers = 1;
  std::uint64_t seed = 42;
};

using ConfigMap = std::map<std::string, std::string>;

// Worker count and output paths stay out of the fingerprint: they change how
// fast or where an artifact lands, never its bytes.
bilayer::ArtifactHeader make_header(const GlobalOpts& g, const ConfigMap& cfg) {
  std::string blob;
  for (const auto& [key, value] : cfg) {
    blob += key;
    blob += '=';
    blob += value;
    blob += '\n';
  }
  blob += "seed=" + std::to_string(g.seed) + "\n";
  return {bilayer::to_hex(bilayer::fnv1a64(blob)), g.seed};
}

std::vector<bilayer::BiblioRecord> load_records(const std::string& input,
                                                const std::string& format) {
  bilayer::ParseReport report;
  auto records = bilayer::parse_corpus(input, bilayer::parse_record_format(format), report);
  std::cerr << "ingest: " << report.parsed << " records, " << report.skipped << " skipped, "
            << report.duplicate_ids << " duplicate ids\n";
  if (records.empty()) throw std::runtime_error("no usable records in " + input);
  return records;
}

bilayer::CorpusSplit load_split(const std::string& input, const std::string& format,
                                int cutoff_year) {
  auto split = bilayer::split_by_year(load_records(input, format), cutoff_year);
  if (split.train.empty()) throw std::runtime_error("no records at or before the cutoff year");
  if (split.test.empty()) throw std::runtime_error("no records after the cutoff year");
  return split;
}

bilayer::SemanticLayerConfig load_vectors(const std::string& path, double floor) {
  bilayer::SemanticLayerConfig cfg;
  cfg.similarity_floor = floor;
  std::istringstream in(bilayer::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = bilayer::split_tsv(line);
    if (fields.size() < 2)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected label<TAB>value...");
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        vec.push_back(std::stod(std::string(fields[i])));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad number");
      }
    }
    if (!cfg.vectors.emplace(std::string(fields[0]), std::move(vec)).second)
      throw std::runtime_error(path + ": duplicate topic label at line " +
                               std::to_string(lineno));
  }
  if (cfg.vectors.empty()) throw std::runtime_error(path + ": no vectors");
  return cfg;
}

std::vector<std::string> load_target_list(const std::string& path) {
  std::vector<std::string> targets;
  std::istringstream in(bilayer::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    targets.push_back(line);
  }
  if (targets.empty()) throw std::runtime_error(path + ": no target identities");
  return targets;
}

nlohmann::ordered_json stats_json(const bilayer::NetworkStats& s) {
  nlohmann::ordered_json j;
  j["author_nodes"] = s.author_nodes;
  j["aa_edges"] = s.aa_edges;
  j["topic_nodes"] = s.topic_nodes;
  j["tt_edges"] = s.tt_edges;
  j["at_edges"] = s.at_edges;
  j["at_author_participants"] = s.at_author_participants;
  j["at_topic_participants"] = s.at_topic_participants;
  j["at_participants"] = s.at_participants;
  j["papers"] = s.papers;
  j["edge_sum"] = s.edge_sum;
  return j;
}

std::vector<bilayer::Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<bilayer::Method> methods;
  for (const auto& name : names) methods.push_back(bilayer::parse_method(name));
  if (methods.empty()) throw std::runtime_error("no methods requested");
  return methods;
}

// ---- subcommand bodies -----------------------------------------------------

struct IngestOpts {
  std::string input;
  std::string format = "jsonl";
  int cutoff_year = 0;
  bool have_cutoff = false;
};

void run_ingest(const GlobalOpts& g, const IngestOpts& o) {
  bilayer::ParseReport report;
  auto records =
      bilayer::parse_corpus(o.input, bilayer::parse_record_format(o.format), report);
  ConfigMap cfg{{"command", "ingest"}, {"input", o.input}, {"format", o.format}};
  if (o.have_cutoff) cfg["cutoff_year"] = std::to_string(o.cutoff_year);
  auto header = make_header(g, cfg);

  nlohmann::ordered_json j;
  j["config_hash"] = header.config_hash;
  j["seed"] = header.seed;
  j["parsed"] = report.parsed;
  j["skipped"] = report.skipped;
  j["duplicate_ids"] = report.duplicate_ids;
  j["dropped_authors"] = report.dropped_authors;
  j["dropped_topics"] = report.dropped_topics;
  if (o.have_cutoff) {
    auto split = bilayer::split_by_year(std::move(records), o.cutoff_year);
    j["train_records"] = split.train.size();
    j["test_records"] = split.test.size();
    std::cout << "ingest: " << report.parsed << " parsed, " << report.skipped << " skipped, "
              << split.train.size() << " train / " << split.test.size() << " test at cutoff "
              << o.cutoff_year << "\n";
  } else {
    std::cout << "ingest: " << report.parsed << " parsed, " << report.skipped << " skipped\n";
  }
  fs::create_directories(g.out_dir);
  bilayer::write_file_atomic(g.out_dir + "/ingest.json", j.dump(2) + "\n");
}

struct BuildOpts {
  std::string input;
  std::string format = "jsonl";
  int cutoff_year = 0;
  bool have_cutoff = false;
};

void run_build(const GlobalOpts& g, const BuildOpts& o) {
  ConfigMap cfg{{"command", "build"}, {"input", o.input}, {"format", o.format}};
  if (o.have_cutoff) cfg["cutoff_year"] = std::to_string(o.cutoff_year);
  auto header = make_header(g, cfg);
  fs::create_directories(g.out_dir);

  nlohmann::ordered_json stats;
  stats["config_hash"] = header.config_hash;
  stats["seed"] = header.seed;
  if (o.have_cutoff) {
    auto split = load_split(o.input, o.format, o.cutoff_year);
    auto train = bilayer::build_network(split.train);
    auto test = bilayer::build_network(split.test);
    fs::create_directories(g.out_dir + "/train");
    fs::create_directories(g.out_dir + "/test");
    bilayer::export_network(train, g.out_dir + "/train", &header);
    bilayer::export_network(test, g.out_dir + "/test", &header);
    stats["train"] = stats_json(bilayer::network_stats(train, split.train));
    stats["test"] = stats_json(bilayer::network_stats(test, split.test));
    std::cout << "build: train " << train.author_count() << " authors / " << train.topic_count()
              << " topics, test " << test.author_count() << " authors / " << test.topic_count()
              << " topics\n";
  } else {
    auto records = load_records(o.input, o.format);
    auto net = bilayer::build_network(records);
    fs::create_directories(g.out_dir + "/network");
    bilayer::export_network(net, g.out_dir + "/network", &header);
    stats["network"] = stats_json(bilayer::network_stats(net, records));
    std::cout << "build: " << net.author_count() << " authors, " << net.topic_count()
              << " topics, " << net.at_edge_count() << " cross edges\n";
  }
  bilayer::write_file_atomic(g.out_dir + "/stats.json", stats.dump(2) + "\n");
}

struct RecommendOpts {
  std::string input;
  std::string format = "jsonl";
  std::string network_dir;
  int cutoff_year = 0;
  bool have_cutoff = false;
  std::string method = "diffusion";
  std::size_t top_n = 100;
  double r_init = 1.0;
  std::string targets_file;
  std::string vectors_file;
  double similarity_floor = 0.0;
};

void run_recommend(const GlobalOpts& g, const RecommendOpts& o) {
  if (o.method != "diffusion" && o.method != "semantic")
    throw std::runtime_error("recommend supports methods diffusion and semantic");
  if (o.method == "semantic" && o.vectors_file.empty())
    throw std::runtime_error("semantic recommendation needs --vectors");

  bilayer::BiLayerNetwork net = [&] {
    if (!o.network_dir.empty()) return bilayer::import_network(o.network_dir);
    if (o.input.empty()) throw std::runtime_error("recommend needs --input or --network");
    if (o.have_cutoff) return bilayer::build_network(load_split(o.input, o.format, o.cutoff_year).train);
    return bilayer::build_network(load_records(o.input, o.format));
  }();
  if (o.method == "semantic")
    net = bilayer::build_semantic_layer(net, load_vectors(o.vectors_file, o.similarity_floor));

  std::vector<std::string> targets =
      o.targets_file.empty() ? net.author_labels() : load_target_list(o.targets_file);

  ConfigMap cfg{{"command", "recommend"},
                {"method", o.method},
                {"top_n", std::to_string(o.top_n)},
                {"r_init", bilayer::format_sig12(o.r_init)}};
  if (!o.network_dir.empty()) cfg["network"] = o.network_dir;
  if (!o.input.empty()) cfg["input"] = o.input;
  if (o.have_cutoff) cfg["cutoff_year"] = std::to_string(o.cutoff_year);
  if (!o.targets_file.empty()) cfg["targets"] = o.targets_file;
  if (!o.vectors_file.empty()) {
    cfg["vectors"] = o.vectors_file;
    cfg["similarity_floor"] = bilayer::format_sig12(o.similarity_floor);
  }
  auto header = make_header(g, cfg);

  auto lists = bilayer::recommend_all(net, targets, o.top_n, g.workers, o.r_init);
  fs::create_directories(g.out_dir);
  bilayer::write_recommendations(lists, g.out_dir + "/recommendations.jsonl", &header);
  std::cout << "recommend: " << lists.size() << " lists written (top " << o.top_n << ")\n";
}

struct EvaluateOpts {
  std::string input;
  std::string format = "jsonl";
  std::string train_network_dir;
  std::string test_network_dir;
  int cutoff_year = 0;
  bool have_cutoff = false;
  std::vector<std::string> methods{"diffusion", "jc", "aa", "pa", "ra", "wra", "content", "cf"};
  std::vector<std::size_t> top_k;
  std::string vectors_file;
  double similarity_floor = 0.0;
  bool export_scores = false;
};

std::pair<bilayer::BiLayerNetwork, bilayer::BiLayerNetwork> load_train_test(
    const EvaluateOpts& o) {
  if (!o.train_network_dir.empty() || !o.test_network_dir.empty()) {
    if (o.train_network_dir.empty() || o.test_network_dir.empty())
      throw std::runtime_error("pre-built evaluation needs both --train-network and --test-network");
    return {bilayer::import_network(o.train_network_dir),
            bilayer::import_network(o.test_network_dir)};
  }
  if (o.input.empty() || !o.have_cutoff)
    throw std::runtime_error("evaluation needs --input with --cutoff-year, or network dirs");
  auto split = load_split(o.input, o.format, o.cutoff_year);
  return {bilayer::build_network(split.train), bilayer::build_network(split.test)};
}

ConfigMap evaluate_cfg(const EvaluateOpts& o, const char* command) {
  ConfigMap cfg{{"command", command}};
  if (!o.input.empty()) cfg["input"] = o.input;
  if (o.have_cutoff) cfg["cutoff_year"] = std::to_string(o.cutoff_year);
  if (!o.train_network_dir.empty()) cfg["train_network"] = o.train_network_dir;
  if (!o.test_network_dir.empty()) cfg["test_network"] = o.test_network_dir;
  std::string methods;
  for (const auto& m : o.methods) {
    if (!methods.empty()) methods += ',';
    methods += m;
  }
  cfg["methods"] = methods;
  if (!o.vectors_file.empty()) {
    cfg["vectors"] = o.vectors_file;
    cfg["similarity_floor"] = bilayer::format_sig12(o.similarity_floor);
  }
  return cfg;
}

void run_evaluate(const GlobalOpts& g, const EvaluateOpts& o) {
  auto methods = parse_methods(o.methods);
  auto [train, test] = load_train_test(o);

  std::optional<bilayer::BiLayerNetwork> semantic_train;
  for (auto m : methods)
    if (m == bilayer::Method::Semantic) {
      if (o.vectors_file.empty()) throw std::runtime_error("semantic method needs --vectors");
      semantic_train =
          bilayer::build_semantic_layer(train, load_vectors(o.vectors_file, o.similarity_floor));
    }

  auto candidates = bilayer::enumerate_candidates(train, test);
  std::cerr << "evaluate: " << candidates.possible_pairs << " possible pairs, "
            << candidates.train_edges_in_overlap << " already linked, "
            << candidates.pairs.size() << " candidates\n";

  ConfigMap cfg = evaluate_cfg(o, "evaluate");
  if (!o.top_k.empty()) {
    std::string ks;
    for (auto k : o.top_k) {
      if (!ks.empty()) ks += ',';
      ks += std::to_string(k);
    }
    cfg["top_k"] = ks;
  }
  auto header = make_header(g, cfg);
  fs::create_directories(g.out_dir);

  std::vector<bilayer::NamedRocReport> reports;
  for (auto m : methods) {
    const bilayer::BiLayerNetwork& net =
        (m == bilayer::Method::Semantic) ? *semantic_train : train;
    auto scores = bilayer::score_pairs(net, m, candidates.pairs, g.workers);
    auto labeled = bilayer::label_candidates(candidates, train, test, scores);
    reports.push_back({bilayer::method_name(m), bilayer::roc_auc(labeled)});
    std::cout << "evaluate: " << bilayer::method_name(m)
              << " auc=" << bilayer::format_sig12(reports.back().report.auc) << "\n";
    for (auto k : o.top_k)
      reports.push_back({bilayer::method_name(m), bilayer::roc_auc(labeled, k)});
    if (o.export_scores) {
      bilayer::write_file_atomic(
          g.out_dir + "/scores-" + bilayer::method_name(m) + ".tsv",
          bilayer::scores_to_tsv(net, candidates.pairs, scores, &header));
    }
  }
  bilayer::export_report(reports, g.out_dir + "/report.csv", &header);
  std::cout << "evaluate: report.csv written (" << reports.size() << " report rows)\n";
}

struct ProbeOpts {
  EvaluateOpts base;
  std::size_t probe_size = 20000;
};

void run_probe(const GlobalOpts& g, const ProbeOpts& o) {
  auto methods = parse_methods(o.base.methods);
  auto [train, test] = load_train_test(o.base);

  std::optional<bilayer::BiLayerNetwork> semantic_train;
  for (auto m : methods)
    if (m == bilayer::Method::Semantic) {
      if (o.base.vectors_file.empty()) throw std::runtime_error("semantic method needs --vectors");
      semantic_train = bilayer::build_semantic_layer(
          train, load_vectors(o.base.vectors_file, o.base.similarity_floor));
    }

  auto probe = bilayer::make_probe(test, o.probe_size, g.seed);
  std::cerr << "probe: " << probe.positives.size() << " positives, " << probe.negatives.size()
            << " negatives\n";

  // Probe pairs live in testing-network index space; map them back onto the
  // training network and score unseen endpoints as 0.
  std::vector<std::optional<bilayer::NodeIndex>> a_map(test.author_count());
  std::vector<std::optional<bilayer::NodeIndex>> t_map(test.topic_count());
  for (bilayer::NodeIndex a = 0; a < test.author_count(); ++a)
    a_map[a] = train.find_author(test.author_label(a));
  for (bilayer::NodeIndex t = 0; t < test.topic_count(); ++t)
    t_map[t] = train.find_topic(test.topic_label(t));

  ConfigMap cfg = evaluate_cfg(o.base, "probe");
  cfg["probe_size"] = std::to_string(o.probe_size);
  auto header = make_header(g, cfg);
  fs::create_directories(g.out_dir);

  std::vector<bilayer::NamedRocReport> reports;
  for (auto m : methods) {
    const bilayer::BiLayerNetwork& net =
        (m == bilayer::Method::Semantic) ? *semantic_train : train;
    std::unordered_map<bilayer::NodeIndex, bilayer::ResourceState> diffusion_cache;
    auto score_fn = [&](bilayer::CandidatePair p) -> double {
      if (!a_map[p.author] || !t_map[p.topic]) return 0.0;
      const bilayer::CandidatePair mapped{*a_map[p.author], *t_map[p.topic]};
      if (m == bilayer::Method::Diffusion || m == bilayer::Method::Semantic) {
        auto it = diffusion_cache.find(mapped.author);
        if (it == diffusion_cache.end())
          it = diffusion_cache.emplace(mapped.author, bilayer::diffuse(net, mapped.author)).first;
        return it->second.topic_via_topics[mapped.topic] +
               it->second.topic_via_authors[mapped.topic];
      }
      std::vector<bilayer::CandidatePair> one{mapped};
      return bilayer::score_pairs(net, m, one).front();
    };
    reports.push_back({bilayer::method_name(m), bilayer::probe_auc(score_fn, probe)});
    std::cout << "probe: " << bilayer::method_name(m)
              << " auc=" << bilayer::format_sig12(reports.back().report.auc) << "\n";
  }
  bilayer::export_report(reports, g.out_dir + "/probe.csv", &header);
  std::cout << "probe: probe.csv written\n";
}

struct AggregateOpts {
  std::string recs_file;
  std::string author_communities;
  std::string topic_communities;
  std::string network_dir;
  std::size_t top_n = 100;
};

void run_aggregate(const GlobalOpts& g, const AggregateOpts& o) {
  auto recs = bilayer::read_recommendations(o.recs_file);
  auto authors =
      bilayer::load_assignment(o.author_communities, bilayer::CommunityAssignment::Kind::Author);
  std::optional<bilayer::CommunityAssignment> topics;
  if (!o.topic_communities.empty())
    topics =
        bilayer::load_assignment(o.topic_communities, bilayer::CommunityAssignment::Kind::Topic);

  if (!o.network_dir.empty()) {
    auto net = bilayer::import_network(o.network_dir);
    bilayer::validate_assignment(net, authors);
    if (topics) bilayer::validate_assignment(net, *topics);
  }

  ConfigMap cfg{{"command", "aggregate"},
                {"recs", o.recs_file},
                {"author_communities", o.author_communities},
                {"top_n", std::to_string(o.top_n)}};
  if (!o.topic_communities.empty()) cfg["topic_communities"] = o.topic_communities;
  auto header = make_header(g, cfg);
  fs::create_directories(g.out_dir);

  auto result = bilayer::aggregate_by_community(recs, authors, o.top_n);
  bilayer::write_digests(result, g.out_dir + "/digests.jsonl", &header);
  std::cout << "aggregate: " << result.digests.size() << " communities, "
            << result.unmapped_authors << " unmapped authors\n";
  if (topics) {
    auto dist = bilayer::cross_distribution(recs, authors, *topics, o.top_n);
    bilayer::write_cross_distribution(dist, g.out_dir + "/cross.csv", &header);
    std::cout << "aggregate: cross.csv written (" << dist.unmapped_topic_incidences
              << " unmapped topic incidences)\n";
  }
}

int run_selfcheck() {
  auto result = bilayer::run_selfcheck();
  for (const auto& item : result.items) {
    if (item.passed)
      std::cout << "ok   " << item.name << "\n";
    else
      std::cout << "FAIL " << item.name << ": " << item.detail << "\n";
  }
  std::cout << (result.all_passed() ? "selfcheck passed\n" : "selfcheck FAILED\n");
  return result.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-layer author-topic network toolkit"};
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", g.workers, "worker thread count")
      ->envname("BILAYER_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "rng seed recorded in every artifact")->capture_default_str();

  IngestOpts ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "parse records and report counts")->fallthrough();
  ingest_cmd->add_option("--input", ingest.input, "records file")->required();
  ingest_cmd->add_option("--format", ingest.format, "record format (jsonl)")->capture_default_str();
  auto* ingest_cut = ingest_cmd->add_option("--cutoff-year", ingest.cutoff_year,
                                            "also report the train/test split sizes");

  BuildOpts build;
  auto* build_cmd = app.add_subcommand("build", "build and export the network(s)")->fallthrough();
  build_cmd->add_option("--input", build.input, "records file")->required();
  build_cmd->add_option("--format", build.format, "record format (jsonl)")->capture_default_str();
  auto* build_cut = build_cmd->add_option("--cutoff-year", build.cutoff_year,
                                          "build train and test networks around this year");

  RecommendOpts rec;
  auto* rec_cmd = app.add_subcommand("recommend", "emit per-author topic rankings")->fallthrough();
  rec_cmd->add_option("--input", rec.input, "records file");
  rec_cmd->add_option("--format", rec.format, "record format (jsonl)")->capture_default_str();
  rec_cmd->add_option("--network", rec.network_dir, "pre-built network directory");
  auto* rec_cut = rec_cmd->add_option("--cutoff-year", rec.cutoff_year,
                                      "score on the records at or before this year");
  rec_cmd->add_option("--method", rec.method, "diffusion|semantic")->capture_default_str();
  rec_cmd->add_option("--top-n", rec.top_n, "entries per author")->capture_default_str();
  rec_cmd->add_option("--r-init", rec.r_init, "initial resource")->capture_default_str();
  rec_cmd->add_option("--targets", rec.targets_file, "identities to score (default: all)");
  rec_cmd->add_option("--vectors", rec.vectors_file, "topic vector TSV for --method semantic");
  rec_cmd->add_option("--similarity-floor", rec.similarity_floor,
                      "minimum cosine for a semantic edge")
      ->capture_default_str();

  EvaluateOpts eval;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "ROC/AUC over the candidate edges")->fallthrough();
  eval_cmd->add_option("--input", eval.input, "records file");
  eval_cmd->add_option("--format", eval.format, "record format (jsonl)")->capture_default_str();
  auto* eval_cut = eval_cmd->add_option("--cutoff-year", eval.cutoff_year, "train/test cutoff");
  eval_cmd->add_option("--train-network", eval.train_network_dir, "pre-built training network");
  eval_cmd->add_option("--test-network", eval.test_network_dir, "pre-built testing network");
  eval_cmd->add_option("--methods", eval.methods, "comma-separated method list")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--top-k", eval.top_k, "extra reports for the best-k candidates")
      ->delimiter(',');
  eval_cmd->add_option("--vectors", eval.vectors_file, "topic vector TSV for semantic");
  eval_cmd->add_option("--similarity-floor", eval.similarity_floor,
                       "minimum cosine for a semantic edge")
      ->capture_default_str();
  eval_cmd->add_flag("--export-scores", eval.export_scores,
                     "also write per-method candidate score TSVs");

  ProbeOpts probe;
  auto* probe_cmd = app.add_subcommand("probe", "sampled AUC on a seeded probe set")->fallthrough();
  probe_cmd->add_option("--input", probe.base.input, "records file");
  probe_cmd->add_option("--format", probe.base.format, "record format (jsonl)")->capture_default_str();
  auto* probe_cut =
      probe_cmd->add_option("--cutoff-year", probe.base.cutoff_year, "train/test cutoff");
  probe_cmd->add_option("--train-network", probe.base.train_network_dir,
                        "pre-built training network");
  probe_cmd->add_option("--test-network", probe.base.test_network_dir,
                        "pre-built testing network");
  probe_cmd->add_option("--methods", probe.base.methods, "comma-separated method list")
      ->delimiter(',')
      ->capture_default_str();
  probe_cmd->add_option("--vectors", probe.base.vectors_file, "topic vector TSV for semantic");
  probe_cmd->add_option("--similarity-floor", probe.base.similarity_floor,
                        "minimum cosine for a semantic edge")
      ->capture_default_str();
  probe_cmd->add_option("--probe-size", probe.probe_size, "total sampled pairs (even)")
      ->capture_default_str();

  AggregateOpts agg;
  auto* agg_cmd =
      app.add_subcommand("aggregate", "community digests from recommendations")->fallthrough();
  agg_cmd->add_option("--recs", agg.recs_file, "recommendations JSONL")->required();
  agg_cmd->add_option("--author-communities", agg.author_communities,
                      "TSV identity<TAB>community")
      ->required();
  agg_cmd->add_option("--topic-communities", agg.topic_communities,
                      "TSV label<TAB>community for the cross matrix");
  agg_cmd->add_option("--network", agg.network_dir, "network directory to validate labels");
  agg_cmd->add_option("--top-n", agg.top_n, "entries considered per author")
      ->capture_default_str();

  auto* selfcheck_cmd =
      app.add_subcommand("selfcheck", "run the built-in sanity suite")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    ingest.have_cutoff = ingest_cut->count() > 0;
    build.have_cutoff = build_cut->count() > 0;
    rec.have_cutoff = rec_cut->count() > 0;
    eval.have_cutoff = eval_cut->count() > 0;
    probe.base.have_cutoff = probe_cut->count() > 0;

    if (ingest_cmd->parsed()) run_ingest(g, ingest);
    if (build_cmd->parsed()) run_build(g, build);
    if (rec_cmd->parsed()) run_recommend(g, rec);
    if (eval_cmd->parsed()) run_evaluate(g, eval);
    if (probe_cmd->parsed()) run_probe(g, probe);
    if (agg_cmd->parsed()) run_aggregate(g, agg);
    if (selfcheck_cmd->parsed()) return run_selfcheck();
  } catch (const std::exception& e) {
    std::cerr << "bilayer: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
