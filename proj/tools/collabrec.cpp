// collabrec command line tool: ingest, generate, experiment, recommend, serve.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collabrec/corpus/ingest.hpp"
#include "collabrec/corpus/synthetic.hpp"
#include "collabrec/error.hpp"
#include "collabrec/match/http_api.hpp"
#include "collabrec/match/service.hpp"
#include "collabrec/pipeline/config.hpp"
#include "collabrec/pipeline/experiment.hpp"
#include "collabrec/recommend/recommender.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/similarity.hpp"
#include "collabrec/version.hpp"

namespace fs = std::filesystem;
using namespace collabrec;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

fs::path default_pool() {
  for (const char* candidate : {COLLABREC_INSTALLED_DATA_DIR, COLLABREC_SOURCE_DATA_DIR}) {
    fs::path p = fs::path(candidate) / "skill_pool.json";
    if (fs::exists(p)) return p;
  }
  return "skill_pool.json";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_profiles(const fs::path& path, std::span<const corpus::Profile> profiles) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw runtime_error("cannot write " + path.string());
  if (path.extension() == ".csv") {
    corpus::write_profiles_csv(out, profiles);
  } else {
    corpus::write_profiles_jsonl(out, profiles);
  }
}

// Flags shared by every subcommand that reads a corpus. Values are applied
// over the config file only when given on the command line.
struct CorpusFlags {
  std::string config;
  std::string profiles;
  std::string embeddings;
  std::string provider;
  std::string stopwords;
  std::size_t embedding_dim = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON configuration file")->check(CLI::ExistingFile);
    app->add_option("--profiles", profiles, "Profile corpus (.csv or .jsonl)");
    app->add_option("--embeddings", embeddings, "Embedding import file (.jsonl)");
    app->add_option("--provider", provider, "Embedding provider: file_import or hashed_projection");
    app->add_option("--stopwords", stopwords, "Stop-word file, one word per line");
    dim_opt = app->add_option("--embedding-dim", embedding_dim, "Hashed projection width");
    seed_opt = app->add_option("--seed", seed, "Seed for hashed projection");
    alpha_opt = app->add_option("--alpha", alpha, "Hybrid TF-IDF weight in [0,1]");
  }

  pipeline::Config resolve() const {
    pipeline::Config c = config.empty() ? pipeline::Config{} : pipeline::load_config(config);
    if (!profiles.empty()) c.corpus.profiles = profiles;
    if (!embeddings.empty()) c.corpus.embeddings = fs::path(embeddings);
    if (!provider.empty()) c.corpus.provider = vectorize::parse_provider_kind(provider);
    if (!stopwords.empty()) c.corpus.stopwords = fs::path(stopwords);
    if (dim_opt->count()) c.corpus.embedding_dim = embedding_dim;
    if (seed_opt->count()) c.corpus.seed = seed;
    if (alpha_opt->count()) c.corpus.alpha = alpha;
    return c;
  }
};

int cmd_ingest(const std::string& input, const std::string& output) {
  const auto result = corpus::load_profiles_file(input);
  for (const auto& d : result.rejected) std::cerr << input << ": " << d.message << '\n';
  if (!result.ok()) return kExitValidation;
  if (output.empty()) {
    corpus::write_profiles_jsonl(std::cout, result.profiles);
  } else {
    write_profiles(output, result.profiles);
    std::cerr << "wrote " << result.profiles.size() << " profiles to " << output << '\n';
  }
  return 0;
}

int cmd_generate(const std::string& pool_path, std::size_t count, std::uint64_t seed, const std::string& include,
                 const std::string& output) {
  std::vector<corpus::Profile> profiles;
  if (!include.empty()) profiles = corpus::load_profiles_strict(include);
  const auto pool = corpus::load_skill_pool(pool_path.empty() ? default_pool() : fs::path(pool_path));
  auto synthetic = corpus::generate_synthetic(pool, count, seed);
  profiles.insert(profiles.end(), synthetic.begin(), synthetic.end());
  if (output.empty()) {
    corpus::write_profiles_jsonl(std::cout, profiles);
  } else {
    write_profiles(output, profiles);
    std::cerr << "wrote " << profiles.size() << " profiles to " << output << '\n';
  }
  return 0;
}

struct ExperimentFlags {
  std::string methods;
  std::string out;
  std::string targets;
  std::size_t top_k = 5;
  std::size_t ndcg_depth = 5;
  double damping = 0.5;
  double preference = 0.0;
  int max_iter = 200;
  CLI::Option* top_k_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* damping_opt = nullptr;
  CLI::Option* preference_opt = nullptr;
  CLI::Option* max_iter_opt = nullptr;
};

int cmd_experiment(const CorpusFlags& cf, const ExperimentFlags& ef) {
  auto config = cf.resolve();
  if (!ef.methods.empty()) {
    config.experiment.methods.clear();
    for (const auto& m : split_list(ef.methods)) config.experiment.methods.push_back(vectorize::parse_technique(m));
  }
  if (!ef.out.empty()) config.experiment.output_dir = ef.out;
  if (!ef.targets.empty()) config.experiment.targets = split_list(ef.targets);
  if (ef.top_k_opt->count()) config.experiment.top_k = ef.top_k;
  if (ef.depth_opt->count()) config.experiment.ndcg_depth = ef.ndcg_depth;
  if (ef.damping_opt->count()) config.experiment.affinity.damping = ef.damping;
  if (ef.preference_opt->count()) config.experiment.affinity.preference = ef.preference;
  if (ef.max_iter_opt->count()) config.experiment.affinity.max_iter = ef.max_iter;

  const auto result = pipeline::run_experiment(config);
  std::cout << eval::format_table(result.report);
  for (const auto& m : result.report.methods) {
    for (const auto& note : m.notes) std::cerr << vectorize::to_string(m.technique) << ": " << note << '\n';
  }
  std::cerr << "artifacts written to " << config.experiment.output_dir.string() << '\n';
  return 0;
}

struct RecommendFlags {
  std::string target;
  std::string method = "hybrid";
  std::size_t k = 5;
  std::string collaborate_with;
  std::string profession;
  std::string interest;
  bool use_preference = false;
  bool no_filters = false;
  bool json = false;
};

int cmd_recommend(const CorpusFlags& cf, const RecommendFlags& rf) {
  const auto config = cf.resolve();
  const auto technique = vectorize::parse_technique(rf.method);
  const auto stopwords = pipeline::load_stopwords(config.corpus);
  const auto provider = pipeline::make_provider(config.corpus);
  recommend::IndexOptions options;
  options.alpha = config.corpus.alpha;
  const std::array techniques{technique};
  auto index = recommend::build_index(pipeline::load_corpus(config.corpus), stopwords, provider.get(), techniques, options);
  const auto sim = simcluster::similarity_matrix(index.vectors(technique), technique);
  index.attach_clusters(technique, simcluster::affinity_propagation(sim, config.experiment.affinity));

  recommend::RecommendationQuery query;
  query.target_id = rf.target;
  query.technique = technique;
  query.k = rf.k;
  if (!rf.collaborate_with.empty()) query.filters.collaborate_with = rf.collaborate_with;
  if (!rf.profession.empty()) query.filters.profession = rf.profession;
  if (!rf.interest.empty()) query.filters.interest = rf.interest;
  query.filters.use_target_preference = rf.use_preference;
  query.filters.enabled = !rf.no_filters;
  const auto recs = recommend::recommend(query, index);

  if (rf.json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : recs) {
      const auto& p = index.profile(*index.find(r.candidate_id));
      out.push_back({{"rank", r.rank},
                     {"id", r.candidate_id},
                     {"name", p.name},
                     {"domain", p.domain},
                     {"skillset", p.skillset},
                     {"similarity", r.similarity},
                     {"cluster", r.cluster ? nlohmann::json(*r.cluster) : nlohmann::json(nullptr)}});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  const auto& target = index.profile(*index.find(rf.target));
  std::cout << "Target: " << target.name << " (" << target.id << "), " << target.domain << " | " << target.skillset
            << "\nMethod: " << vectorize::to_string(technique) << "\n\n";
  std::cout << std::left << std::setw(6) << "Rank" << std::setw(24) << "Name" << std::setw(64) << "Domain/Skillset"
            << std::setw(18) << "Similarity score" << "Cluster\n";
  for (const auto& r : recs) {
    const auto& p = index.profile(*index.find(r.candidate_id));
    std::string summary = p.domain + " | " + p.skillset;
    if (summary.size() > 62) summary = summary.substr(0, 59) + "...";
    std::ostringstream score;
    score << std::fixed << std::setprecision(4) << r.similarity;
    std::cout << std::left << std::setw(6) << r.rank << std::setw(24) << p.name << std::setw(64) << summary
              << std::setw(18) << score.str() << (r.cluster ? std::to_string(*r.cluster) : "-") << '\n';
  }
  return 0;
}

struct ServeFlags {
  std::string store;
  std::string host;
  int port = 0;
  std::string cors_origin;
  bool no_fsync = false;
  CLI::Option* port_opt = nullptr;
};

int cmd_serve(const CorpusFlags& cf, const ServeFlags& sf) {
  auto config = cf.resolve();
  if (!sf.store.empty()) config.serve.store = sf.store;
  if (!sf.host.empty()) config.serve.host = sf.host;
  if (sf.port_opt->count()) config.serve.port = sf.port;
  if (!sf.cors_origin.empty()) config.serve.cors_origin = sf.cors_origin;
  if (sf.no_fsync) config.serve.fsync = false;

  // Block termination signals before any thread starts so that only the
  // waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  match::ServiceDependencies deps;
  deps.store = std::make_shared<match::FileDocumentStore>(config.serve.store, match::FileStoreOptions{config.serve.fsync});
  deps.provider = pipeline::make_provider(config.corpus, /*fallback=*/true);
  deps.clock = std::make_shared<match::SystemClock>();
  deps.entropy = std::make_shared<match::SystemEntropy>();
  deps.stopwords = pipeline::load_stopwords(config.corpus);
  match::ServiceOptions options;
  options.alpha = config.corpus.alpha;
  match::MatchService service(std::move(deps), options);
  if (!config.corpus.profiles.empty()) {
    const auto added = service.import_profiles(pipeline::load_corpus(config.corpus));
    std::cerr << "imported " << added << " seed profiles\n";
  }

  match::HttpOptions http;
  http.host = config.serve.host;
  http.port = config.serve.port;
  http.cors_origin = config.serve.cors_origin;
  match::HttpApi api(service, http);
  const int port = api.bind();
  std::cerr << nlohmann::json{{"event", "listening"}, {"host", http.host}, {"port", port},
                              {"store", config.serve.store.string()}}.dump()
            << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    api.stop();
  });
  api.listen();
  // listen() also returns when the server fails; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int exit_code(const Error& e) { return e.kind() == ErrorKind::runtime ? kExitRuntime : kExitValidation; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collabrec: hybrid profile recommendation, clustering evaluation and matching service"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Validate a survey file and emit normalized profiles");
  std::string ingest_input, ingest_output;
  ingest->add_option("input", ingest_input, "Survey file (.csv or .jsonl)")->required()->check(CLI::ExistingFile);
  ingest->add_option("-o,--out", ingest_output, "Output file (.jsonl or .csv); stdout when omitted");

  auto* generate = app.add_subcommand("generate", "Generate seeded synthetic profiles from a skill pool");
  std::string pool, include, gen_output;
  std::size_t count = 0;
  std::uint64_t gen_seed = 42;
  generate->add_option("--pool", pool, "Skill pool JSON (defaults to the bundled pool)");
  generate->add_option("--count", count, "Number of synthetic profiles")->required();
  generate->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  generate->add_option("--include", include, "Real profiles placed before the synthetic ones")->check(CLI::ExistingFile);
  generate->add_option("-o,--out", gen_output, "Output file (.jsonl or .csv); stdout when omitted");

  auto* experiment = app.add_subcommand("experiment", "Run vectorize, cluster and evaluate for each method");
  CorpusFlags exp_corpus;
  exp_corpus.attach(experiment);
  ExperimentFlags ef;
  experiment->add_option("--methods", ef.methods, "Comma-separated subset of tfidf,embedding,hybrid");
  experiment->add_option("--out", ef.out, "Output directory");
  experiment->add_option("--targets", ef.targets, "Comma-separated designated target ids");
  ef.top_k_opt = experiment->add_option("--top-k", ef.top_k, "Recommendations per target");
  ef.depth_opt = experiment->add_option("--ndcg-depth", ef.ndcg_depth, "NDCG cut-off");
  ef.damping_opt = experiment->add_option("--damping", ef.damping, "Affinity propagation damping");
  ef.preference_opt = experiment->add_option("--preference", ef.preference, "Affinity propagation preference");
  ef.max_iter_opt = experiment->add_option("--max-iter", ef.max_iter, "Affinity propagation iteration cap");

  auto* rec = app.add_subcommand("recommend", "Top-k recommendations for one target");
  CorpusFlags rec_corpus;
  rec_corpus.attach(rec);
  RecommendFlags rf;
  rec->add_option("--target", rf.target, "Target profile id")->required();
  rec->add_option("--method", rf.method, "tfidf, embedding or hybrid")->capture_default_str();
  rec->add_option("--k", rf.k, "Number of recommendations")->capture_default_str();
  rec->add_option("--collaborate-with", rf.collaborate_with, "Candidate profession must equal this value");
  rec->add_flag("--use-preference", rf.use_preference, "Filter by the target's own collaboration_with");
  rec->add_option("--profession", rf.profession, "Candidate profession filter");
  rec->add_option("--interest", rf.interest, "Candidate interest filter");
  rec->add_flag("--no-filters", rf.no_filters, "Ignore every filter");
  rec->add_flag("--json", rf.json, "Print JSON instead of a table");

  auto* serve = app.add_subcommand("serve", "Run the matching service HTTP API");
  CorpusFlags serve_corpus;
  serve_corpus.attach(serve);
  ServeFlags sf;
  serve->add_option("--store", sf.store, "Store directory (created when missing)");
  serve->add_option("--host", sf.host, "Listen address");
  sf.port_opt = serve->add_option("--port", sf.port, "Listen port, 0 for any free port");
  serve->add_option("--cors-origin", sf.cors_origin, "Allow browser requests from this origin");
  serve->add_flag("--no-fsync", sf.no_fsync, "Skip fsync on store writes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_output);
    if (*generate) return cmd_generate(pool, count, gen_seed, include, gen_output);
    if (*experiment) return cmd_experiment(exp_corpus, ef);
    if (*rec) return cmd_recommend(rec_corpus, rf);
    if (*serve) return cmd_serve(serve_corpus, sf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}
