// One PASS/FAIL line per primary acceptance criterion. Exit status is the
// number of failing criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/corpus/ingest.hpp"
#include "collabrec/error.hpp"
#include "collabrec/eval/cluster_metrics.hpp"
#include "collabrec/eval/ranking.hpp"
#include "collabrec/match/document_store.hpp"
#include "collabrec/match/service.hpp"
#include "collabrec/recommend/corpus_index.hpp"
#include "collabrec/recommend/recommender.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/similarity.hpp"
#include "collabrec/vectorize/embedding.hpp"
#include "collabrec/vectorize/tfidf.hpp"
#include "collabrec/vectorize/vocabulary.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace collabrec;
using vectorize::Technique;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  " << o.detail.str() << std::endl;
}

fs::path demo() { return COLLABREC_DEMO_DIR; }

const Technique kAll[] = {Technique::tfidf, Technique::embedding, Technique::hybrid};

recommend::CorpusIndex demo_index(vectorize::IdfLog log = vectorize::IdfLog::natural) {
  static const auto provider = vectorize::FileEmbeddingProvider::load(demo() / "embeddings.jsonl");
  recommend::IndexOptions o;
  o.idf_log = log;
  return recommend::build_index(corpus::load_profiles_strict(demo() / "profiles.jsonl"),
                                corpus::StopWords::english(), &provider, kAll, o);
}

simcluster::SimilarityMatrix from(const oracle::Matrix& m) {
  simcluster::SimilarityMatrix s(m.size(), Technique::embedding);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) s(i, j) = m[i][j];
  return s;
}

// 1
void hybrid_identity(Outcome& o) {
  const auto t0 = Clock::now();
  const auto index = demo_index();
  const auto vt = index.vectors(Technique::tfidf);
  const auto ve = index.vectors(Technique::embedding);
  const auto vh = index.vectors(Technique::hybrid);
  const std::size_t n = vt.size();
  oracle::Random rng(2024);
  double worst = 0;
  std::size_t pairs = 0;
  while (pairs < 2000) {
    const std::size_t i = rng.next() % n, j = rng.next() % n;
    if (i == j) continue;
    const double h = simcluster::cosine_similarity(vh[i], vh[j]);
    const double mean = 0.5 * (simcluster::cosine_similarity(vt[i], vt[j]) + simcluster::cosine_similarity(ve[i], ve[j]));
    worst = std::max(worst, std::abs(h - mean));
    ++pairs;
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-9, "max deviation above 1e-9");
  o.require(secs < 5.0, "runtime 5 s");
  o.detail << "pairs=" << pairs << " max|dev|=" << worst << " time=" << secs << "s";
}

// 2
void tfidf_fixtures(Outcome& o) {
  using corpus::TokenDocument;
  const std::vector<TokenDocument> two = {{"d1", {"python", "java"}, ""}, {"d2", {"python"}, ""}};
  const auto v2 = vectorize::Vocabulary::build(two);
  const auto d1 = vectorize::tfidf_vector(two[0], v2);
  const auto d2 = vectorize::tfidf_vector(two[1], v2);
  auto weight = [](const vectorize::SparseVector& v, std::uint32_t idx) {
    for (const auto& [i, w] : v.entries)
      if (i == idx) return w;
    return 0.0;
  };
  const double java = weight(d1, *v2.index_of("java"));
  const double python = weight(d2, *v2.index_of("python"));
  const std::vector<TokenDocument> four = {{"a", {"t"}, ""}, {"b", {"u"}, ""}, {"c", {"u"}, ""}, {"d", {"v"}, ""}};
  const auto v4 = vectorize::Vocabulary::build(four);
  const double rare = weight(vectorize::tfidf_vector(four[0], v4), *v4.index_of("t"));
  o.require(std::abs(java - 0.5 * std::log(2.0)) <= 1e-9, "tf 1/2 idf ln2 fixture");
  o.require(python == 0.0, "term in every document weighs 0");
  o.require(std::abs(rare - std::log(4.0)) <= 1e-9, "tf 1 idf ln4 fixture");

  const auto ln = demo_index(vectorize::IdfLog::natural);
  const auto lg = demo_index(vectorize::IdfLog::base10);
  const auto a = ln.vectors(Technique::tfidf);
  const auto b = lg.vectors(Technique::tfidf);
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      worst = std::max(worst, std::abs(simcluster::cosine_similarity(a[i], a[j]) - simcluster::cosine_similarity(b[i], b[j])));
  o.require(worst <= 1e-9, "log-base invariance");
  o.detail << "java=" << java << " rare=" << rare << " log-base max|dev|=" << worst << " over "
           << a.size() * (a.size() - 1) / 2 << " pairs";
}

// 3
void ranking_oracles(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t lists = 0, perms = 0, ndcg_mismatch = 0, non_unique = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<int> grades(len);
      for (std::size_t i = 0, c = code; i < len; ++i, c /= 4) grades[i] = static_cast<int>(c % 4);
      ++lists;
      // Exhaustive maximum DCG over every ordering.
      std::vector<int> p = grades;
      std::sort(p.begin(), p.end());
      double best = -1;
      do best = std::max(best, oracle::dcg(p, len));
      while (std::next_permutation(p.begin(), p.end()));
      std::vector<int> sorted_desc = grades;
      std::sort(sorted_desc.rbegin(), sorted_desc.rend());
      std::sort(p.begin(), p.end());
      do {
        ++perms;
        const double expected = best == 0 ? 0.0 : oracle::dcg(p, len) / best;
        if (eval::ndcg_at(p, len) != expected) ++ndcg_mismatch;
        if (best > 0 && oracle::dcg(p, len) == best && p != sorted_desc) ++non_unique;
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
  o.require(ndcg_mismatch == 0, "NDCG differs from exhaustive evaluation");
  o.require(non_unique == 0, "a non-descending order reaches the maximum");

  std::size_t ap_cases = 0, ap_mismatch = 0;
  double ap_worst = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      std::vector<bool> rel(len);
      for (std::size_t i = 0; i < len; ++i) rel[i] = (mask >> i) & 1u;
      const eval::BinaryRanking r{rel, std::nullopt};
      const auto mine = eval::average_precision(r);
      const auto ref = oracle::average_precision_pr(rel, r.relevant_count());
      ++ap_cases;
      if (mine.has_value() != ref.has_value()) {
        ++ap_mismatch;
        continue;
      }
      if (mine) ap_worst = std::max(ap_worst, std::abs(*mine - *ref));
    }
  }
  // Both sides sum the same rationals in a different order; agreement is
  // required to the last representable digits.
  o.require(ap_mismatch == 0 && ap_worst <= 1e-15, "AP differs from precision-recall enumeration");
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "runtime 10 s");
  o.detail << "grade lists=" << lists << " orderings=" << perms << " ndcg mismatches=" << ndcg_mismatch
           << " AP cases=" << ap_cases << " max|dev|=" << ap_worst << " time=" << secs << "s";
}

// 4
void affinity(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t fixtures = 0, agree = 0, equivariant = 0, checked = 0;
  std::ostringstream bad;
  for (const auto& f : oracle::ap_fixtures()) {
    ++fixtures;
    simcluster::AffinityOptions opt;
    opt.damping = f.damping;
    opt.max_iter = f.max_iter;
    opt.convergence_iter = f.convergence_iter;
    opt.preference = f.preference;
    const auto mine = simcluster::affinity_propagation(from(f.s), opt);
    const auto ref = oracle::affinity_propagation(f.s, f.preference, f.damping, f.max_iter, f.convergence_iter);
    if (mine.exemplars == ref.exemplars) ++agree;
    else bad << f.name << " ";
    if (!f.all_distinct) continue;
    ++checked;
    const std::size_t n = f.s.size();
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 3 && ok; ++seed) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      oracle::Random rng(seed * 7919 + n);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next() % i]);
      oracle::Matrix p(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i][j] = f.s[perm[i]][perm[j]];
      const auto permuted = simcluster::affinity_propagation(from(p), opt);
      std::set<int> mapped;
      for (int e : permuted.exemplars) mapped.insert(static_cast<int>(perm[static_cast<std::size_t>(e)]));
      ok = mapped == std::set<int>(mine.exemplars.begin(), mine.exemplars.end());
    }
    if (ok) ++equivariant;
    else bad << f.name << "(perm) ";
  }
  const double secs = seconds_since(t0);
  o.require(fixtures >= 10 && agree == fixtures, "exemplars differ from reference: " + bad.str());
  o.require(equivariant == checked, "permutation equivariance");
  o.require(secs < 30.0, "runtime 30 s");
  o.detail << "fixtures=" << fixtures << " agree=" << agree << " equivariant=" << equivariant << "/" << checked
           << " time=" << secs << "s";
}

// 5
void clustering_metrics(Outcome& o) {
  const auto dup = from({{1, 1, 0.1, 0.1}, {1, 1, 0.1, 0.1}, {0.1, 0.1, 1, 1}, {0.1, 0.1, 1, 1}});
  const std::vector<int> l{0, 0, 1, 1}, l_renamed{5, 5, 2, 2};
  const double sil = eval::silhouette(dup, l);
  o.require(std::abs(sil - 1.0) <= 1e-9, "silhouette 1.0 on duplicate pairs");
  o.require(eval::silhouette(dup, l_renamed) == sil, "silhouette renumbering");

  oracle::Random rng(77);
  bool bounded = true, renumber = true;
  for (int trial = 0; trial < 50; ++trial) {
    oracle::Matrix rows(20, std::vector<double>(5));
    for (auto& r : rows)
      for (auto& x : r) x = rng.normal();
    const auto s = from(oracle::cosine_matrix(rows));
    std::vector<int> labels(20), renamed(20);
    for (int i = 0; i < 20; ++i) {
      labels[i] = static_cast<int>(rng.next() % 4);
      renamed[i] = 10 - labels[i] * 3;
    }
    if (std::set<int>(labels.begin(), labels.end()).size() < 2) continue;
    const double v = eval::silhouette(s, labels);
    bounded = bounded && v >= -1.0 && v <= 1.0;
    renumber = renumber && std::abs(v - eval::silhouette(s, renamed)) <= 1e-12;
    std::vector<std::vector<double>> vecs(rows.begin(), rows.end());
    renumber = renumber && std::abs(eval::davies_bouldin(vecs, labels) - eval::davies_bouldin(vecs, renamed)) <= 1e-12;
  }
  o.require(bounded, "silhouette within [-1, 1]");
  o.require(renumber, "renumbering invariance on random fixtures");

  eval::DaviesBouldinOptions raw;
  raw.normalize = false;
  const std::vector<std::vector<double>> line{{0.0}, {0.2}, {1.0}, {1.2}};
  const double db = eval::davies_bouldin(line, l, raw);
  o.require(std::abs(db - 0.2) <= 1e-9, "Davies-Bouldin 0.2 fixture");
  o.require(eval::davies_bouldin(line, l_renamed, raw) == db, "Davies-Bouldin renumbering");
  const std::vector<std::vector<double>> tight{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  const std::vector<std::vector<double>> tight3{{3, 1, 0}, {3, 1, 0}, {3, 1, 0}, {-1, 2, 2}, {-1, 2, 2}};
  const double z1 = eval::davies_bouldin(tight, l);
  const double z2 = eval::davies_bouldin(tight3, std::vector<int>{0, 0, 0, 1, 1}, raw);
  o.require(z1 == 0.0 && z2 == 0.0, "Davies-Bouldin 0 on zero scatter");
  o.detail << "silhouette=" << sil << " db=" << db << " zero-scatter=" << z1 << "," << z2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 6
void end_to_end(Outcome& o) {
  const fs::path base = fs::path(COLLABREC_SCRATCH_DIR) / "acceptance_e2e";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string cli = COLLABREC_CLI_PATH;
  const std::string config = (demo() / "config.json").string();
  double worst_secs = 0;
  for (const char* run : {"run1", "run2"}) {
    const auto t0 = Clock::now();
    const int code = shell(cli + " experiment --config " + config + " --seed 42 --out " + (base / run).string() +
                           " > " + (base / (std::string(run) + ".log")).string() + " 2>&1");
    worst_secs = std::max(worst_secs, seconds_since(t0));
    o.require(code == 0, std::string("experiment exit code in ") + run);
  }
  o.require(worst_secs < 60.0, "runtime 60 s");

  std::size_t files = 0, identical = 0;
  for (const auto& e : fs::directory_iterator(base / "run1")) {
    ++files;
    if (slurp(e.path()) == slurp(base / "run2" / e.path().filename())) ++identical;
  }
  o.require(files > 0 && files == identical, "outputs differ between runs");

  const auto report = json::parse(slurp(base / "run1" / "report.json"));
  const auto& table = report.at("table");
  bool layout = table.size() == 5;
  const char* rows[] = {"Davies-Bouldin", "Silhouette", "Intra-Cluster", "NDCG", "mAP"};
  for (std::size_t r = 0; layout && r < 5; ++r) {
    layout = table[r].at("metric") == rows[r];
    for (const char* m : {"tfidf", "embedding", "hybrid"}) layout = layout && table[r].contains(m) && table[r].at(m).is_number();
  }
  o.require(layout, "report layout 5 metrics x 3 methods");

  double worst = 0;
  for (const auto& m : report.at("methods")) {
    const std::string name = m.at("technique");
    const auto re = oracle::recompute_from_rankings(base / "run1" / ("rankings_" + name + ".json"));
    worst = std::max({worst, std::abs(re.ndcg - m.at("ndcg").get<double>()), std::abs(re.map - m.at("map").get<double>())});
  }
  o.require(worst <= 1e-9, "C++ recompute from artifacts");

  const std::string script = COLLABREC_RECOMPUTE_SCRIPT;
  const int py = shell("python3 " + script + " " + (base / "run1").string() + " --tolerance 1e-9 > " +
                       (base / "recompute.log").string() + " 2>&1");
  o.require(py == 0, "python recompute from artifacts");
  o.detail << "files=" << files << " identical=" << identical << " slowest run=" << worst_secs
           << "s recompute max|dev|=" << worst << " python=" << (py == 0 ? "ok" : "failed");
}

// 7
void recommender_protocol(Outcome& o) {
  auto index = demo_index();
  const auto vh = index.vectors(Technique::hybrid);
  index.attach_clusters(Technique::hybrid,
                        simcluster::affinity_propagation(simcluster::similarity_matrix(vh, Technique::hybrid)));
  const std::string target = "r0001";
  recommend::RecommendationQuery q;
  q.target_id = target;
  q.technique = Technique::hybrid;
  q.k = 5;
  q.filters.enabled = false;
  const auto recs = recommend::recommend(q, index);

  const std::size_t ti = *index.find(target);
  std::vector<std::pair<double, std::string>> scan;
  for (std::size_t j = 0; j < vh.size(); ++j) {
    if (j == ti) continue;
    scan.emplace_back(simcluster::cosine_similarity(vh[ti], vh[j]), index.profile(j).id);
  }
  std::sort(scan.begin(), scan.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  o.require(recs.size() == 5, "five candidates");
  bool agree = recs.size() == 5;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    agree = agree && recs[i].candidate_id == scan[i].second && recs[i].similarity == scan[i].first && recs[i].rank == i + 1;
    o.require(recs[i].candidate_id != target, "self excluded");
    o.require(recs[i].cluster.has_value(), "cluster annotation");
    if (i) o.require(recs[i - 1].similarity >= recs[i].similarity, "descending similarity");
  }
  o.require(agree, "rank agreement with brute-force scan");

  // Same protocol with the target's collaboration preference applied.
  q.filters = {};
  q.filters.use_target_preference = true;
  const auto filtered = recommend::recommend(q, index);
  const auto want = index.profile(ti).collaboration_with;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  for (const auto& r : filtered)
    o.require(lower(index.profile(*index.find(r.candidate_id)).profession) == lower(want), "preference filter");
  o.detail << "target=" << target << " top1=" << recs.at(0).candidate_id << " (" << recs.at(0).similarity
           << ") filtered=" << filtered.size();
}

// 8
struct Op {
  std::string kind;  // register, swipe, message, rate
  std::string a, b, text;
  int value = 0;
};

void to_json(json& j, const Op& op) { j = {{"kind", op.kind}, {"a", op.a}, {"b", op.b}, {"text", op.text}, {"value", op.value}}; }
void from_json(const json& j, Op& op) {
  op.kind = j.at("kind");
  op.a = j.at("a");
  op.b = j.at("b");
  op.text = j.at("text");
  op.value = j.at("value");
}

std::string user_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "u%04zu", i);
  return buf;
}

std::unique_ptr<match::MatchService> fresh_service(const fs::path& dir) {
  match::ServiceDependencies d;
  d.store = std::make_shared<match::FileDocumentStore>(dir);
  d.provider = std::make_shared<vectorize::HashedProjectionProvider>(64, 9);
  d.clock = std::make_shared<match::ManualClock>();
  d.entropy = std::make_shared<match::SeededEntropy>(31337);
  match::ServiceOptions o;
  o.kdf_iterations = 1000;
  return std::make_unique<match::MatchService>(std::move(d), o);
}

// Applies one operation; returns the error kind name or "ok".
std::string apply(match::MatchService& s, const Op& op) {
  try {
    if (op.kind == "register") {
      corpus::Profile p;
      p.name = op.a;
      p.email = op.a + "@example.org";
      p.domain = "field " + std::to_string(op.value % 7);
      p.skillset = "skill" + std::to_string(op.value % 11) + ", skill" + std::to_string(op.value % 5);
      s.register_account(p, op.text);
    } else if (op.kind == "swipe") {
      s.swipe(op.a, op.b, op.value ? match::Direction::right : match::Direction::left);
    } else if (op.kind == "message") {
      s.send_message(op.a, match::match_key(op.a, op.b), op.text);
    } else if (op.kind == "rate") {
      s.rate(op.a, op.b, op.value);
    }
    return "ok";
  } catch (const Error& e) {
    return std::to_string(static_cast<int>(e.kind()));
  }
}

bool record_ok(const match::MatchRecord& r) {
  const bool both = r.status_a == match::SwipeStatus::right && r.status_b == match::SwipeStatus::right;
  return r.matched == both && (r.chat.empty() || r.matched) && r.user_a < r.user_b;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

void service_state_machine(Outcome& o) {
  const auto t0 = Clock::now();
  const fs::path base = fs::path(COLLABREC_SCRATCH_DIR) / "acceptance_service";
  fs::remove_all(base);
  const auto dir1 = base / "original", dir2 = base / "replay";

  oracle::Random rng(8);
  std::vector<Op> log;
  std::vector<std::string> passwords;
  std::size_t users = 0, violations = 0, ok_ops = 0, matched_pairs = 0, messages = 0, ratings = 0;
  std::vector<std::string> outcomes;
  {
    auto service = fresh_service(dir1);
    auto pick = [&] { return user_id(1 + rng.next() % users); };
    auto near = [&](const std::string& u) {
      // Mostly pick from a small neighbourhood so that mutual swipes happen.
      const std::size_t i = std::stoul(u.substr(1));
      const std::size_t lo = i > 3 ? i - 3 : 1, hi = std::min(users, i + 3);
      return user_id(lo + rng.next() % (hi - lo + 1));
    };
    for (std::size_t step = 0; step < 10000; ++step) {
      Op op;
      const double r = rng.uniform();
      if (users < 2 || r < 0.06) {
        op.kind = "register";
        op.a = "person" + std::to_string(step);
        char pw[40];
        std::snprintf(pw, sizeof pw, "Pw-%016llx", static_cast<unsigned long long>(rng.next()));
        op.text = rng.uniform() < 0.03 ? "short" : pw;
        op.value = static_cast<int>(rng.next() % 1000);
        passwords.push_back(op.text);
      } else if (r < 0.55) {
        op.kind = "swipe";
        op.a = pick();
        op.b = rng.uniform() < 0.8 ? near(op.a) : (rng.uniform() < 0.5 ? pick() : "u9999");
        op.value = rng.uniform() < 0.75 ? 1 : 0;
      } else if (r < 0.85) {
        op.kind = "message";
        op.a = pick();
        op.b = near(op.a);
        op.text = "message " + std::to_string(step);
      } else {
        op.kind = "rate";
        op.a = pick();
        op.b = near(op.a);
        op.value = static_cast<int>(rng.next() % 7);  // 0 and 6 are invalid
      }
      const auto result = apply(*service, op);
      outcomes.push_back(result);
      if (op.kind == "register" && result == "ok") ++users;
      if (result == "ok") {
        ++ok_ops;
        if (op.kind == "message") ++messages;
        if (op.kind == "rate") ++ratings;
      }
      if (!op.b.empty() && op.a != op.b) {
        if (const auto rec = service->record(op.a, op.b); rec && !record_ok(*rec)) ++violations;
      }
      log.push_back(op);
    }
  }
  // Full store audit.
  match::FileDocumentStore audit(dir1);
  for (const auto& [key, doc] : audit.scan("matches")) {
    const auto rec = doc.get<match::MatchRecord>();
    if (!record_ok(rec)) ++violations;
    matched_pairs += rec.matched;
  }
  o.require(violations == 0, "match record invariant violated");

  // Replay from the serialized log into a fresh store.
  const json serialized = log;
  std::vector<std::string> replay_outcomes;
  {
    auto service = fresh_service(dir2);
    for (const auto& op : serialized.get<std::vector<Op>>()) replay_outcomes.push_back(apply(*service, op));
  }
  o.require(replay_outcomes == outcomes, "replay outcomes differ");
  const auto s1 = snapshot(dir1), s2 = snapshot(dir2);
  o.require(s1 == s2, "replayed store differs");

  std::size_t leaks = 0;
  for (const auto& [path, content] : s1)
    for (const auto& pw : passwords)
      if (content.find(pw) != std::string::npos) ++leaks;
  o.require(leaks == 0, "plaintext password in store");
  const double secs = seconds_since(t0);
  o.detail << "ops=" << log.size() << " ok=" << ok_ops << " users=" << users << " matches=" << matched_pairs
           << " messages=" << messages << " ratings=" << ratings << " files=" << s1.size() << " leaks=" << leaks
           << " time=" << secs << "s";
}

}  // namespace

int main() {
  criterion("hybrid-identity", hybrid_identity);
  criterion("tfidf-fixtures-and-log-base", tfidf_fixtures);
  criterion("ranking-metric-oracles", ranking_oracles);
  criterion("affinity-propagation-reference", affinity);
  criterion("clustering-metrics", clustering_metrics);
  criterion("end-to-end-experiment", end_to_end);
  criterion("recommender-protocol", recommender_protocol);
  criterion("service-state-machine", service_state_machine);
  return failures;
}
