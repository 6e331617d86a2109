#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/corpus/profile.hpp"
#include "collabrec/corpus/text.hpp"
#include "collabrec/match/document_store.hpp"
#include "collabrec/match/environment.hpp"
#include "collabrec/match/password.hpp"
#include "collabrec/recommend/corpus_index.hpp"
#include "collabrec/vectorize/embedding.hpp"

namespace collabrec::match {

enum class SwipeStatus { pending, right, left };
enum class Direction { right, left };

std::string_view to_string(SwipeStatus status);
SwipeStatus parse_swipe_status(std::string_view text);
Direction parse_direction(std::string_view text);

struct Account {
  std::string profile_id;
  std::string email;
  PasswordHash password;
  std::int64_t created_at = 0;
};

struct ChatMessage {
  std::uint64_t seq = 0;  // 1-based position in the match log
  std::string sender;
  std::string text;
  std::int64_t ts = 0;  // ms UTC, strictly increasing within one match

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// Swipe state of one unordered pair, stored under "<user_a>~<user_b>"
/// with user_a < user_b.
struct MatchRecord {
  std::string user_a;
  std::string user_b;
  SwipeStatus status_a = SwipeStatus::pending;
  SwipeStatus status_b = SwipeStatus::pending;
  bool matched = false;
  std::optional<std::int64_t> matched_at;
  std::vector<ChatMessage> chat;

  std::string id() const { return user_a + "~" + user_b; }
  bool has(std::string_view user) const { return user == user_a || user == user_b; }
  SwipeStatus status_of(std::string_view user) const;
  const std::string& other(std::string_view user) const;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

struct RatingLedger {
  std::string profile_id;
  std::map<std::string, int> ratings;  // rater -> score
  double average = 0.0;
};

std::string match_key(std::string_view x, std::string_view y);

void to_json(nlohmann::json& j, const Account& a);
void from_json(const nlohmann::json& j, Account& a);
void to_json(nlohmann::json& j, const ChatMessage& m);
void from_json(const nlohmann::json& j, ChatMessage& m);
void to_json(nlohmann::json& j, const MatchRecord& r);
void from_json(const nlohmann::json& j, MatchRecord& r);
void to_json(nlohmann::json& j, const RatingLedger& l);
void from_json(const nlohmann::json& j, RatingLedger& l);

struct FeedEntry {
  corpus::Profile candidate;
  double similarity = 0.0;
  std::optional<double> rating;  // average, absent when unrated
  std::string summary;
};

struct MatchSummary {
  std::string match_id;
  std::string other_user;
  std::int64_t matched_at = 0;
};

struct Session {
  std::string token;
  std::string profile_id;
  std::int64_t expires_at = 0;
};

struct ServiceOptions {
  std::uint32_t kdf_iterations = kDefaultKdfIterations;
  std::int64_t token_ttl_ms = 24LL * 60 * 60 * 1000;
  double alpha = 0.5;
  std::size_t max_feed_k = 100;
  std::size_t max_message_bytes = 4000;
  std::size_t lock_stripes = 64;
};

struct ServiceDependencies {
  std::shared_ptr<DocumentStore> store;
  std::shared_ptr<const vectorize::EmbeddingProvider> provider;
  std::shared_ptr<Clock> clock;
  std::shared_ptr<EntropySource> entropy;
  corpus::StopWords stopwords = corpus::StopWords::english();
};

/// Accounts, swipes, matches, chat and ratings over a DocumentStore.
///
/// Store layout: profiles/<id>, accounts/<id>, matches/<a>~<b>,
/// ratings/<id>, meta/counters. Sessions live in memory only.
///
/// Mutations of one match record or one rating ledger are serialized by a
/// striped mutex; registrations are serialized by one mutex. Once a pair is
/// matched further swipes by either side leave the record unchanged.
class MatchService {
 public:
  explicit MatchService(ServiceDependencies deps, ServiceOptions options = {});
  ~MatchService();
  MatchService(const MatchService&) = delete;
  MatchService& operator=(const MatchService&) = delete;

  /// Adds profiles without accounts (the seed corpus). Profiles whose id is
  /// already stored with identical content are skipped. Returns the number
  /// of profiles written.
  std::size_t import_profiles(std::span<const corpus::Profile> profiles);

  /// Assigns a fresh id "u<NNNN>" and persists profile and account.
  Account register_account(corpus::Profile profile, std::string_view password);
  Session login(std::string_view email, std::string_view password);
  /// Profile id of a live session; throws unauthorized otherwise.
  std::string authenticate(std::string_view token);

  MatchRecord swipe(const std::string& actor, const std::string& target, Direction direction);
  ChatMessage send_message(const std::string& sender, std::string_view match_id, std::string_view text);
  /// Messages with ts > since (all when absent), in send order.
  std::vector<ChatMessage> messages(const std::string& viewer, std::string_view match_id,
                                    std::optional<std::int64_t> since = std::nullopt);
  /// Returns the target's new average.
  double rate(const std::string& rater, const std::string& target, int score);

  std::vector<FeedEntry> feed(const std::string& viewer, std::size_t k);
  std::vector<MatchSummary> matches(const std::string& viewer) const;

  std::optional<corpus::Profile> profile(std::string_view id) const;
  std::optional<Account> account(std::string_view id) const;
  std::optional<MatchRecord> record(std::string_view x, std::string_view y) const;
  std::optional<RatingLedger> ratings(std::string_view id) const;

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  std::mutex& stripe(std::string_view key);
  void require_profile(const std::string& id) const;
  MatchRecord load_match_for(const std::string& viewer, std::string_view match_id) const;
  std::shared_ptr<const recommend::CorpusIndex> snapshot();

  ServiceDependencies deps_;
  ServiceOptions options_;
  std::vector<std::mutex> stripes_;

  std::mutex registry_mutex_;  // emails_, counter, profile writes
  std::unordered_map<std::string, std::string> emails_;  // lower-cased email -> id
  std::uint64_t next_user_ = 1;

  std::mutex sessions_mutex_;
  std::unordered_map<std::string, Session> sessions_;

  mutable std::mutex pairs_mutex_;
  std::unordered_map<std::string, std::unordered_set<std::string>> swiped_;   // actor -> targets acted on
  std::unordered_map<std::string, std::unordered_set<std::string>> partners_;  // user -> matched users

  std::mutex snapshot_mutex_;
  std::uint64_t profiles_version_ = 0;  // guarded by registry_mutex_
  std::uint64_t snapshot_version_ = ~std::uint64_t{0};
  std::shared_ptr<const recommend::CorpusIndex> snapshot_;
};

}  // namespace collabrec::match
