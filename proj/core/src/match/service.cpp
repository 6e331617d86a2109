#include "collabrec/match/service.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <functional>

#include "collabrec/error.hpp"
#include "collabrec/recommend/recommender.hpp"

namespace collabrec::match {
namespace {

constexpr std::string_view kProfiles = "profiles";
constexpr std::string_view kAccounts = "accounts";
constexpr std::string_view kMatches = "matches";
constexpr std::string_view kRatings = "ratings";
constexpr std::string_view kMeta = "meta";
constexpr std::string_view kCounters = "counters";

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string user_id(std::uint64_t n) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "u%04llu", static_cast<unsigned long long>(n));
  return buf;
}

// Splits "<a>~<b>"; nullopt when malformed or not in canonical order.
std::optional<std::pair<std::string, std::string>> split_match_id(std::string_view id) {
  const auto pos = id.find('~');
  if (pos == std::string_view::npos || pos == 0 || pos + 1 == id.size()) return std::nullopt;
  std::string a(id.substr(0, pos));
  std::string b(id.substr(pos + 1));
  if (b.find('~') != std::string::npos || !(a < b)) return std::nullopt;
  return std::pair{std::move(a), std::move(b)};
}

}  // namespace

std::string_view to_string(SwipeStatus status) {
  switch (status) {
    case SwipeStatus::pending: return "pending";
    case SwipeStatus::right: return "right";
    case SwipeStatus::left: return "left";
  }
  return "pending";
}

SwipeStatus parse_swipe_status(std::string_view text) {
  if (text == "pending") return SwipeStatus::pending;
  if (text == "right") return SwipeStatus::right;
  if (text == "left") return SwipeStatus::left;
  throw validation_error("unknown swipe status '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
  if (text == "right") return Direction::right;
  if (text == "left") return Direction::left;
  throw validation_error("direction must be 'right' or 'left'");
}

SwipeStatus MatchRecord::status_of(std::string_view user) const {
  if (user == user_a) return status_a;
  if (user == user_b) return status_b;
  throw validation_error("not a participant");
}

const std::string& MatchRecord::other(std::string_view user) const {
  if (user == user_a) return user_b;
  if (user == user_b) return user_a;
  throw validation_error("not a participant");
}

std::string match_key(std::string_view x, std::string_view y) {
  return x < y ? std::string(x) + "~" + std::string(y) : std::string(y) + "~" + std::string(x);
}

void to_json(nlohmann::json& j, const Account& a) {
  j = {{"profile_id", a.profile_id}, {"email", a.email}, {"password", a.password}, {"created_at", a.created_at}};
}

void from_json(const nlohmann::json& j, Account& a) {
  j.at("profile_id").get_to(a.profile_id);
  j.at("email").get_to(a.email);
  j.at("password").get_to(a.password);
  j.at("created_at").get_to(a.created_at);
}

void to_json(nlohmann::json& j, const ChatMessage& m) {
  j = {{"seq", m.seq}, {"sender", m.sender}, {"text", m.text}, {"ts", m.ts}};
}

void from_json(const nlohmann::json& j, ChatMessage& m) {
  j.at("seq").get_to(m.seq);
  j.at("sender").get_to(m.sender);
  j.at("text").get_to(m.text);
  j.at("ts").get_to(m.ts);
}

void to_json(nlohmann::json& j, const MatchRecord& r) {
  j = {{"user_a", r.user_a},
       {"user_b", r.user_b},
       {"status_a", to_string(r.status_a)},
       {"status_b", to_string(r.status_b)},
       {"matched", r.matched},
       {"matched_at", r.matched_at ? nlohmann::json(*r.matched_at) : nlohmann::json(nullptr)},
       {"chat", r.chat}};
}

void from_json(const nlohmann::json& j, MatchRecord& r) {
  j.at("user_a").get_to(r.user_a);
  j.at("user_b").get_to(r.user_b);
  r.status_a = parse_swipe_status(j.at("status_a").get<std::string>());
  r.status_b = parse_swipe_status(j.at("status_b").get<std::string>());
  j.at("matched").get_to(r.matched);
  const auto& at = j.at("matched_at");
  r.matched_at = at.is_null() ? std::nullopt : std::optional<std::int64_t>(at.get<std::int64_t>());
  j.at("chat").get_to(r.chat);
}

void to_json(nlohmann::json& j, const RatingLedger& l) {
  j = {{"profile_id", l.profile_id}, {"ratings", l.ratings}, {"average", l.average}};
}

void from_json(const nlohmann::json& j, RatingLedger& l) {
  j.at("profile_id").get_to(l.profile_id);
  j.at("ratings").get_to(l.ratings);
  j.at("average").get_to(l.average);
}

MatchService::MatchService(ServiceDependencies deps, ServiceOptions options)
    : deps_(std::move(deps)), options_(options), stripes_(std::max<std::size_t>(1, options.lock_stripes)) {
  if (!deps_.store || !deps_.provider || !deps_.clock || !deps_.entropy) {
    throw validation_error("match service needs a store, an embedding provider, a clock and an entropy source");
  }
  if (options_.kdf_iterations == 0) throw validation_error("KDF iterations must be positive");
  if (!(options_.alpha >= 0.0 && options_.alpha <= 1.0)) throw validation_error("alpha must lie in [0, 1]");

  for (const auto& [id, doc] : deps_.store->scan(kProfiles)) {
    emails_.emplace(lower(doc.at("email").get<std::string>()), id);
  }
  if (auto counters = deps_.store->get(kMeta, kCounters)) next_user_ = counters->at("next_user").get<std::uint64_t>();
  for (const auto& [key, doc] : deps_.store->scan(kMatches)) {
    const auto r = doc.get<MatchRecord>();
    if (r.status_a != SwipeStatus::pending) swiped_[r.user_a].insert(r.user_b);
    if (r.status_b != SwipeStatus::pending) swiped_[r.user_b].insert(r.user_a);
    if (r.matched) {
      partners_[r.user_a].insert(r.user_b);
      partners_[r.user_b].insert(r.user_a);
    }
  }
}

MatchService::~MatchService() = default;

std::mutex& MatchService::stripe(std::string_view key) {
  return stripes_[std::hash<std::string_view>{}(key) % stripes_.size()];
}

std::size_t MatchService::import_profiles(std::span<const corpus::Profile> profiles) {
  std::lock_guard lock(registry_mutex_);
  std::size_t written = 0;
  for (const auto& p : profiles) {
    corpus::validate(p);
    check_store_name(p.id);
    if (auto existing = deps_.store->get(kProfiles, p.id)) {
      if (existing->get<corpus::Profile>() == p) continue;
      throw Error(ErrorKind::conflict, "profile " + p.id + " already exists with different content");
    }
    const auto email = lower(p.email);
    if (emails_.contains(email)) throw Error(ErrorKind::conflict, "email already registered: " + p.email);
    deps_.store->put(kProfiles, p.id, p);
    emails_.emplace(email, p.id);
    ++written;
  }
  if (written > 0) ++profiles_version_;
  return written;
}

Account MatchService::register_account(corpus::Profile profile, std::string_view password) {
  profile.is_synthetic = false;
  corpus::validate(profile);
  if (password.size() < kMinPasswordLength) {
    throw validation_error("password must have at least " + std::to_string(kMinPasswordLength) + " characters");
  }

  std::lock_guard lock(registry_mutex_);
  const auto email = lower(profile.email);
  if (emails_.contains(email)) throw Error(ErrorKind::conflict, "email already registered");

  std::string id;
  do {
    id = user_id(next_user_++);
  } while (deps_.store->get(kProfiles, id));
  profile.id = id;

  Account account;
  account.profile_id = id;
  account.email = profile.email;
  account.password = hash_password(password, *deps_.entropy, options_.kdf_iterations);
  account.created_at = deps_.clock->now_ms();

  deps_.store->put(kProfiles, id, profile);
  deps_.store->put(kAccounts, id, account);
  deps_.store->put(kMeta, kCounters, nlohmann::json{{"next_user", next_user_}});
  emails_.emplace(email, id);
  ++profiles_version_;
  return account;
}

Session MatchService::login(std::string_view email, std::string_view password) {
  std::optional<std::string> id;
  {
    std::lock_guard lock(registry_mutex_);
    if (auto it = emails_.find(lower(email)); it != emails_.end()) id = it->second;
  }
  const auto failed = Error(ErrorKind::unauthorized, "invalid email or password");
  if (!id) throw failed;
  auto doc = deps_.store->get(kAccounts, *id);
  if (!doc) throw failed;
  if (!verify_password(password, doc->get<Account>().password)) throw failed;

  Session session;
  session.token = to_hex(deps_.entropy->bytes(32));
  session.profile_id = *id;
  session.expires_at = deps_.clock->now_ms() + options_.token_ttl_ms;
  std::lock_guard lock(sessions_mutex_);
  sessions_[session.token] = session;
  return session;
}

std::string MatchService::authenticate(std::string_view token) {
  const auto now = deps_.clock->now_ms();
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(std::string(token));
  if (it == sessions_.end()) throw Error(ErrorKind::unauthorized, "unknown or expired token");
  if (it->second.expires_at <= now) {
    sessions_.erase(it);
    throw Error(ErrorKind::unauthorized, "unknown or expired token");
  }
  return it->second.profile_id;
}

void MatchService::require_profile(const std::string& id) const {
  if (!is_store_name(id) || !deps_.store->get(kProfiles, id)) throw Error(ErrorKind::not_found, "unknown profile " + id);
}

MatchRecord MatchService::swipe(const std::string& actor, const std::string& target, Direction direction) {
  if (actor == target) throw Error(ErrorKind::forbidden, "cannot swipe on yourself");
  require_profile(actor);
  require_profile(target);

  const auto key = match_key(actor, target);
  std::lock_guard lock(stripe(key));
  MatchRecord record;
  if (auto doc = deps_.store->get(kMatches, key)) {
    record = doc->get<MatchRecord>();
  } else {
    record.user_a = std::min(actor, target);
    record.user_b = std::max(actor, target);
  }
  if (record.matched) return record;

  const auto status = direction == Direction::right ? SwipeStatus::right : SwipeStatus::left;
  auto& slot = actor == record.user_a ? record.status_a : record.status_b;
  if (slot == status) return record;
  slot = status;
  record.matched = record.status_a == SwipeStatus::right && record.status_b == SwipeStatus::right;
  if (record.matched) record.matched_at = deps_.clock->now_ms();
  deps_.store->put(kMatches, key, record);

  std::lock_guard pairs(pairs_mutex_);
  swiped_[actor].insert(target);
  if (record.matched) {
    partners_[actor].insert(target);
    partners_[target].insert(actor);
  }
  return record;
}

MatchRecord MatchService::load_match_for(const std::string& viewer, std::string_view match_id) const {
  const auto pair = split_match_id(match_id);
  if (!pair) throw Error(ErrorKind::not_found, "unknown match " + std::string(match_id));
  if (viewer != pair->first && viewer != pair->second) throw Error(ErrorKind::forbidden, "not a participant of this match");
  require_profile(pair->first);
  require_profile(pair->second);
  auto doc = deps_.store->get(kMatches, match_id);
  if (!doc) throw Error(ErrorKind::forbidden, "pair is not matched");
  auto record = doc->get<MatchRecord>();
  if (!record.matched) throw Error(ErrorKind::forbidden, "pair is not matched");
  return record;
}

ChatMessage MatchService::send_message(const std::string& sender, std::string_view match_id, std::string_view text) {
  if (blank(text)) throw validation_error("message text must not be empty");
  if (text.size() > options_.max_message_bytes) throw validation_error("message text too long");

  const std::string key(match_id);
  load_match_for(sender, key);  // membership and gating before taking the lock
  std::lock_guard lock(stripe(key));
  auto record = load_match_for(sender, key);
  ChatMessage message;
  message.seq = record.chat.size() + 1;
  message.sender = sender;
  message.text = std::string(text);
  message.ts = deps_.clock->now_ms();
  if (!record.chat.empty()) message.ts = std::max(message.ts, record.chat.back().ts + 1);
  record.chat.push_back(message);
  deps_.store->put(kMatches, key, record);
  return message;
}

std::vector<ChatMessage> MatchService::messages(const std::string& viewer, std::string_view match_id,
                                                std::optional<std::int64_t> since) {
  auto record = load_match_for(viewer, match_id);
  if (!since) return record.chat;
  std::vector<ChatMessage> out;
  for (auto& m : record.chat) {
    if (m.ts > *since) out.push_back(std::move(m));
  }
  return out;
}

double MatchService::rate(const std::string& rater, const std::string& target, int score) {
  if (score < 1 || score > 5) throw validation_error("score must be an integer from 1 to 5");
  if (rater == target) throw Error(ErrorKind::forbidden, "cannot rate yourself");
  require_profile(rater);
  require_profile(target);
  auto record = deps_.store->get(kMatches, match_key(rater, target));
  if (!record || !record->at("matched").get<bool>()) {
    throw Error(ErrorKind::forbidden, "only matched collaborators can rate each other");
  }

  std::lock_guard lock(stripe(std::string(kRatings) + "/" + target));
  RatingLedger ledger;
  if (auto doc = deps_.store->get(kRatings, target)) {
    ledger = doc->get<RatingLedger>();
  } else {
    ledger.profile_id = target;
  }
  ledger.ratings[rater] = score;
  long total = 0;
  for (const auto& [who, s] : ledger.ratings) total += s;
  ledger.average = static_cast<double>(total) / static_cast<double>(ledger.ratings.size());
  deps_.store->put(kRatings, target, ledger);
  return ledger.average;
}

std::shared_ptr<const recommend::CorpusIndex> MatchService::snapshot() {
  std::lock_guard lock(snapshot_mutex_);
  std::uint64_t version;
  std::vector<corpus::Profile> profiles;
  {
    std::lock_guard registry(registry_mutex_);
    version = profiles_version_;
    if (snapshot_ && version == snapshot_version_) return snapshot_;
    for (const auto& [id, doc] : deps_.store->scan(kProfiles)) profiles.push_back(doc.get<corpus::Profile>());
  }
  recommend::IndexOptions options;
  options.alpha = options_.alpha;
  options.allow_degenerate = true;
  const std::array techniques{vectorize::Technique::hybrid};
  snapshot_ = std::make_shared<const recommend::CorpusIndex>(
      recommend::build_index(std::move(profiles), deps_.stopwords, deps_.provider.get(), techniques, options));
  snapshot_version_ = version;
  return snapshot_;
}

std::vector<FeedEntry> MatchService::feed(const std::string& viewer, std::size_t k) {
  if (k == 0 || k > options_.max_feed_k) {
    throw validation_error("k must lie in [1, " + std::to_string(options_.max_feed_k) + "]");
  }
  require_profile(viewer);
  const auto index = snapshot();

  std::unordered_set<std::string> exclude;
  {
    std::lock_guard lock(pairs_mutex_);
    if (auto it = swiped_.find(viewer); it != swiped_.end()) exclude = it->second;
    if (auto it = partners_.find(viewer); it != partners_.end()) exclude.insert(it->second.begin(), it->second.end());
  }

  recommend::RecommendationQuery query;
  query.target_id = viewer;
  query.technique = vectorize::Technique::hybrid;
  query.k = k;
  std::vector<recommend::Recommendation> recs;
  try {
    recs = recommend::recommend(query, *index, exclude);
  } catch (const recommend::NoCandidatesError&) {
    return {};
  }

  std::vector<FeedEntry> out;
  out.reserve(recs.size());
  for (const auto& rec : recs) {
    FeedEntry entry;
    entry.candidate = index->profile(*index->find(rec.candidate_id));
    entry.similarity = rec.similarity;
    if (auto ledger = ratings(rec.candidate_id)) entry.rating = ledger->average;
    entry.summary = entry.candidate.domain + " | " + entry.candidate.skillset;
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<MatchSummary> MatchService::matches(const std::string& viewer) const {
  std::vector<std::string> others;
  {
    std::lock_guard lock(pairs_mutex_);
    if (auto it = partners_.find(viewer); it != partners_.end()) others.assign(it->second.begin(), it->second.end());
  }
  std::vector<MatchSummary> out;
  for (const auto& other : others) {
    auto record = this->record(viewer, other);
    if (!record || !record->matched) continue;
    out.push_back({record->id(), other, record->matched_at.value_or(0)});
  }
  std::sort(out.begin(), out.end(), [](const MatchSummary& a, const MatchSummary& b) {
    return a.matched_at != b.matched_at ? a.matched_at < b.matched_at : a.match_id < b.match_id;
  });
  return out;
}

std::optional<corpus::Profile> MatchService::profile(std::string_view id) const {
  if (!is_store_name(id)) return std::nullopt;
  auto doc = deps_.store->get(kProfiles, id);
  if (!doc) return std::nullopt;
  return doc->get<corpus::Profile>();
}

std::optional<Account> MatchService::account(std::string_view id) const {
  if (!is_store_name(id)) return std::nullopt;
  auto doc = deps_.store->get(kAccounts, id);
  if (!doc) return std::nullopt;
  return doc->get<Account>();
}

std::optional<MatchRecord> MatchService::record(std::string_view x, std::string_view y) const {
  if (!is_store_name(x) || !is_store_name(y)) return std::nullopt;
  auto doc = deps_.store->get(kMatches, match_key(x, y));
  if (!doc) return std::nullopt;
  return doc->get<MatchRecord>();
}

std::optional<RatingLedger> MatchService::ratings(std::string_view id) const {
  if (!is_store_name(id)) return std::nullopt;
  auto doc = deps_.store->get(kRatings, id);
  if (!doc) return std::nullopt;
  return doc->get<RatingLedger>();
}

}  // namespace collabrec::match
