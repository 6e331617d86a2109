#include "collabrec/corpus/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <string_view>

#include "collabrec/error.hpp"
#include "collabrec/rng.hpp"

namespace collabrec::corpus {
namespace {

constexpr std::array<std::string_view, 32> kFirstNames = {
    "Aarav",  "Aditi",  "Alicia", "Arjun",  "Bianca", "Chen",   "Daniel", "Divya",
    "Elena",  "Farah",  "Gautam", "Hannah", "Ishaan", "Jeffery", "Kavya", "Lucas",
    "Meera",  "Nikhil", "Olivia", "Pranav", "Qiu",    "Rahul",  "Sara",   "Tanvi",
    "Usha",   "Victor", "Wei",    "Ximena", "Yash",   "Zara",   "Omar",   "Priya"};

constexpr std::array<std::string_view, 32> kLastNames = {
    "Agarwal", "Bose",   "Castro",  "Das",     "Edwards", "Fernandes", "Gupta",  "Hammond",
    "Iyer",    "Joshi",  "Kumar",   "Lee",     "Menon",   "Nair",      "Okafor", "Patel",
    "Quinn",   "Rao",    "Sharma",  "Thomas",  "Usman",   "Varma",     "Wang",   "Xavier",
    "Yadav",   "Zhou",   "Krishnan", "Mehta",  "Pillai",  "Reddy",     "Singh",  "Kapoor"};

constexpr std::size_t kMinSkills = 3;
constexpr std::size_t kMaxSkills = 8;
constexpr std::int64_t kMaxExperience = 20;

void check_list(const std::vector<std::string>& list, std::string_view name) {
  if (list.empty()) throw validation_error("skill pool: '" + std::string(name) + "' is empty");
  std::set<std::string> seen;
  for (const auto& item : list) {
    if (!seen.insert(item).second) {
      throw validation_error("skill pool: duplicate entry '" + item + "' in '" + std::string(name) + "'");
    }
  }
}

template <typename List>
const auto& pick(const List& list, SplitMix64& rng) {
  return list[rng.below(list.size())];
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string synthetic_id(std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return "s" + digits;
}

}  // namespace

void validate(const SkillPool& pool) {
  check_list(pool.skills, "skills");
  check_list(pool.domains, "domains");
  check_list(pool.professions, "professions");
  check_list(pool.interests, "interests");
  check_list(pool.collaboration_kinds, "collaboration_kinds");
  if (pool.skills.size() < kMinSkills) {
    throw validation_error("skill pool: need at least 3 skills");
  }
}

SkillPool skill_pool_from_json(const nlohmann::json& j) {
  SkillPool pool;
  try {
    j.at("skills").get_to(pool.skills);
    j.at("domains").get_to(pool.domains);
    j.at("professions").get_to(pool.professions);
    j.at("interests").get_to(pool.interests);
    j.at("collaboration_kinds").get_to(pool.collaboration_kinds);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("skill pool: ") + e.what());
  }
  return pool;
}

SkillPool load_skill_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open skill pool " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("skill pool " + path.string() + ": " + e.what());
  }
  return skill_pool_from_json(j);
}

std::vector<Profile> generate_synthetic(const SkillPool& pool, std::size_t count,
                                        std::uint64_t seed) {
  if (count == 0) throw validation_error("synthetic count must be at least 1");
  validate(pool);

  SplitMix64 rng(seed);
  std::vector<std::size_t> order(pool.skills.size());
  std::vector<Profile> out;
  out.reserve(count);

  for (std::size_t i = 0; i < count; ++i) {
    Profile p;
    const auto first = pick(kFirstNames, rng);
    const auto last = pick(kLastNames, rng);
    p.id = synthetic_id(i + 1);
    p.name = std::string(first) + " " + std::string(last);
    p.email = lower(first) + "." + lower(last) + "." + std::to_string(i + 1) + "@example.org";
    p.profession = pick(pool.professions, rng);
    p.experience = static_cast<double>(rng.between(0, kMaxExperience));
    p.interest = pick(pool.interests, rng);
    p.collaboration_with = pick(pool.collaboration_kinds, rng);
    p.domain = pick(pool.domains, rng);

    const std::size_t upper = std::min(kMaxSkills, pool.skills.size());
    const auto n_skills = static_cast<std::size_t>(rng.between(kMinSkills, upper));
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first n_skills slots become the sample.
    for (std::size_t k = 0; k < n_skills; ++k) {
      std::swap(order[k], order[k + rng.below(order.size() - k)]);
    }
    for (std::size_t k = 0; k < n_skills; ++k) {
      if (k) p.skillset += ", ";
      p.skillset += pool.skills[order[k]];
    }
    p.is_synthetic = true;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace collabrec::corpus
