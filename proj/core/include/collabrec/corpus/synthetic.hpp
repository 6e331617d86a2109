#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/corpus/profile.hpp"

namespace collabrec::corpus {

/// Manually curated value pool the generator samples from.
struct SkillPool {
  std::vector<std::string> skills;
  std::vector<std::string> domains;
  std::vector<std::string> professions;
  std::vector<std::string> interests;
  std::vector<std::string> collaboration_kinds;
};

/// Every list non-empty and free of duplicates.
void validate(const SkillPool& pool);

SkillPool skill_pool_from_json(const nlohmann::json& j);
SkillPool load_skill_pool(const std::filesystem::path& path);

/// Draws `count` profiles uniformly from the pool with SplitMix64(seed).
/// Skillsets hold 3 to 8 distinct skills, experience is an integer in
/// [0, 20], ids are "s<index>" and emails embed the index so they are unique.
std::vector<Profile> generate_synthetic(const SkillPool& pool, std::size_t count,
                                        std::uint64_t seed);

}  // namespace collabrec::corpus
