#pragma once

#include <array>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace collabrec::corpus {

/// One user record. The first eight data fields follow the survey columns;
/// is_synthetic marks generator output.
struct Profile {
  std::string id;
  std::string name;
  std::string email;
  std::string profession;
  double experience = 0.0;  // years
  std::string interest;
  std::string collaboration_with;
  std::string domain;
  std::string skillset;  // comma-separated skill names
  bool is_synthetic = false;

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Column names of the tabular input, in canonical order.
inline constexpr std::array<std::string_view, 8> kProfileFields = {
    "name", "email", "profession", "experience",
    "interest", "collaboration_with", "domain", "skillset"};

/// Throws a validation Error naming the violated invariant. Does not check
/// email uniqueness, which is a corpus-level property.
void validate(const Profile& profile);

/// Domain and skillset joined by a single space; the text every vectorizer sees.
std::string combined_text(const Profile& profile);

void to_json(nlohmann::json& j, const Profile& p);
void from_json(const nlohmann::json& j, Profile& p);

}  // namespace collabrec::corpus
