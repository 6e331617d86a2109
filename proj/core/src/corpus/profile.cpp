#include "collabrec/corpus/profile.hpp"

#include <cmath>

#include "collabrec/error.hpp"

namespace collabrec::corpus {
namespace {

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

void validate(const Profile& profile) {
  if (blank(profile.email)) throw validation_error("email is empty");
  if (!std::isfinite(profile.experience)) throw validation_error("experience is not a number");
  if (profile.experience < 0.0) throw validation_error("experience is negative");
  if (blank(profile.domain)) throw validation_error("domain is empty");
  if (blank(profile.skillset)) throw validation_error("skillset is empty");
}

std::string combined_text(const Profile& profile) {
  return profile.domain + " " + profile.skillset;
}

void to_json(nlohmann::json& j, const Profile& p) {
  j = nlohmann::json{{"id", p.id},
                     {"name", p.name},
                     {"email", p.email},
                     {"profession", p.profession},
                     {"experience", p.experience},
                     {"interest", p.interest},
                     {"collaboration_with", p.collaboration_with},
                     {"domain", p.domain},
                     {"skillset", p.skillset},
                     {"is_synthetic", p.is_synthetic}};
}

void from_json(const nlohmann::json& j, Profile& p) {
  p.id = j.value("id", "");
  j.at("name").get_to(p.name);
  j.at("email").get_to(p.email);
  j.at("profession").get_to(p.profession);
  j.at("experience").get_to(p.experience);
  j.at("interest").get_to(p.interest);
  j.at("collaboration_with").get_to(p.collaboration_with);
  j.at("domain").get_to(p.domain);
  j.at("skillset").get_to(p.skillset);
  p.is_synthetic = j.value("is_synthetic", false);
}

}  // namespace collabrec::corpus
