#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/match/environment.hpp"

namespace collabrec::match {

inline constexpr std::uint32_t kDefaultKdfIterations = 100'000;
inline constexpr std::size_t kMinPasswordLength = 8;

/// Stored password digest. The KDF name and its parameters travel with the
/// digest so that stored hashes can be migrated later.
struct PasswordHash {
  std::string kdf = "pbkdf2-hmac-sha256";
  std::uint32_t iterations = kDefaultKdfIterations;
  std::string salt_hex;  // 16 bytes
  std::string hash_hex;  // 32 bytes

  friend bool operator==(const PasswordHash&, const PasswordHash&) = default;
};

/// Throws a validation Error for passwords shorter than kMinPasswordLength.
PasswordHash hash_password(std::string_view password, EntropySource& entropy,
                           std::uint32_t iterations = kDefaultKdfIterations);

/// Recomputes the digest with the stored parameters and compares in constant time.
bool verify_password(std::string_view password, const PasswordHash& stored);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

void to_json(nlohmann::json& j, const PasswordHash& h);
void from_json(const nlohmann::json& j, PasswordHash& h);

}  // namespace collabrec::match
