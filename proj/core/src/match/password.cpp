#include "collabrec/match/password.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include "collabrec/error.hpp"

namespace collabrec::match {
namespace {

constexpr std::size_t kSaltBytes = 16;
constexpr std::size_t kHashBytes = 32;

std::vector<std::uint8_t> pbkdf2(std::string_view password, std::span<const std::uint8_t> salt,
                                 std::uint32_t iterations) {
  std::vector<std::uint8_t> out(kHashBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(out.size()), out.data()) != 1) {
    throw runtime_error("PBKDF2 failed");
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw validation_error("odd-length hex string");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw validation_error("invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return out;
}

PasswordHash hash_password(std::string_view password, EntropySource& entropy, std::uint32_t iterations) {
  if (password.size() < kMinPasswordLength) {
    throw validation_error("password must have at least " + std::to_string(kMinPasswordLength) + " characters");
  }
  if (iterations == 0) throw validation_error("KDF iterations must be positive");
  const auto salt = entropy.bytes(kSaltBytes);
  PasswordHash h;
  h.iterations = iterations;
  h.salt_hex = to_hex(salt);
  h.hash_hex = to_hex(pbkdf2(password, salt, iterations));
  return h;
}

bool verify_password(std::string_view password, const PasswordHash& stored) {
  if (stored.kdf != "pbkdf2-hmac-sha256") throw runtime_error("unsupported KDF " + stored.kdf);
  const auto expected = from_hex(stored.hash_hex);
  const auto actual = pbkdf2(password, from_hex(stored.salt_hex), stored.iterations);
  return expected.size() == actual.size() && CRYPTO_memcmp(expected.data(), actual.data(), actual.size()) == 0;
}

void to_json(nlohmann::json& j, const PasswordHash& h) {
  j = {{"kdf", h.kdf}, {"iterations", h.iterations}, {"salt", h.salt_hex}, {"hash", h.hash_hex}};
}

void from_json(const nlohmann::json& j, PasswordHash& h) {
  j.at("kdf").get_to(h.kdf);
  j.at("iterations").get_to(h.iterations);
  j.at("salt").get_to(h.salt_hex);
  j.at("hash").get_to(h.hash_hex);
}

}  // namespace collabrec::match
