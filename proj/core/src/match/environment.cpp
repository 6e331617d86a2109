#include "collabrec/match/environment.hpp"

#include <openssl/rand.h>

#include <chrono>
#include <limits>

#include "collabrec/error.hpp"

namespace collabrec::match {

std::int64_t SystemClock::now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::int64_t ManualClock::now_ms() {
  std::lock_guard lock(mutex_);
  const auto t = now_;
  now_ += step_;
  return t;
}

void ManualClock::advance(std::int64_t ms) {
  std::lock_guard lock(mutex_);
  now_ += ms;
}

std::vector<std::uint8_t> SystemEntropy::bytes(std::size_t n) {
  std::vector<std::uint8_t> out(n);
  if (n > static_cast<std::size_t>(std::numeric_limits<int>::max()) ||
      RAND_bytes(out.data(), static_cast<int>(n)) != 1) {
    throw runtime_error("RAND_bytes failed");
  }
  return out;
}

std::vector<std::uint8_t> SeededEntropy::bytes(std::size_t n) {
  std::lock_guard lock(mutex_);
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; i += 8) {
    auto word = rng_.next();
    for (std::size_t b = 0; b < 8 && i + b < n; ++b, word >>= 8) out[i + b] = static_cast<std::uint8_t>(word);
  }
  return out;
}

}  // namespace collabrec::match
