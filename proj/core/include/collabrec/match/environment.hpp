#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "collabrec/rng.hpp"

namespace collabrec::match {

/// Milliseconds since the Unix epoch, UTC.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() override;
};

/// Starts at `start` and advances by `step` on every reading. Used for
/// replayable runs.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::int64_t start = 1'700'000'000'000, std::int64_t step = 1) : now_(start), step_(step) {}
  std::int64_t now_ms() override;
  void advance(std::int64_t ms);

 private:
  std::mutex mutex_;
  std::int64_t now_;
  std::int64_t step_;
};

class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual std::vector<std::uint8_t> bytes(std::size_t n) = 0;
};

/// OpenSSL RAND_bytes.
class SystemEntropy final : public EntropySource {
 public:
  std::vector<std::uint8_t> bytes(std::size_t n) override;
};

/// Deterministic byte stream for replay and tests. Not for production salts.
class SeededEntropy final : public EntropySource {
 public:
  explicit SeededEntropy(std::uint64_t seed) : rng_(seed) {}
  std::vector<std::uint8_t> bytes(std::size_t n) override;

 private:
  std::mutex mutex_;
  SplitMix64 rng_;
};

}  // namespace collabrec::match
