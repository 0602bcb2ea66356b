#pragma once

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <regex>
#include <string>
#include <string_view>

#include "fidelity/errors.hpp"

namespace fidelity {

using Sha256Digest = std::array<unsigned char, 32>;

inline Sha256Digest sha256(std::string_view bytes) {
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw Error("SHA-256 digest failed");
  }
  return out;
}

inline std::string to_hex(const unsigned char* data, std::size_t n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(kHex[data[i] >> 4]);
    s.push_back(kHex[data[i] & 0xF]);
  }
  return s;
}

/// Evaluation run identifier: "sdb_" + 12 lowercase hex characters.
class RunId {
 public:
  static bool is_valid(std::string_view s) {
    static const std::regex kPattern("^sdb_[0-9a-f]{12}$");
    return std::regex_match(s.begin(), s.end(), kPattern);
  }

  static RunId parse(std::string_view s) {
    if (!is_valid(s)) throw Error("not a run id: " + std::string(s));
    return RunId(std::string(s));
  }

  /// First 12 hex characters of `digest`.
  static RunId from_digest(const Sha256Digest& digest) { return RunId("sdb_" + to_hex(digest.data(), 6)); }

  const std::string& str() const noexcept { return value_; }
  friend bool operator==(const RunId&, const RunId&) = default;

 private:
  explicit RunId(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

namespace run_id_detail {
inline void append_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
}  // namespace run_id_detail

/// Run id derived from a seed and a timestamp string; deterministic in both.
inline RunId new_run_id(std::uint64_t seed, std::string_view timestamp) {
  std::string buf = "fidelity-run-id:v1:";
  run_id_detail::append_u64(buf, seed);
  buf.append(timestamp);
  return RunId::from_digest(sha256(buf));
}

/// Run id pinned to the evaluated content: depends only on the two dataset
/// digests and the seed, so re-running the same evaluation reproduces it.
inline RunId content_run_id(const Sha256Digest& real_digest, const Sha256Digest& synthetic_digest,
                            std::uint64_t seed) {
  std::string buf = "fidelity-run-id:content:v1:";
  buf.append(reinterpret_cast<const char*>(real_digest.data()), real_digest.size());
  buf.append(reinterpret_cast<const char*>(synthetic_digest.data()), synthetic_digest.size());
  run_id_detail::append_u64(buf, seed);
  return RunId::from_digest(sha256(buf));
}

/// ISO-8601 local time with microseconds, e.g. "2025-12-10T17:32:37.389757".
inline std::string format_timestamp(std::chrono::system_clock::time_point tp) {
  using namespace std::chrono;
  const auto us = duration_cast<microseconds>(tp.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(us / 1'000'000);
  long frac = static_cast<long>(us % 1'000'000);
  if (frac < 0) {
    frac += 1'000'000;
    --secs;
  }
  std::tm tm{};
  localtime_r(&secs, &tm);
  char buf[64];
  const auto n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[80];
  std::snprintf(out, sizeof out, "%.*s.%06ld", static_cast<int>(n), buf, frac);
  return out;
}

inline std::string now_timestamp() { return format_timestamp(std::chrono::system_clock::now()); }

}  // namespace fidelity
