#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace aoicache {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_name(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based generator: output i of a stream is a pure function of
// (seed, stream key, i). Streams with different keys never share state, so
// drawing more or fewer numbers from one leaves the others untouched.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng() = default;
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream_key) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream_key))) {}
  constexpr CounterRng(std::uint64_t seed, std::string_view stream_name) noexcept
      : CounterRng(seed, hash_name(stream_name)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  // Derives an independent child stream (e.g. one per RSU).
  constexpr CounterRng split(std::uint64_t child) const noexcept {
    CounterRng out;
    out.key_ = splitmix64(key_ ^ splitmix64(child + 0x632be59bd9b4e019ULL));
    return out;
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  friend constexpr bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Named streams used by the simulator.
struct RngStreams {
  CounterRng initial_aoi;
  CounterRng uv_arrivals;
  CounterRng requests;
  CounterRng content_generation;

  explicit RngStreams(std::uint64_t seed)
      : initial_aoi(seed, "initial_aoi"),
        uv_arrivals(seed, "uv_arrivals"),
        requests(seed, "requests"),
        content_generation(seed, "content_generation") {}

  friend bool operator==(const RngStreams&, const RngStreams&) = default;
};

}  // namespace aoicache
