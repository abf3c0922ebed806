#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace osfd {

/// Seeded pseudo-random stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard. The
/// standard distributions are not, so uniform/normal/shuffle are implemented
/// here to keep streams identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0);

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, one variate per call).
  double normal();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// Independent child stream; the parent advances by one draw.
  SeededRng split();

  std::string serialize() const;
  static SeededRng deserialize(const std::string& state);

  friend bool operator==(const SeededRng& a, const SeededRng& b) {
    return a.engine_ == b.engine_;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace osfd
