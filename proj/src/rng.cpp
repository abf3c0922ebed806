#include "osfd/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "osfd/errors.hpp"

namespace osfd {

namespace {

// splitmix64 finalizer; decorrelates nearby seeds before they reach the
// Mersenne Twister's linear seeding routine.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : engine_(mix(seed)) {}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw UsageError("SeededRng::below: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

SeededRng SeededRng::split() { return SeededRng(engine_()); }

std::string SeededRng::serialize() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

SeededRng SeededRng::deserialize(const std::string& state) {
  SeededRng rng;
  std::istringstream is(state);
  is >> rng.engine_;
  if (!is) throw UsageError("malformed RNG state");
  return rng;
}

}  // namespace osfd
