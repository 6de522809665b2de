#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dclab {

using Real = double;

//! Thrown when a computation fails numerically (divergence, NaN, no convergence).
//! CLI maps it to exit code 3; configuration errors map to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  Real x = 0, y = 0, z = 0;
};

inline Real dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

//! Deterministic RNG with a fixed bit mapping so runs reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  //! Uniform in [0,1) with 53 random bits.
  Real uniform() { return static_cast<Real>(eng_() >> 11) * 0x1.0p-53; }

  Real uniform(Real a, Real b) { return a + (b - a) * uniform(); }

  //! Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * static_cast<Real>(hi - lo + 1));
  }

  //! Symmetric amplitude: magnitude in [lo, hi], random sign.
  Real amplitude(Real lo, Real hi) {
    Real m = uniform(lo, hi);
    return uniform() < 0.5 ? -m : m;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

//! FNV-1a over bytes; used for config hashes in run manifests.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v);

//! Shortest round-trip decimal form (%.17g) used for all CSV output.
std::string to_g17(Real v);

}  // namespace dclab
