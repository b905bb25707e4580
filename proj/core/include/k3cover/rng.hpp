#pragma once

#include <complex>
#include <cstdint>

namespace k3cover {

/// Default seed for every command and builder when the caller does not
/// override it; fixed so that default runs are reproducible at the report
/// level ("K3 cover" mnemonic).
inline constexpr std::uint64_t kDefaultSeed = 0x4B33C075ULL;

/// All randomness in the library flows from one of these, derived from a
/// single 64-bit seed (splitmix64).  No ambient entropy anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-a, a).
  double sym(double a = 1.0) { return (2.0 * unit() - 1.0) * a; }

  /// Uniform integer in [lo, hi] inclusive.
  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Point on the unit circle.
  std::complex<double> unit_complex() {
    double t = 6.283185307179586476925286766559 * unit();
    return {std::cos(t), std::sin(t)};
  }

  /// Point in the disk of radius r, bounded away from 0.
  std::complex<double> disk(double r) {
    double m = (0.1 + 0.9 * unit()) * r;
    return m * unit_complex();
  }

  /// Independent substream; used so that parallel or reordered consumers
  /// stay deterministic.
  Rng fork(std::uint64_t salt) {
    Rng child(state_ ^ (salt * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL));
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace k3cover
