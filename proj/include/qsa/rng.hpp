#pragma once

// Counter-based random streams.  Every draw is a pure function of
// (seed, stream, counter), so sample i of a Monte Carlo run is the same
// number regardless of how the loop is chunked or threaded.  Gaussians come
// from a hand-rolled Box-Muller: std::normal_distribution is not guaranteed
// to produce identical streams across standard library implementations.

#include <cmath>
#include <cstdint>
#include <vector>

namespace qsa {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0)
      : base_(detail::mix64(detail::mix64(seed ^ 0x853c49e6748fea9bULL) ^
                            detail::mix64(stream ^ (salt * 0xda942042e4dd58b5ULL)))) {}

  std::uint64_t next_u64() { return detail::mix64(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on [0, 1): 53 mantissa bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]: safe as a log argument.
  double next_uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the pair's second value is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = next_uniform_pos();
    double v = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double ang = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(ang);
    have_spare_ = true;
    return r * std::cos(ang);
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Uniform point on the unit sphere S^{d-1}: normalized Gaussian vector.
inline std::vector<double> sphere_point(CounterRng& rng, int d) {
  std::vector<double> x(d);
  double nsq = 0.0;
  do {
    nsq = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = rng.next_gaussian();
      nsq += x[i] * x[i];
    }
  } while (nsq == 0.0);
  double inv = 1.0 / std::sqrt(nsq);
  for (auto& c : x) c *= inv;
  return x;
}

/// Uniform point in the unit ball of dimension d: sphere point scaled by
/// U^{1/d}.
inline std::vector<double> ball_point(CounterRng& rng, int d) {
  auto x = sphere_point(rng, d);
  double r = std::pow(rng.next_uniform_pos(), 1.0 / d);
  for (auto& c : x) c *= r;
  return x;
}

/// Volume-uniform point in the annulus r0 <= ||x|| <= r1 of dimension d.
inline std::vector<double> annulus_point(CounterRng& rng, int d, double r0, double r1) {
  auto x = sphere_point(rng, d);
  double u = rng.next_uniform();
  double rd = std::pow(r0, d) + u * (std::pow(r1, d) - std::pow(r0, d));
  double r = std::pow(rd, 1.0 / d);
  for (auto& c : x) c *= r;
  return x;
}

}  // namespace qsa
