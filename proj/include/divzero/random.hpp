#pragma once

#include "divzero/scalar.hpp"

#include <cstdint>
#include <random>

namespace divzero {

/// Seeded sampler for randomized checks. Bounded draws use plain modular
/// reduction of mt19937_64 output, so sequences do not depend on the
/// standard library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }

  bool coin() { return eng_() & 1u; }

  /// Small rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rat rat(long num_bound = 4, long den_bound = 3) {
    return Rat(BigInt(uniform(-num_bound, num_bound)), BigInt(uniform(1, den_bound)));
  }

  /// Rational combination of powers of zeta_order; order 1 gives a rational.
  Cyc cyc(int order, int terms = 2) {
    Cyc out(rat());
    if (order == 1) return out;
    for (int t = 0; t < terms; ++t) out += Cyc(rat()) * Cyc::root_of_unity(order, uniform(0, order - 1));
    return out;
  }

  template <ExactScalar S>
  S scalar(int order = 1) {
    if constexpr (std::same_as<S, Rat>) {
      return rat();
    } else {
      return cyc(order);
    }
  }

  template <ExactScalar S>
  Vec<S> vec(Eigen::Index n, int order = 1) {
    Vec<S> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scalar<S>(order);
    return v;
  }

  DegVec degree(int d, int radius) {
    DegVec n(d);
    for (int i = 0; i < d; ++i) n[i] = static_cast<int>(uniform(-radius, radius));
    return n;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace divzero
