#pragma once

#include <cstdint>
#include <random>

#include "freemeixner/rational.hpp"

namespace testutil {

// Small-denominator rationals in [lo, hi]; reproducible across platforms.
class RationalGen {
public:
  explicit RationalGen(std::uint64_t seed) : engine_(seed) {}

  freemeixner::Rational in(long lo, long hi, long max_den = 4) {
    const long den = 1 + static_cast<long>(engine_() % static_cast<std::uint64_t>(max_den));
    const long span = (hi - lo) * den;
    const long num = lo * den + static_cast<long>(engine_() % static_cast<std::uint64_t>(span + 1));
    freemeixner::Rational q(num, den);
    q.canonicalize();
    return q;
  }

  freemeixner::Rational positive(long hi, long max_den = 4) {
    freemeixner::Rational q = in(0, hi, max_den);
    while (q == 0) q = in(0, hi, max_den);
    return q;
  }

  std::uint64_t next(std::uint64_t bound) { return engine_() % bound; }

private:
  std::mt19937_64 engine_;
};

inline freemeixner::Rational Q(const char* s) { return freemeixner::parse_rational(s); }

}  // namespace testutil
