#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace matinv {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }

// mpq_class(num, den) does not canonicalize; this does
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

// "p" or "p/q", canonical sign on the numerator
inline std::string to_string(const Rational& q) {
  return q.get_str();
}

// splitmix64: stable cross-platform stream for samplers and derived seeds
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi] via rejection-free modulo (bias negligible for small ranges,
  // but we reject to keep runs reproducible and exact)
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return lo + static_cast<long>(v % span);
  }
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x517cc1b727220a95ULL * (stream + 1)));
  return g.next();
}

}  // namespace matinv
