#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symmwave {

// All engine failures carry a stable machine-readable code alongside the
// human-readable message, so callers (CLI, tests) can branch on the kind.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

using Rat = mpq_class;

// Parses "-3", "4/5", "2.5" (decimal converted exactly).
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& q);

// xorshift-based deterministic RNG; the standard distributions are not
// guaranteed bit-stable across implementations, this one is ours.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    uint64_t x = state_;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return state_ = x;
  }
  // uniform in [lo, hi] inclusive
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  // small random rational with numerator in [-num_max, num_max] and
  // denominator in [1, den_max]
  Rat rat(long num_max, long den_max) {
    Rat q(range(-num_max, num_max), range(1, den_max));
    q.canonicalize();
    return q;
  }
  Rat nonzero_rat(long num_max, long den_max) {
    for (;;) {
      Rat q = rat(num_max, den_max);
      if (q != 0) return q;
    }
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace symmwave
