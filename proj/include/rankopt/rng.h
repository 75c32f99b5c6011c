// Copyright 2026 The Rankopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based generator "splitmix64-ctr": output n of stream (seed, s) is
// mix64(key(seed, s) + n * golden). Every variate is derived with explicit
// formulas below instead of <random> distributions, whose algorithms are
// left to the standard library and differ across platforms.

#ifndef RANKOPT_RNG_H_
#define RANKOPT_RNG_H_

#include <cmath>
#include <cstdint>
#include <limits>

namespace rankopt {

inline constexpr const char* kRngName = "splitmix64-ctr";

inline constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  using result_type = uint64_t;
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : key_(Mix64(seed ^ Mix64(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<uint64_t>::max();
  }

  result_type operator()() { return Mix64(key_ + (++counter_) * kGolden); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); safe for logarithms.
  double OpenUniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), rejection sampling, n >= 1.
  uint64_t Below(uint64_t n) {
    const uint64_t limit = max() - max() % n;
    uint64_t v;
    do {
      v = (*this)();
    } while (v >= limit);
    return v % n;
  }

  double Exponential() { return -std::log(OpenUniform()); }
  double Gumbel() { return -std::log(-std::log(OpenUniform())); }

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace rankopt

#endif  // RANKOPT_RNG_H_
