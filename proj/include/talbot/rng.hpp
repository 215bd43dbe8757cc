// Copyright (c) 2026 talbotsim developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace talbot {

// Philox4x32-10 counter-based generator.  A (seed, stream, counter) triple
// maps to four 32-bit words; identical inputs give identical outputs on every
// platform, and disjoint counters can be drawn in any order, which keeps
// parallel Monte Carlo batches reproducible.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  std::array<std::uint32_t, 4> block(std::uint64_t counter) const {
    std::array<std::uint32_t, 4> x{static_cast<std::uint32_t>(counter),
                                   static_cast<std::uint32_t>(counter >> 32),
                                   static_cast<std::uint32_t>(stream_),
                                   static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * x[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * x[2];
      std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32), l0 = static_cast<std::uint32_t>(p0);
      std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32), l1 = static_cast<std::uint32_t>(p1);
      x = {h1 ^ x[1] ^ k0, l1, h0 ^ x[3] ^ k1, l0};
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return x;
  }

  // Two uniforms in (0, 1] from one block.
  std::array<double, 2> uniforms(std::uint64_t counter) const {
    auto b = block(counter);
    auto to_unit = [](std::uint32_t hi, std::uint32_t lo) {
      std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
      return (static_cast<double>(u >> 11) + 1.0) * 0x1.0p-53;
    };
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
  }

  // Standard normal pair by Box-Muller.
  std::array<double, 2> normals(std::uint64_t counter) const;

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
};

}  // namespace talbot
