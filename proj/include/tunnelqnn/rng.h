/* Copyright 2026 The tunnelqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TUNNELQNN_RNG_H_
#define TUNNELQNN_RNG_H_

#include <cstdint>
#include <random>

namespace tunnelqnn {

// Independent streams derived from one run seed.
enum class RngStream : std::uint32_t {
  kData = 1,
  kSplit = 2,
  kInit = 3,
  kShuffle = 4,
};

inline std::mt19937_64 MakeRng(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

}  // namespace tunnelqnn

#endif  // TUNNELQNN_RNG_H_
