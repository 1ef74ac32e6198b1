#pragma once

#include <cstdint>
#include <random>

namespace witnesskit {

// splitmix64 step, used to derive independent substream seeds from a master
// seed. Mixing (master, stream index) through two rounds gives streams that
// do not collide for any realistic workload, and makes every parallel loop
// reproducible independently of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
  std::uint64_t b = splitmix64(s);
  std::uint64_t c = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace witnesskit
