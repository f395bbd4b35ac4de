#ifndef PPMBEAM_RNG_HPP
#define PPMBEAM_RNG_HPP

#include <cstdint>

namespace ppmbeam {

// splitmix64: used only to expand (seed, stream) pairs into engine state.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

// xoshiro256++ (Blackman & Vigna), the per-stream engine.
class Xoshiro256pp {
public:
  Xoshiro256pp(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3);
  std::uint64_t next();

private:
  std::uint64_t s_[4];
};

// One deterministic random stream. Streams are keyed by (seed, stream
// index): equal keys give bit-identical draw sequences, distinct chunk
// indices give independent streams, which is the whole reproducibility
// contract of the simulator. All samplers are hand-rolled so the sequences
// do not depend on the standard library implementation.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_.next(); }

  // [0, 1) with 53 random bits.
  double uniform();
  // (0, 1): rejects exact zero.
  double uniform_pos();
  // Standard normal (Marsaglia polar, spare cached).
  double normal();
  // Gamma(shape, scale 1), shape > 0 (Marsaglia-Tsang; shape < 1 boosted).
  double gamma(double shape);
  // Poisson(mean), mean >= 0 (inversion below 30, Hormann PTRD above).
  long long poisson(double mean);

private:
  Xoshiro256pp engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ppmbeam

#endif
