#ifndef RELUANGLE_RNG_HPP
#define RELUANGLE_RNG_HPP

#include <cstdint>

namespace reluangle::rng {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 64-bit
// key is the user seed; the 128-bit counter encodes (stream, block). Any
// (seed, stream, block) triple produces the same output independent of call
// order, so per-trial streams stay reproducible under parallel execution.
class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1), 53-bit resolution.
    double next_double();

    // Standard normal via the inverse-CDF transform (Wichura's AS 241).
    double next_normal();

    // Jump to 128-bit output block `block` within this stream.
    void seek(std::uint64_t block);

  private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t stream_[2];
    std::uint64_t block_ = 0;
    std::uint32_t out_[4];
    int have_ = 0;  // uint32 lanes left in out_
};

// Inverse of the standard normal CDF, accurate to ~1e-15 (AS 241, PPND16).
double inverse_normal_cdf(double p);

// Standard normal CDF (via erfc).
double normal_cdf(double z);

}  // namespace reluangle::rng

#endif
