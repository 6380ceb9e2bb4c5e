#pragma once

#include <array>
#include <cstdint>
#include <span>

// Counter-based random number generation (Philox4x32-10). Every consumer of
// randomness owns a Stream addressed by (seed, stream id); draws depend only
// on that address and the position within the stream, never on scheduling.
//
// Stream-id derivation tree, used consistently across the toolkit:
//   - library entry points take a caller-supplied 64-bit `stream_base` and
//     use stream ids  base + lane_offset(lane) + index  with index < 2^28;
//   - the experiment runner assigns check number ci the base (ci+1) << 32,
//     so harness streams never collide with bare library use (base 0).

namespace assoc::rng {

struct Philox4x32 {
    // One 10-round Philox4x32 block.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key);
};

enum class Lane : std::uint64_t {
    paths = 0,        // latent-noise generation
    gaussian = 1,     // limit-process sampling
    permutation = 2,  // permutation tests
    oracle = 3,       // Monte Carlo cross-oracles
};

inline constexpr std::uint64_t kLaneShift = 28;
inline constexpr std::uint64_t kMaxLaneIndex = (std::uint64_t{1} << kLaneShift) - 1;

constexpr std::uint64_t stream_id(std::uint64_t base, Lane lane, std::uint64_t index) {
    return base + (static_cast<std::uint64_t>(lane) << kLaneShift) + index;
}

constexpr std::uint64_t check_stream_base(std::uint32_t check_index) {
    return (static_cast<std::uint64_t>(check_index) + 1) << 32;
}

class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream);

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform01();

    // Standard normal via the quantile transform of uniform01().
    double normal();

    std::uint64_t bits64();

    // Unbiased integer in [0, bound) by rejection; bound >= 1.
    std::uint32_t below(std::uint32_t bound);

    void fill_uniform01(std::span<double> out);
    void fill_normal(std::span<double> out);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    unsigned have_ = 0;  // unread 32-bit words in buf_
};

}  // namespace assoc::rng
