#include "assoc/rng.hpp"

#include <stdexcept>

#include "assoc/normal.hpp"

namespace assoc::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> c,
                                               std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void Stream::refill() {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed_),
        static_cast<std::uint32_t>(seed_ >> 32),
    };
    buf_ = Philox4x32::block(counter, key);
    ++block_;
    have_ = 4;
}

std::uint64_t Stream::bits64() {
    if (have_ < 2) refill();
    const std::uint64_t lo = buf_[4 - have_];
    const std::uint64_t hi = buf_[5 - have_];
    have_ -= 2;
    return (hi << 32) | lo;
}

double Stream::uniform01() {
    // 53 significant bits, offset by half a step: values lie in
    // [2^-54, 1 - 2^-54], so downstream quantile transforms stay finite.
    return (static_cast<double>(bits64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() { return normal_quantile(uniform01()); }

std::uint32_t Stream::below(std::uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("Stream::below: bound must be >= 1");
    // Rejection on the top 32 bits keeps the draw unbiased.
    const std::uint32_t limit = 0xFFFFFFFFu - 0xFFFFFFFFu % bound;
    for (;;) {
        const std::uint32_t v = static_cast<std::uint32_t>(bits64() >> 32);
        if (v < limit) return v % bound;
    }
}

void Stream::fill_uniform01(std::span<double> out) {
    for (double& v : out) v = uniform01();
}

void Stream::fill_normal(std::span<double> out) {
    for (double& v : out) v = normal_quantile(uniform01());
}

}  // namespace assoc::rng
