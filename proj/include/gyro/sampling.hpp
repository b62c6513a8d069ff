#pragma once

#include <cstdint>

#include "gyro/disk.hpp"

namespace gyro {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Counter-based stream: the draws for sample i depend only on (seed, i),
/// so samples can be evaluated in any order with identical results.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// Uniform-area point of the disk with radius sqrt(u) * cap.
DiskPoint sample_disk(SampleStream& s, double cap = 0.999);

/// Point of the open ball of the given radius. Even `index` values are
/// uniform by area, odd ones lie in the shell [0.95 radius, radius).
DiskPoint sample_ball_biased(SampleStream& s, double radius, std::uint64_t index);

}  // namespace gyro
