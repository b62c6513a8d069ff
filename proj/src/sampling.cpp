#include "gyro/sampling.hpp"

#include <cmath>
#include <numbers>

namespace gyro {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

DiskPoint polar(double r, double theta) {
    return DiskPoint(std::polar(r, theta));
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t mix = seed;
    const std::uint64_t a = splitmix64(mix);
    mix = a ^ (index * 0xD1B54A32D192ED03ULL);
    state_ = splitmix64(mix);
}

std::uint64_t SampleStream::next_u64() { return splitmix64(state_); }

double SampleStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SampleStream::below(std::uint64_t bound) {
    // Lemire's multiply-shift; bias is negligible for the small bounds used here.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

DiskPoint sample_disk(SampleStream& s, double cap) {
    const double r = std::sqrt(s.uniform()) * cap;
    const double theta = 2.0 * std::numbers::pi * s.uniform();
    return polar(r, theta);
}

DiskPoint sample_ball_biased(SampleStream& s, double radius, std::uint64_t index) {
    const double u = s.uniform();
    double r = (index % 2 == 0) ? radius * std::sqrt(u) : radius * (0.95 + 0.05 * u);
    if (r >= radius) r = std::nextafter(radius, 0.0);
    const double theta = 2.0 * std::numbers::pi * s.uniform();
    auto z = std::polar(r, theta);
    // polar() can round |z| up past r; pull back inside the open ball.
    while (std::abs(z) >= radius) z *= (1.0 - 0x1.0p-52);
    return DiskPoint(z);
}

}  // namespace gyro
