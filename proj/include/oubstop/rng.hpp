#pragma once

#include <cstdint>
#include <random>

namespace oubstop {

/// Independent pseudo-random stream addressed by (seed, stream id).
///
/// Two streams built from the same pair yield identical sequences, and
/// streams with different ids are seeded through a seed sequence so that
/// path blocks can be handed to any worker without changing results.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    double normal();
    double uniform();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace oubstop
