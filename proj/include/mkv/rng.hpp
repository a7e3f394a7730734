#pragma once

#include <array>
#include <cstdint>

namespace mkv {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Pure function of (key, counter): no state, so draws are independent of scheduling.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Stream tags occupying the last counter word.
enum class Stream : std::uint32_t {
    wiener = 0,
    initial = 1,  // initial-condition draws; the IC stream id is added to this
};

/// Standard normal keyed by (seed, particle, site slot, step, stream).
double counter_normal(std::uint64_t seed, std::uint32_t particle, std::uint32_t site_slot, std::uint32_t step,
                      std::uint32_t stream);

/// Brownian increment over dt for one (particle, site, step) in the Wiener stream.
inline double wiener_increment(std::uint64_t seed, std::uint32_t particle, std::uint32_t site_slot,
                               std::uint32_t step, double sqrt_dt) {
    return sqrt_dt * counter_normal(seed, particle, site_slot, step, static_cast<std::uint32_t>(Stream::wiener));
}

}  // namespace mkv
