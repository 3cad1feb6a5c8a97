#pragma once

#include <cstdint>
#include <limits>

namespace rpfif {

/// SplitMix64. Small, splittable, and bit-reproducible across platforms,
/// which std:: distributions are not.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Independent stream derived from this one.
    SplitMix64 split() noexcept { return SplitMix64((*this)()); }

    /// Uniform integer in [0, n), by the multiply-high reduction.
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

}  // namespace rpfif
