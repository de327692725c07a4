#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace grp::sim {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

/// Sub-streams keyed into the counter so draws for different purposes never overlap.
enum class Stream : std::uint32_t {
  wiener = 1,
  control = 2,
  auxiliary = 3,
};

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, path index, draw index). Paths can be generated in any order
/// or in parallel without coordination and still reproduce bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Two uniforms in the open interval (0, 1) from one Philox block.
  std::array<double, 2> uniform_pair(Stream stream, std::uint64_t path, std::uint32_t index) const noexcept;

  /// Fills `out` with standard normals for (path, step); each step owns
  /// ceil(out.size() / 2) consecutive blocks.
  void normals(Stream stream, std::uint64_t path, std::uint32_t step, std::span<double> out) const noexcept;

 private:
  std::uint64_t seed_;
};

/// Inverse of the standard normal CDF, accurate to a few ulps on (0, 1).
double normal_quantile(double p);

}  // namespace grp::sim
