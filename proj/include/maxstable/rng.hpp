#pragma once

#include <array>
#include <cstdint>

namespace maxstable {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter and 64-bit key to 128
/// pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based generator state.
///
/// The seed is the Philox key. The 128-bit counter is split into a 64-bit
/// block index (low words) and the 64-bit stream index (high words), so two
/// states with different (seed, stream) never share a block. Output depends
/// only on (seed, stream, number of draws so far), which makes runs
/// reproducible bit-for-bit wherever uint32 arithmetic is available.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return 2 * block_ - buffered_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0,1): (k + 0.5) * 2^-53 with k the top
  /// 53 bits of one 64-bit word. Never returns 0 or 1.
  double uniform() noexcept;

  /// Independent substream for replicate `index`; stream index is mixed with
  /// `index` through splitmix64 so nested derivations stay distinct.
  RngState derive(std::uint64_t index) const noexcept;

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace maxstable
