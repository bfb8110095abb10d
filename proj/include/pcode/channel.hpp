#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pcode/frame.hpp"

namespace pcode {

/// Reproducible random stream. Conversions to bits, uniforms and states use
/// only the raw 64-bit engine output, so sequences are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n), n >= 1 (multiply-shift, negligible bias for small n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

/// Stream roles; each (experiment point, iteration, role) gets its own stream.
enum class StreamRole : std::uint64_t { info = 1, states = 2, channel = 3, projection = 4 };

Rng make_stream(std::uint64_t master_seed, std::uint64_t point, std::uint64_t iteration, StreamRole role);

enum class ChannelKind { bec, bsc, z };

std::string to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

/// Memoryless per-packet-label impairment.
struct ChannelModel {
  ChannelKind kind = ChannelKind::bec;
  double p = 0.0;

  ChannelModel() = default;
  ChannelModel(ChannelKind k, double prob);
};

/// Applies the model independently to every packet label of `frame`. One
/// uniform draw per packet regardless of the model, so equal seeds give
/// coupled impairment patterns across different p.
ReceivedFrame transmit(const Frame& frame, const ChannelModel& model, Rng& rng);

/// Primary state process: i.i.d. frame states with P_S(s) = C(F,s)/2^F.
class StateProcess {
 public:
  explicit StateProcess(int frame_length);
  int frame_length() const { return frame_length_; }

  /// The weight of F fair coin flips has exactly the binomial law.
  int draw(Rng& rng) const;

 private:
  int frame_length_;
};

std::vector<int> draw_states(const StateProcess& process, std::size_t count, Rng& rng);

}  // namespace pcode
