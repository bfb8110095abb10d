#include "pcode/channel.hpp"

#include <bit>
#include <stdexcept>

#include "pcode/combinatorics.hpp"
#include "pcode/detail/seeding.hpp"

namespace pcode {

Rng make_stream(std::uint64_t master_seed, std::uint64_t point, std::uint64_t iteration, StreamRole role) {
  return Rng(detail::derive_seed({master_seed, point, iteration, static_cast<std::uint64_t>(role)}));
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::bec: return "bec";
    case ChannelKind::bsc: return "bsc";
    case ChannelKind::z: return "z";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "bec" || name == "BEC") return ChannelKind::bec;
  if (name == "bsc" || name == "BSC") return ChannelKind::bsc;
  if (name == "z" || name == "Z") return ChannelKind::z;
  throw std::domain_error("unknown channel '" + std::string(name) + "' (expected bec, bsc or z)");
}

ChannelModel::ChannelModel(ChannelKind k, double prob) : kind(k), p(prob) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::domain_error("ChannelModel: p must lie in [0, 1]");
}

ReceivedFrame transmit(const Frame& frame, const ChannelModel& model, Rng& rng) {
  ReceivedFrame out{frame.bits, 0, frame.length};
  for (int i = 0; i < frame.length; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (frame.length - 1 - i);
    const bool hit = rng.uniform() < model.p;
    if (!hit) continue;
    switch (model.kind) {
      case ChannelKind::bec:
        out.erased |= bit;
        out.bits &= ~bit;
        break;
      case ChannelKind::bsc:
        out.bits ^= bit;
        break;
      case ChannelKind::z:
        out.bits &= ~bit;
        break;
    }
  }
  return out;
}

StateProcess::StateProcess(int frame_length) : frame_length_(FrameParams(frame_length).frame_length()) {}

int StateProcess::draw(Rng& rng) const {
  const std::uint64_t word = rng.next();
  const std::uint64_t mask = frame_length_ >= 64 ? ~0ULL : (std::uint64_t{1} << frame_length_) - 1;
  return std::popcount(word & mask);
}

std::vector<int> draw_states(const StateProcess& process, std::size_t count, Rng& rng) {
  std::vector<int> out(count);
  for (auto& s : out) s = process.draw(rng);
  return out;
}

}  // namespace pcode
