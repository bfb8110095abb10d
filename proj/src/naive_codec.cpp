#include <stdexcept>

#include "pcode/combinatorics.hpp"
#include "pcode/secondary_codec.hpp"

namespace pcode {

std::vector<Frame> naive_candidates(const Frame& group, int state) {
  const FrameParams params(group.length);
  if (state < 0 || state > params.frame_length()) throw std::domain_error("naive_project: state outside [0, F]");
  std::vector<Frame> best;
  int best_d = group.length + 1;
  const auto count = binomial_u64(group.length, state);
  for (std::uint64_t r = 1; r <= count; ++r) {
    const Frame x = unrank_combination(group.length, state, r);
    const int d = hamming_distance(x, group);
    if (d < best_d) {
      best_d = d;
      best.clear();
    }
    if (d == best_d) best.push_back(x);
  }
  return best;
}

Frame naive_project(const Frame& group, int state, Rng& rng) {
  const auto candidates = naive_candidates(group, state);
  return candidates.size() == 1 ? candidates.front() : candidates[rng.below(candidates.size())];
}

NaiveCodec::NaiveCodec(int frame_length, std::size_t interleaver_rows)
    : frame_length_(FrameParams(frame_length).frame_length()), rows_(interleaver_rows) {
  if (frame_length_ > 12) throw std::domain_error("NaiveCodec: F must be at most 12");
  if (rows_ == 0) throw std::domain_error("NaiveCodec: interleaver needs at least one row");
  const std::size_t groups = std::size_t{1} << frame_length_;
  candidates_.resize(groups * static_cast<std::size_t>(frame_length_ + 1));
  for (std::size_t g = 0; g < groups; ++g) {
    for (int s = 0; s <= frame_length_; ++s) {
      candidates_[g * (frame_length_ + 1) + s] = naive_candidates(Frame{g, frame_length_}, s);
    }
  }
}

std::size_t NaiveCodec::frames_for(std::size_t info_bits) const {
  const std::size_t coded = ConvCode::coded_length(info_bits);
  if (coded % static_cast<std::size_t>(frame_length_) != 0) {
    throw std::domain_error("NaiveCodec: 2(N+2) = " + std::to_string(coded) + " not divisible by F");
  }
  return coded / frame_length_;
}

Frame NaiveCodec::project(const Frame& group, int state, Rng& rng) const {
  if (group.length != frame_length_ || state < 0 || state > frame_length_) {
    throw std::domain_error("NaiveCodec::project: group or state does not fit the frame length");
  }
  const auto& c = candidates_[group.bits * (frame_length_ + 1) + state];
  return c.size() == 1 ? c.front() : c[rng.below(c.size())];
}

std::vector<Frame> NaiveCodec::encode(std::span<const std::uint8_t> info, std::span<const int> states,
                                      Rng& rng) const {
  const std::size_t n_frames = frames_for(info.size());
  if (states.size() != n_frames) {
    throw std::domain_error("NaiveCodec::encode: need " + std::to_string(n_frames) + " states, got " +
                            std::to_string(states.size()));
  }
  const Bits coded = interleave(conv_encode(info), rows_);
  std::vector<Frame> frames;
  frames.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    Frame group{0, frame_length_};
    for (int k = 0; k < frame_length_; ++k) group.bits = (group.bits << 1) | coded[i * frame_length_ + k];
    frames.push_back(project(group, states[i], rng));
  }
  return frames;
}

Bits NaiveCodec::decode(std::span<const ReceivedFrame> received) const {
  Symbols coded;
  coded.reserve(received.size() * frame_length_);
  for (const auto& r : received) {
    if (r.length != frame_length_) throw std::domain_error("NaiveCodec::decode: frame length mismatch");
    for (int k = 0; k < frame_length_; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (frame_length_ - 1 - k);
      coded.push_back((r.erased & bit) ? Symbol::erased : ((r.bits & bit) ? Symbol::one : Symbol::zero));
    }
  }
  if (coded.size() % rows_ != 0) throw std::domain_error("NaiveCodec::decode: length not divisible by interleaver");
  const Symbols ordered = deinterleave(std::span<const Symbol>(coded), rows_);
  return conv_decode(std::span<const Symbol>(ordered));
}

}  // namespace pcode
