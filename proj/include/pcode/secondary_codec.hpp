#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcode/channel.hpp"
#include "pcode/frame.hpp"
#include "pcode/multisymbol.hpp"
#include "pcode/outer_fec.hpp"

namespace pcode {

// ---------------------------------------------------------------------------
// Naive scheme: outer code -> interleaver -> nearest state-feasible frame.

/// A weight-s frame at minimum Hamming distance from `group`; ties are
/// broken uniformly at random.
Frame naive_project(const Frame& group, int state, Rng& rng);

/// All weight-s frames at minimum distance from `group`, ascending.
std::vector<Frame> naive_candidates(const Frame& group, int state);

class NaiveCodec {
 public:
  NaiveCodec(int frame_length, std::size_t interleaver_rows);

  int frame_length() const { return frame_length_; }
  std::size_t interleaver_rows() const { return rows_; }
  /// Frames needed for N info bits: 2(N+2)/F.
  std::size_t frames_for(std::size_t info_bits) const;

  Frame project(const Frame& group, int state, Rng& rng) const;
  std::vector<Frame> encode(std::span<const std::uint8_t> info, std::span<const int> states, Rng& rng) const;
  /// Reads the received labels as coded bits (erasures stay erasures).
  Bits decode(std::span<const ReceivedFrame> received) const;

 private:
  int frame_length_;
  std::size_t rows_;
  // candidates_[group * (F+1) + s]
  std::vector<std::vector<Frame>> candidates_;
};

// ---------------------------------------------------------------------------
// Multisymbol trellis code.

/// Binary-input trellis with L/2 states, next(state, b) = (2 state + b) mod
/// (L/2), whose L branches carry the L multisymbols of a set, each once.
class TrellisCode {
 public:
  TrellisCode(MultisymbolSet set, std::vector<std::size_t> labels);

  int num_states() const { return num_states_; }
  int next(int state, int bit) const { return (2 * state + bit) % num_states_; }
  std::size_t label(int state, int bit) const { return labels_[static_cast<std::size_t>(2 * state + bit)]; }
  const Multisymbol& branch_symbol(int state, int bit) const { return set_.symbols[label(state, bit)]; }
  const MultisymbolSet& set() const { return set_; }
  const std::vector<std::size_t>& labels() const { return labels_; }

  /// Smallest expected distance between the two branches leaving a state.
  Rational out_separation() const;
  /// Smallest expected distance between the two branches entering a state.
  Rational in_separation() const;
  /// The two predecessor states of `state` (same input bit).
  std::pair<int, int> predecessors(int state) const;

  /// Non-empty when label search could not reach the set's largest pairwise distance.
  std::string warning;

 private:
  MultisymbolSet set_;
  std::vector<std::size_t> labels_;  // index 2*state + bit
  int num_states_;
};

/// Assigns multisymbols to branches maximising the minimum out-pair
/// distance, then the minimum in-pair distance. Among the labellings that
/// reach both, picks the one whose sorted error-event distances (path pairs
/// splitting at a state, up to six steps or until they remerge) are
/// lexicographically largest. `seed` permutes the candidate order (0 keeps
/// the set order), which only matters when labellings tie.
TrellisCode build_trellis(const MultisymbolSet& set, std::uint64_t seed = 0);

/// Expected distances of all path pairs that split at some state and either
/// remerge or run for `depth` steps, ascending.
std::vector<Rational> event_distances(const TrellisCode& code, int depth = 6);

/// One frame per input bit: the branch symbol's representative for the
/// current primary state. Starts in state 0.
std::vector<Frame> trellis_encode(std::span<const std::uint8_t> bits, std::span<const int> states,
                                  const TrellisCode& code);

enum class StateKnowledge {
  known,    // receiver knows every frame state
  unknown,  // branch metric minimised over states consistent with unerased labels
};

/// Viterbi over the inner trellis; branch metric counts unerased packets
/// that disagree with the branch representative. Among minimum-metric
/// paths the lexicographically smallest bit string is returned.
Bits trellis_decode(std::span<const ReceivedFrame> received, std::span<const int> states, const TrellisCode& code,
                    StateKnowledge knowledge = StateKnowledge::known);

// ---------------------------------------------------------------------------
// Full concatenation: outer code -> interleaver -> inner trellis.

class TrellisScheme {
 public:
  TrellisScheme(TrellisCode code, std::size_t interleaver_rows, StateKnowledge knowledge = StateKnowledge::known);

  const TrellisCode& code() const { return code_; }
  std::size_t interleaver_rows() const { return rows_; }
  /// 2(N+2): one frame per coded bit.
  std::size_t frames_for(std::size_t info_bits) const { return ConvCode::coded_length(info_bits); }

  std::vector<Frame> encode(std::span<const std::uint8_t> info, std::span<const int> states) const;
  Bits decode(std::span<const ReceivedFrame> received, std::span<const int> states) const;

 private:
  TrellisCode code_;
  std::size_t rows_;
  StateKnowledge knowledge_;
};

}  // namespace pcode
