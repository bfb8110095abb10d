#pragma once

#include <span>
#include <string>

namespace pcode {

struct WimaxReport {
  double bits_per_frame = 0.0;  // log2 multinomial of the slot counts
  double rate_kbps = 0.0;       // bits per frame / frame duration in ms
  double gain_db = 0.0;         // 10 log10(repetition factor)
  double range_factor = 0.0;    // distance multiplier for that gain

  std::string to_string() const;
};

/// Secondary capacity of reordering the per-station slot allocations of one
/// frame, and the coverage extension bought by repeating the secondary
/// header `repetition` times under a log-distance path loss with
/// `pathloss_slope` dB per decade.
WimaxReport wimax_case_study(std::span<const int> slot_counts, double frame_ms, double repetition,
                             double pathloss_slope);

}  // namespace pcode
