#include "pcode/wimax.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pcode/combinatorics.hpp"

namespace pcode {

WimaxReport wimax_case_study(std::span<const int> slot_counts, double frame_ms, double repetition,
                             double pathloss_slope) {
  if (slot_counts.empty()) throw std::invalid_argument("wimax: slot counts must be nonempty");
  if (!(frame_ms > 0.0)) throw std::invalid_argument("wimax: frame duration must be positive");
  if (!(repetition >= 1.0)) throw std::invalid_argument("wimax: repetition factor must be >= 1");
  if (!(pathloss_slope > 0.0)) throw std::invalid_argument("wimax: path-loss slope must be positive");
  WimaxReport r;
  r.bits_per_frame = log2_multinomial(slot_counts);
  r.rate_kbps = r.bits_per_frame / frame_ms;
  r.gain_db = 10.0 * std::log10(repetition);
  r.range_factor = std::pow(10.0, r.gain_db / pathloss_slope);
  return r;
}

std::string WimaxReport::to_string() const {
  std::ostringstream os;
  os.precision(6);
  os << "bits_per_frame " << bits_per_frame << " (floor " << std::floor(bits_per_frame) << ")\n"
     << "rate_kbps " << rate_kbps << "\n"
     << "gain_db " << gain_db << "\n"
     << "range_factor " << range_factor << "\n";
  return os.str();
}

}  // namespace pcode
