#pragma once

#include <vector>

namespace cqz {

// A finite sequence of real-valued samples in signal units.
// sample_rate is 0 for synthetic signals with no time base.
struct SignalBuffer {
  std::vector<double> samples;
  int sample_rate = 0;  // Hz
};

}  // namespace cqz
