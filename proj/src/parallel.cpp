#include "sasaki/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sasaki {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SASAKI_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return std::min(hw, cap);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return 0.0;
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace sasaki
