#include <cstdlib>
#include <string_view>

#include "fanoforge/kernels.hpp"

namespace fanoforge::kernels {

const Kernels& active() {
  static const Kernels& chosen = []() -> const Kernels& {
    if (const char* env = std::getenv("FANOFORGE_KERNELS")) {
      const std::string_view want(env);
      if (want == "scalar") return scalar();
      if (want == "avx2" && avx2() != nullptr) return *avx2();
      if (want == "neon" && neon() != nullptr) return *neon();
      // unknown or unavailable name: fall through to auto-selection
    }
    if (const Kernels* k = avx2()) return *k;
    if (const Kernels* k = neon()) return *k;
    return scalar();
  }();
  return chosen;
}

}  // namespace fanoforge::kernels
