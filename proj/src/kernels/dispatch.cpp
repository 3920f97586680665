#include <cstdlib>
#include <string_view>

#include "matcond/kernels.hpp"

namespace matcond::kernels {

const KernelTable& active() noexcept {
  static const KernelTable table = [] {
    const char* forced = std::getenv("MATCOND_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar")
      return scalar_kernels();
    if (auto simd = avx2_kernels()) return *simd;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace matcond::kernels
