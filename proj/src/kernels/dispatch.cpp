#include <cstdlib>
#include <string>

#include "cdplab/kernels.hpp"

namespace cdplab::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::gemm, &scalar::dotc, &scalar::axpy};
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::gemm, &avx2::dotc, &avx2::axpy};

bool cpu_has_avx2() {
#if defined(CDPLAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* forced = std::getenv("CDPLAB_SIMD")) {
    if (std::string(forced) == "scalar") return kScalarTable;
  }
  return cpu_has_avx2() ? kAvx2Table : kScalarTable;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  return isa == Isa::Avx2 && isa_available(Isa::Avx2) ? kAvx2Table : kScalarTable;
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace cdplab::kernels
