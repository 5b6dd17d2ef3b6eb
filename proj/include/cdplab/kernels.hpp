#pragma once
// Dense complex kernels with a scalar reference path and SIMD variants.
//
// Every kernel exists as a plain scalar loop (the reference) and, where the
// host supports it, as an AVX2+FMA variant. The active table is chosen once at
// first use from CPUID; CDPLAB_SIMD=scalar in the environment forces the
// reference path. All buffers are row-major std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace cdplab::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  /// c[m x n] = a[m x k] * b[k x n]; c must not alias a or b.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
  /// sum_i conj(a[i]) * b[i]
  cplx (*dotc)(std::size_t n, const cplx* a, const cplx* b);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
};

bool isa_available(Isa isa);
const KernelTable& table(Isa isa);
const KernelTable& active();
std::string_view isa_name(Isa isa);

namespace scalar {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx dotc(std::size_t n, const cplx* a, const cplx* b);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace scalar

namespace avx2 {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx dotc(std::size_t n, const cplx* a, const cplx* b);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
}  // namespace avx2

}  // namespace cdplab::kernels
