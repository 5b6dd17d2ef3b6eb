#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cdplab/kernels.hpp"

using namespace cdplab::kernels;

namespace {

std::vector<cplx> random_buffer(std::mt19937_64& eng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(eng), g(eng)};
  return v;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar kernels match a naive triple loop") {
  std::mt19937_64 eng(11);
  const auto a = random_buffer(eng, 3 * 5);
  const auto b = random_buffer(eng, 5 * 2);
  std::vector<cplx> c(3 * 2);
  scalar::gemm(3, 2, 5, a.data(), b.data(), c.data());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 5; ++k) s += a[i * 5 + k] * b[k * 2 + j];
      CHECK(std::abs(c[i * 2 + j] - s) < 1e-12);
    }
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this host; equivalence not exercised");
    return;
  }
  std::mt19937_64 eng(7);
  // Odd sizes exercise the remainder paths.
  for (std::size_t m : {1u, 2u, 3u, 4u, 7u, 9u, 16u, 36u})
    for (std::size_t n : {1u, 3u, 4u, 9u, 12u})
      for (std::size_t k : {1u, 2u, 5u, 9u, 36u}) {
        const auto a = random_buffer(eng, m * k);
        const auto b = random_buffer(eng, k * n);
        std::vector<cplx> c0(m * n), c1(m * n);
        scalar::gemm(m, n, k, a.data(), b.data(), c0.data());
        avx2::gemm(m, n, k, a.data(), b.data(), c1.data());
        CHECK(max_abs_diff(c0, c1) <= 1e-12 * static_cast<double>(k));
      }
  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 144u}) {
    const auto x = random_buffer(eng, n);
    auto y0 = random_buffer(eng, n);
    auto y1 = y0;
    CHECK(std::abs(scalar::dotc(n, x.data(), y0.data()) - avx2::dotc(n, x.data(), y0.data())) <=
          1e-12 * static_cast<double>(n + 1));
    const cplx alpha(0.3, -1.2);
    scalar::axpy(n, alpha, x.data(), y0.data());
    avx2::axpy(n, alpha, x.data(), y1.data());
    CHECK(max_abs_diff(y0, y1) <= 1e-13);
  }
}

TEST_CASE("dispatch table reports its ISA") {
  CHECK(table(Isa::Scalar).isa == Isa::Scalar);
  CHECK(isa_name(Isa::Scalar) == "scalar");
  const KernelTable& t = active();
  CHECK((t.isa == Isa::Scalar || isa_available(t.isa)));
}
