#include "cdplab/osd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"

namespace cdplab {

namespace {

void require_orthonormal(const std::vector<ComplexMatrix>& basis, std::size_t d, const char* name) {
  if (basis.size() != d * d) {
    throw InvalidInput(std::string("correlation_matrix: ") + name + " must have " + std::to_string(d * d) +
                       " elements, got " + std::to_string(basis.size()));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].rows() != d || basis[i].cols() != d) {
      throw InvalidInput(std::string("correlation_matrix: ") + name + "[" + std::to_string(i) + "] has wrong shape");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = hs_inner(basis[i], basis[j]);
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-10) {
        throw InvalidInput(std::string("correlation_matrix: ") + name + " is not orthonormal at (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

// Sign that makes the Hermitian factor canonical (see header).
double canonical_sign(const ComplexMatrix& a) {
  constexpr double tol = 1e-12;
  const double tr = a.trace().real();
  if (std::abs(tr) > tol) return tr > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double v = a(i, i).real();
    if (std::abs(v) > tol) return v > 0 ? 1.0 : -1.0;
  }
  for (const Complex& z : a.entries()) {
    if (std::abs(z.real()) > tol) return z.real() > 0 ? 1.0 : -1.0;
    if (std::abs(z.imag()) > tol) return z.imag() > 0 ? 1.0 : -1.0;
  }
  return 1.0;
}

ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const Eigen::MatrixXd& coeffs, Eigen::Index col) {
  const std::size_t d = basis.front().rows();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double w = coeffs(static_cast<Eigen::Index>(i), col);
    if (w != 0.0) out.add_scaled(w, basis[i]);
  }
  return out.hermitian_part();
}

}  // namespace

double OperatorSchmidtDecomposition::coefficient_at(std::size_t one_based) const {
  if (one_based == 0 || one_based > coefficients.size()) return 0.0;
  return coefficients[one_based - 1];
}

ComplexMatrix OperatorSchmidtDecomposition::reconstruct() const {
  ComplexMatrix out(dA * dB, dA * dB);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0.0) continue;
    out.add_scaled(coefficients[i], kron(ops_A[i], ops_B[i]));
  }
  return out;
}

ComplexMatrix correlation_matrix(const BipartiteState& rho, const std::vector<ComplexMatrix>& basis_a,
                                 const std::vector<ComplexMatrix>& basis_b) {
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  require_orthonormal(basis_a, dA, "basis_a");
  require_orthonormal(basis_b, dB, "basis_b");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix c(dA * dA, dB * dB);
  ComplexMatrix reduced(dB, dB);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    // reduced = Tr_A[(F_i^dagger (x) 1) rho]
    const ComplexMatrix& f = basis_a[i];
    reduced = ComplexMatrix(dB, dB);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t b = 0; b < dA; ++b) {
        const Complex w = std::conj(f(b, a));
        if (w == Complex(0.0)) continue;
        for (std::size_t r = 0; r < dB; ++r)
          for (std::size_t s = 0; s < dB; ++s) reduced(r, s) += w * m(b * dB + r, a * dB + s);
      }
    for (std::size_t j = 0; j < basis_b.size(); ++j) c(i, j) = hs_inner(basis_b[j], reduced);
  }
  return c;
}

OperatorSchmidtDecomposition operator_schmidt(const BipartiteState& rho, double threshold) {
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw InvalidInput("operator_schmidt: threshold must be a finite nonnegative number");
  }
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  const auto fa = hermitian_operator_basis(dA);
  const auto gb = hermitian_operator_basis(dB);
  const ComplexMatrix c = correlation_matrix(rho, fa, gb);

  Eigen::MatrixXd real(static_cast<Eigen::Index>(c.rows()), static_cast<Eigen::Index>(c.cols()));
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) real(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c(i, j).real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();
  const auto& s = svd.singularValues();

  OperatorSchmidtDecomposition osd;
  osd.dA = dA;
  osd.dB = dB;
  osd.threshold = threshold;
  const std::size_t k = std::min(dA * dA, dB * dB);
  osd.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) osd.coefficients[i] = std::max(0.0, s(static_cast<Eigen::Index>(i)));

  osd.ops_A.reserve(dA * dA);
  osd.ops_B.reserve(dB * dB);
  for (std::size_t i = 0; i < dA * dA; ++i) osd.ops_A.push_back(combine(fa, U, static_cast<Eigen::Index>(i)));
  for (std::size_t j = 0; j < dB * dB; ++j) osd.ops_B.push_back(combine(gb, V, static_cast<Eigen::Index>(j)));
  for (std::size_t i = 0; i < std::max(dA * dA, dB * dB); ++i) {
    if (i < k) {
      const double sg = canonical_sign(osd.ops_A[i]);
      osd.ops_A[i] *= sg;
      osd.ops_B[i] *= sg;
    } else if (i < osd.ops_A.size()) {
      osd.ops_A[i] *= canonical_sign(osd.ops_A[i]);
    } else {
      osd.ops_B[i] *= canonical_sign(osd.ops_B[i]);
    }
  }
  osd.rank = count_rank(osd.coefficients, threshold);
  return osd;
}

std::size_t count_rank(const std::vector<double>& coefficients, double threshold) {
  if (coefficients.empty()) return 0;
  const double cut = threshold * std::max(coefficients.front(), 1e-300);
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [&](double r) { return r > cut; }));
}

double realignment_sum(const OperatorSchmidtDecomposition& osd) {
  double s = 0.0;
  for (double r : osd.coefficients) s += r;
  return s;
}

bool passes_realignment(const OperatorSchmidtDecomposition& osd) { return realignment_sum(osd) <= 1.0 + 1e-10; }

TailCorrelation tail_correlation_bound(const BipartiteState& rho, const ComplexMatrix& sigma_a,
                                       const ComplexMatrix& sigma_b) {
  if (sigma_a.rows() != rho.dA() || !sigma_a.is_square() || sigma_b.rows() != rho.dB() || !sigma_b.is_square()) {
    throw InvalidInput("tail_correlation_bound: product factors must be dA x dA and dB x dB");
  }
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho);
  TailCorrelation t;
  const double r1 = osd.coefficients.front();
  t.lhs = std::max(0.0, rho.purity() - r1 * r1);
  const double dist = frobenius_norm(rho.matrix() - kron(sigma_a, sigma_b));
  t.rhs = dist * dist;
  return t;
}

double r_cn(std::size_t d) {
  if (d < 2) throw InvalidInput("r_cn: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double n = dd * dd - 1.0;
  return (dd * n - std::sqrt(n)) / (dd * n * n + dd * dd * dd - 2.0 * dd);
}

double r_cn_printed(std::size_t d) {
  if (d < 2) throw InvalidInput("r_cn_printed: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double n = dd * dd - 1.0;
  return (dd * n - std::sqrt(n)) / (dd * n * n + dd * dd * dd);
}

LowestOscCap lowest_osc_cap(const BipartiteState& rho) {
  if (rho.dA() != rho.dB()) throw InvalidInput("lowest_osc_cap: requires dA == dB");
  const std::size_t d = rho.dA();
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho);
  LowestOscCap out;
  out.r_last = osd.coefficients.back();
  out.cap = std::sqrt(std::max(0.0, rho.purity() - 1.0 / static_cast<double>(d * d)));
  return out;
}

}  // namespace cdplab
