#include "cdplab/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cdplab/errors.hpp"

namespace cdplab {

namespace {

using EigenMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> view(const ComplexMatrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

template <typename Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived>& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) out(r, c) = e(r, c);
  return out;
}

void require_finite(const ComplexMatrix& m, const char* op) {
  if (!m.all_finite()) throw InvalidInput(std::string(op) + ": non-finite entry");
}

// Stable permutation sorting `keys` ascending (descending when `desc`).
std::vector<std::size_t> stable_order(const std::vector<double>& keys, bool desc) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return desc ? keys[a] > keys[b] : keys[a] < keys[b];
  });
  return idx;
}

ComplexMatrix checked_hermitian(const ComplexMatrix& m, const char* op) {
  require_finite(m, op);
  if (!m.is_square()) throw InvalidInput(std::string(op) + ": matrix is not square");
  if (!m.is_hermitian()) {
    throw NotHermitian(std::string(op) + ": Hermiticity defect " + std::to_string(m.hermiticity_defect()));
  }
  return m.hermitian_part();
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
  require_finite(m, "svd");
  if (m.empty()) throw InvalidInput("svd: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(view(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = solver.singularValues();
  std::vector<double> values(s.data(), s.data() + s.size());
  const auto order = stable_order(values, /*desc=*/true);
  SvdResult out;
  out.u = from_eigen(solver.matrixU());
  out.v = from_eigen(solver.matrixV());
  out.singular_values.resize(values.size());
  ComplexMatrix u = out.u;
  ComplexMatrix v = out.v;
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.singular_values[k] = std::max(0.0, values[order[k]]);
    u.set_col(k, out.u.col(order[k]));
    v.set_col(k, out.v.col(order[k]));
  }
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

EigenResult hermitian_eigen(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_hermitian(m, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(view(h));
  if (solver.info() != Eigen::Success) throw InvalidInput("hermitian_eigen: solver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  const auto order = stable_order(values, /*desc=*/false);
  const ComplexMatrix vecs = from_eigen(solver.eigenvectors());
  EigenResult out{std::vector<double>(values.size()), ComplexMatrix(vecs.rows(), vecs.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[k] = values[order[k]];
    out.vectors.set_col(k, vecs.col(order[k]));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_hermitian(m, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(view(h), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end());
  return values;
}

double p_norm(const ComplexMatrix& m, NormKind kind) {
  require_finite(m, "p_norm");
  switch (kind) {
    case NormKind::Two:
      return frobenius_norm(m);
    case NormKind::One: {
      Eigen::JacobiSVD<Eigen::MatrixXcd> solver(view(m));
      return solver.singularValues().sum();
    }
    case NormKind::Infinity: {
      Eigen::JacobiSVD<Eigen::MatrixXcd> solver(view(m));
      return solver.singularValues().size() == 0 ? 0.0 : solver.singularValues()(0);
    }
  }
  throw InvalidInput("p_norm: unknown norm kind");
}

double p_norm(const ComplexMatrix& m, double p) {
  if (p == 1.0) return p_norm(m, NormKind::One);
  if (p == 2.0) return p_norm(m, NormKind::Two);
  if (std::isinf(p) && p > 0) return p_norm(m, NormKind::Infinity);
  throw InvalidInput("p_norm: unsupported p = " + std::to_string(p) + " (expected 1, 2 or infinity)");
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(m)) sum += std::abs(v);
  return sum;
}

double operator_norm_hermitian(const ComplexMatrix& m) {
  const auto v = hermitian_eigenvalues(m);
  return v.empty() ? 0.0 : std::max(std::abs(v.front()), std::abs(v.back()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA, std::size_t dB, Subsystem traced) {
  if (dA == 0 || dB == 0 || m.rows() != dA * dB || m.cols() != dA * dB) {
    throw InvalidInput("partial_trace: expected " + std::to_string(dA * dB) + "x" +
                       std::to_string(dA * dB) + " operator, got " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()));
  }
  if (traced == Subsystem::B) {
    ComplexMatrix out(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < dB; ++b) s += m(i * dB + b, j * dB + b);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(dB, dB);
  for (std::size_t i = 0; i < dB; ++i)
    for (std::size_t j = 0; j < dB; ++j) {
      Complex s = 0.0;
      for (std::size_t a = 0; a < dA; ++a) s += m(a * dB + i, a * dB + j);
      out(i, j) = s;
    }
  return out;
}

std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d) {
  if (d == 0) throw InvalidInput("hermitian_operator_basis: d must be positive");
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  basis.push_back(ComplexMatrix::identity(d) * (1.0 / std::sqrt(static_cast<double>(d))));
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix s(d, d);
      s(j, k) = h;
      s(k, j) = h;
      basis.push_back(std::move(s));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix a(d, d);
      a(j, k) = Complex(0.0, -h);
      a(k, j) = Complex(0.0, h);
      basis.push_back(std::move(a));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix g(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(g));
  }
  return basis;
}

ComplexMatrix hermitian_function(const ComplexMatrix& h, double (*f)(double)) {
  const EigenResult eig = hermitian_eigen(h);
  const std::size_t n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double fv = f(eig.values[c]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= fv;
  }
  return scaled * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
  const EigenResult eig = hermitian_eigen(h);
  const std::size_t n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex phase = std::polar(1.0, t * eig.values[c]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
  }
  return scaled * eig.vectors.adjoint();
}

ComplexMatrix hermitian_sign(const ComplexMatrix& h, double zero_tol) {
  const EigenResult eig = hermitian_eigen(h);
  const std::size_t n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double v = eig.values[c];
    const double s = v > zero_tol ? 1.0 : (v < -zero_tol ? -1.0 : 0.0);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= s;
  }
  return scaled * eig.vectors.adjoint();
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  require_finite(m, "orthonormalize_columns");
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(view(m));
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  // Fix the phase so that R has a positive real diagonal; this makes the map Haar-covariant.
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  ComplexMatrix out = from_eigen(q);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Complex diag = r(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    const double mag = std::abs(diag);
    if (mag < 1e-300) throw InvalidInput("orthonormalize_columns: dependent columns");
    const Complex phase = diag / mag;
    for (std::size_t row = 0; row < m.rows(); ++row) out(row, c) *= phase;
  }
  return out;
}

}  // namespace cdplab
