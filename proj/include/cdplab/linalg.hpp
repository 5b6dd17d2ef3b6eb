#pragma once

#include <cstddef>
#include <vector>

#include "cdplab/matrix.hpp"

namespace cdplab {

struct SvdResult {
  ComplexMatrix u;                      ///< left singular vectors (columns), full unitary
  std::vector<double> singular_values;  ///< descending, nonnegative, length min(rows, cols)
  ComplexMatrix v;                      ///< right singular vectors (columns), full unitary
};

/// m = U diag(s) V^dagger. Throws InvalidInput on non-finite entries.
SvdResult svd(const ComplexMatrix& m);

struct EigenResult {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< orthonormal eigenvectors as columns
};

/// Hermitian eigendecomposition. The input is symmetrized once it passes the
/// Hermiticity check; anything outside tolerance throws NotHermitian.
EigenResult hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

enum class NormKind { One, Two, Infinity };

/// Schatten norms: One = sum of singular values, Two = Frobenius, Infinity = largest singular value.
double p_norm(const ComplexMatrix& m, NormKind kind);
/// Same, keyed by p in {1, 2, inf}. Any other p throws InvalidInput.
double p_norm(const ComplexMatrix& m, double p);

/// Trace norm of a Hermitian matrix via its eigenvalues.
double trace_norm_hermitian(const ComplexMatrix& m);
/// Operator norm of a Hermitian matrix via its eigenvalues.
double operator_norm_hermitian(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of an (dA*dB) x (dA*dB) operator over the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA, std::size_t dB, Subsystem traced);

/// Generalized Gell-Mann set: identity/sqrt(d) first, then the symmetric,
/// antisymmetric and diagonal families, each Hilbert-Schmidt normalized.
std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d);

/// f(H) for Hermitian H through its spectral decomposition.
ComplexMatrix hermitian_function(const ComplexMatrix& h, double (*f)(double));
/// Principal square root of a PSD matrix (negative eigenvalues clipped to 0).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);
/// exp(i t H) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t);
/// sign(H) with eigenvalues below `zero_tol` mapped to 0.
ComplexMatrix hermitian_sign(const ComplexMatrix& h, double zero_tol);

/// Orthonormalizes the columns of `m` (thin QR, Householder). Columns must be independent.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace cdplab
