#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cdplab/cdp.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/random.hpp"

namespace cdplab {

namespace {

// Tr_A[(A (x) 1) rho]
ComplexMatrix probe_partner(const BipartiteState& rho, const ComplexMatrix& a) {
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(dB, dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j) {
      const Complex w = a(i, j);
      if (w == Complex(0.0)) continue;
      for (std::size_t r = 0; r < dB; ++r)
        for (std::size_t s = 0; s < dB; ++s) out(r, s) += w * m(j * dB + r, i * dB + s);
    }
  return out.hermitian_part();
}

double factor_ratio(double r, const ComplexMatrix& a, const ComplexMatrix& b) {
  if (r == 0.0 || b.empty()) return 0.0;
  const double a_inf = operator_norm_hermitian(a);
  if (a_inf == 0.0) return std::numeric_limits<double>::infinity();
  return r * trace_norm_hermitian(b) / a_inf;
}

ComplexMatrix combination(const std::vector<ComplexMatrix>& ops, std::size_t start, const std::vector<double>& c) {
  ComplexMatrix out(ops[start].rows(), ops[start].cols());
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0.0) out.add_scaled(c[j], ops[start + j]);
  return out.hermitian_part();
}

}  // namespace

WitnessEvaluation evaluate_witness(const BipartiteState& rho, const ChannelPair& pair) {
  if (pair.first.d_in() != rho.dA() || pair.second.d_in() != rho.dA()) {
    throw InvalidInput("evaluate_witness: channels must act on A (d_in = " + std::to_string(rho.dA()) + ")");
  }
  const HermitianPreservingMap delta = difference(pair.first, pair.second);
  WitnessEvaluation ev;
  ev.diamond = diamond_norm_sdp(delta).value;
  if (!(ev.diamond > 1e-9)) throw InvalidInput("evaluate_witness: channels are indistinguishable");
  ev.numerator = trace_norm_hermitian(delta.apply_on_a(rho.matrix(), rho.dB()).hermitian_part());
  ev.ratio = ev.numerator / ev.diamond;
  return ev;
}

double cdp_pure_exact(const PureBipartiteState& psi) {
  if (psi.dA > psi.schmidt_coefficients.size()) return 0.0;
  return std::max(0.0, psi.schmidt_coefficients[psi.dA - 1]);
}

ChannelPair pure_witness_channels(const ComplexMatrix& basis) {
  if (!basis.is_square() || basis.rows() < 2) throw InvalidInput("pure_witness_channels: need a dA x dA basis, dA >= 2");
  const std::size_t dA = basis.rows();
  std::vector<ComplexMatrix> k0, k1;
  auto ket_bra = [&](std::size_t out, std::size_t col) {
    ComplexMatrix k(3, dA);
    for (std::size_t i = 0; i < dA; ++i) k(out, i) = std::conj(basis(i, col));
    return k;
  };
  for (std::size_t c = 0; c + 1 < dA; ++c) {
    k0.push_back(ket_bra(2, c));
    k1.push_back(ket_bra(2, c));
  }
  k0.push_back(ket_bra(0, dA - 1));
  k1.push_back(ket_bra(1, dA - 1));
  return {QuantumChannel(std::move(k0)), QuantumChannel(std::move(k1))};
}

ChannelPair pure_witness_channels(std::size_t dA) { return pure_witness_channels(ComplexMatrix::identity(dA)); }

ChannelPair pure_witness_channels(const PureBipartiteState& psi) { return pure_witness_channels(psi.basis_a); }

GeneralBounds cdp_bounds_general(const OperatorSchmidtDecomposition& osd, int rotations, std::uint64_t seed) {
  const std::size_t dA = osd.dA;
  const std::size_t dB = osd.dB;
  const std::size_t n = dA * dA;
  if (osd.ops_A.size() != n) throw InvalidInput("cdp_bounds_general: OSD must carry dA^2 factors on A");
  for (const auto& a : osd.ops_A)
    if (!a.is_hermitian(1e-9)) throw InvalidInput("cdp_bounds_general: non-Hermitian factor on A");
  for (const auto& b : osd.ops_B)
    if (!b.is_hermitian(1e-9)) throw InvalidInput("cdp_bounds_general: non-Hermitian factor on B");

  auto coeff = [&](std::size_t i) { return i < osd.coefficients.size() ? osd.coefficients[i] : 0.0; };
  auto partner = [&](std::size_t i) { return i < osd.ops_B.size() ? osd.ops_B[i] : ComplexMatrix(dB, dB); };

  GeneralBounds g;
  const double r_last = coeff(n - 1);
  g.lower = osd.rank >= n ? r_last / std::pow(static_cast<double>(dA), 2.5) : 0.0;
  g.sqrt_form = r_last * std::sqrt(static_cast<double>(dA * dB));

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double r, const ComplexMatrix& a, const ComplexMatrix& b) {
    const double v = factor_ratio(r, a, b);
    if (v < best) {
      best = v;
      g.best_probe = a;
      g.best_partner = b;
      g.best_coefficient = r;
    }
  };
  for (std::size_t i = 0; i < n; ++i) consider(coeff(i), osd.ops_A[i], partner(i));
  g.upper_canonical = best;

  // Degenerate blocks among the weighted factors.
  const std::size_t k = std::min(n, osd.coefficients.size());
  const double tol = 1e-9 * std::max(coeff(0), 1e-300);
  const auto gell_mann = hermitian_operator_basis(dA);
  Rng rng = Rng(seed).split("cdp_bounds_general");
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start + 1;
    while (end < k && std::abs(coeff(end) - coeff(start)) <= tol) ++end;
    const std::size_t size = end - start;
    if (size >= 2 && coeff(start) > 0.0) {
      const double r = coeff(start);
      std::vector<ComplexMatrix> bs;
      for (std::size_t j = start; j < end; ++j) bs.push_back(partner(j));
      // Projections of the Gell-Mann elements onto the block.
      for (const auto& f : gell_mann) {
        std::vector<double> c(size);
        double norm = 0.0;
        for (std::size_t j = 0; j < size; ++j) {
          c[j] = hs_inner(osd.ops_A[start + j], f).real();
          norm += c[j] * c[j];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (auto& x : c) x /= norm;
        consider(r, combination(osd.ops_A, start, c), combination(bs, 0, c));
      }
      for (int t = 0; t < rotations; ++t) {
        const std::vector<double> o = random_orthogonal(rng, size);
        for (std::size_t col = 0; col < size; ++col) {
          std::vector<double> c(size);
          for (std::size_t j = 0; j < size; ++j) c[j] = o[j * size + col];
          consider(r, combination(osd.ops_A, start, c), combination(bs, 0, c));
        }
      }
    }
    start = end;
  }
  g.upper_unclamped = best;
  g.upper = std::min(best, 1.0 / static_cast<double>(dA));
  return g;
}

PerturbationChannelPair perturbation_channels(const ComplexMatrix& probe, const ComplexMatrix& y0,
                                              const ComplexMatrix& y1, std::optional<double> epsilon) {
  if (!probe.is_square() || !probe.is_hermitian()) throw InvalidInput("perturbation_channels: probe must be Hermitian");
  if (!y0.is_square() || y0.rows() != y1.rows() || !y1.is_square()) {
    throw InvalidInput("perturbation_channels: Y0 and Y1 must be square of equal size");
  }
  if (!y0.is_hermitian() || !y1.is_hermitian()) throw InvalidInput("perturbation_channels: Y0, Y1 must be Hermitian");
  if (std::abs(y0.trace()) > 1e-10 || std::abs(y1.trace()) > 1e-10) {
    throw InvalidInput("perturbation_channels: Y0, Y1 must be traceless");
  }
  if ((y0 - y1).max_abs() <= 1e-12) throw InvalidInput("perturbation_channels: Y0 and Y1 must differ");
  const std::size_t d_in = probe.rows();
  const std::size_t d_out = y0.rows();
  const double a_inf = operator_norm_hermitian(probe);
  if (!(a_inf > 0.0)) throw InvalidInput("perturbation_channels: probe must be nonzero");
  const double y_inf = std::max(operator_norm_hermitian(y0), operator_norm_hermitian(y1));

  PerturbationChannelPair out;
  out.epsilon_cap = 1.0 / (static_cast<double>(d_out) * a_inf * y_inf);
  out.epsilon = epsilon.value_or(0.9 * out.epsilon_cap);
  if (!(out.epsilon > 0.0)) throw InvalidInput("perturbation_channels: epsilon must be positive");
  if (out.epsilon > out.epsilon_cap * (1.0 + 1e-12)) {
    throw NotCompletelyPositive("perturbation_channels: epsilon " + std::to_string(out.epsilon) + " exceeds the cap " +
                                std::to_string(out.epsilon_cap));
  }
  out.probe_op = probe.hermitian_part();
  out.y0 = y0.hermitian_part();
  out.y1 = y1.hermitian_part();
  const ComplexMatrix base = ComplexMatrix::identity(d_in * d_out) * (1.0 / static_cast<double>(d_out));
  const ComplexMatrix at = out.probe_op.transpose();
  out.channels = {QuantumChannel::from_choi(base + out.epsilon * kron(at, out.y0), d_in, d_out),
                  QuantumChannel::from_choi(base + out.epsilon * kron(at, out.y1), d_in, d_out)};
  out.exact_diamond = out.epsilon * trace_norm_hermitian(out.y0 - out.y1) * a_inf;
  return out;
}

PerturbationChannelPair perturbation_pair(const OperatorSchmidtDecomposition& osd, std::size_t l,
                                          std::optional<ComplexMatrix> y0, std::optional<ComplexMatrix> y1,
                                          std::optional<double> epsilon) {
  const std::size_t dA = osd.dA;
  if (l >= osd.ops_A.size()) {
    throw InvalidInput("perturbation_pair: index " + std::to_string(l) + " out of range (dA^2 = " +
                       std::to_string(osd.ops_A.size()) + ")");
  }
  if (!y0 || !y1) {
    if (dA < 2) throw InvalidInput("perturbation_pair: default Y's need dA >= 2");
    const ComplexMatrix g = hermitian_operator_basis(dA)[1];
    if (!y0) y0 = g;
    if (!y1) y1 = -1.0 * g;
  }
  PerturbationChannelPair out = perturbation_channels(osd.ops_A[l], *y0, *y1, epsilon);
  const double r = osd.coefficient_at(l + 1);
  const double b1 = l < osd.ops_B.size() ? trace_norm_hermitian(osd.ops_B[l]) : 0.0;
  const double a_inf = operator_norm_hermitian(osd.ops_A[l]);
  out.exact_numerator = r * out.epsilon * trace_norm_hermitian(out.y0 - out.y1) * b1;
  out.exact_ratio = r * b1 / a_inf;
  return out;
}

double probe_ratio(const BipartiteState& rho, const ComplexMatrix& probe) {
  if (probe.rows() != rho.dA() || !probe.is_square()) throw InvalidInput("probe_ratio: probe must be dA x dA");
  const double a_inf = operator_norm_hermitian(probe);
  if (!(a_inf > 0.0)) throw InvalidInput("probe_ratio: probe must be nonzero");
  return trace_norm_hermitian(probe_partner(rho, probe)) / a_inf;
}

IsotropicBounds cdp_isotropic_bounds(std::size_t d, double p) {
  if (d < 2) throw InvalidInput("cdp_isotropic_bounds: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("cdp_isotropic_bounds: p must lie in [0, 1]");
  const double dd = static_cast<double>(d);
  return {p / (dd + 1.0 - p), std::min(2.0 * p / dd, 1.0 / dd)};
}

std::optional<double> detect_isotropic(const BipartiteState& rho) {
  if (rho.dA() != rho.dB() || rho.dA() < 2) return std::nullopt;
  const std::size_t d = rho.dA();
  const auto phi = maximally_entangled_vector(d);
  const double f = vdot(phi, cdplab::apply(rho.matrix(), phi)).real();
  const double dd = static_cast<double>(d * d);
  double p = (f - 1.0 / dd) / (1.0 - 1.0 / dd);
  if (p < -1e-9 || p > 1.0 + 1e-9) return std::nullopt;
  p = std::clamp(p, 0.0, 1.0);
  if ((rho.matrix() - isotropic_state(d, p).matrix()).max_abs() > 1e-9) return std::nullopt;
  return p;
}

std::optional<PureBipartiteState> as_pure(const BipartiteState& rho) {
  if (rho.purity() < 1.0 - 1e-10) return std::nullopt;
  const EigenResult eig = hermitian_eigen(rho.matrix());
  auto v = eig.vectors.col(eig.values.size() - 1);
  const double n = vector_norm(v);
  for (auto& z : v) z /= n;
  return schmidt_decompose(v, rho.dA(), rho.dB());
}

}  // namespace cdplab
