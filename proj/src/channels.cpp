#include "cdplab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"

namespace cdplab {

namespace {

std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

HermitianPreservingMap::HermitianPreservingMap(ComplexMatrix choi, std::size_t d_in, std::size_t d_out)
    : d_in_(d_in), d_out_(d_out) {
  if (d_in == 0 || d_out == 0) throw InvalidInput("HermitianPreservingMap: dimensions must be positive");
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out) {
    throw InvalidInput("HermitianPreservingMap: Choi matrix must be " + dims(d_in * d_out, d_in * d_out) +
                       ", got " + dims(choi.rows(), choi.cols()));
  }
  if (!choi.all_finite()) throw InvalidInput("HermitianPreservingMap: non-finite Choi entry");
  const double defect = choi.hermiticity_defect();
  if (defect > 1e-10 * std::max(1.0, frobenius_norm(choi))) {
    throw NotHermitian("HermitianPreservingMap: Choi matrix not Hermitian (defect " + std::to_string(defect) + ")");
  }
  choi_ = choi.hermitian_part();
}

HermitianPreservingMap HermitianPreservingMap::zero(std::size_t d_in, std::size_t d_out) {
  return {ComplexMatrix(d_in * d_out, d_in * d_out), d_in, d_out};
}

ComplexMatrix HermitianPreservingMap::apply(const ComplexMatrix& x) const { return apply_on_a(x, 1); }

ComplexMatrix HermitianPreservingMap::apply_on_a(const ComplexMatrix& x, std::size_t dB) const {
  if (dB == 0 || x.rows() != d_in_ * dB || x.cols() != d_in_ * dB) {
    throw InvalidInput("apply_on_a: operator must be " + dims(d_in_ * dB, d_in_ * dB) + ", got " +
                       dims(x.rows(), x.cols()));
  }
  ComplexMatrix out(d_out_ * dB, d_out_ * dB);
  for (std::size_t i = 0; i < d_in_; ++i)
    for (std::size_t j = 0; j < d_in_; ++j)
      for (std::size_t o = 0; o < d_out_; ++o)
        for (std::size_t o2 = 0; o2 < d_out_; ++o2) {
          const Complex c = choi_(i * d_out_ + o, j * d_out_ + o2);
          if (c == Complex(0.0)) continue;
          for (std::size_t b = 0; b < dB; ++b) {
            const Complex* src = &x(i * dB + b, j * dB);
            Complex* dst = &out(o * dB + b, o2 * dB);
            for (std::size_t b2 = 0; b2 < dB; ++b2) dst[b2] += c * src[b2];
          }
        }
  return out;
}

ComplexMatrix HermitianPreservingMap::apply_on_b(const ComplexMatrix& x, std::size_t dA) const {
  if (dA == 0 || x.rows() != dA * d_in_ || x.cols() != dA * d_in_) {
    throw InvalidInput("apply_on_b: operator must be " + dims(dA * d_in_, dA * d_in_) + ", got " +
                       dims(x.rows(), x.cols()));
  }
  ComplexMatrix out(dA * d_out_, dA * d_out_);
  for (std::size_t i = 0; i < d_in_; ++i)
    for (std::size_t j = 0; j < d_in_; ++j)
      for (std::size_t o = 0; o < d_out_; ++o)
        for (std::size_t o2 = 0; o2 < d_out_; ++o2) {
          const Complex c = choi_(i * d_out_ + o, j * d_out_ + o2);
          if (c == Complex(0.0)) continue;
          for (std::size_t a = 0; a < dA; ++a)
            for (std::size_t a2 = 0; a2 < dA; ++a2) out(a * d_out_ + o, a2 * d_out_ + o2) += c * x(a * d_in_ + i, a2 * d_in_ + j);
        }
  return out;
}

HermitianPreservingMap HermitianPreservingMap::adjoint() const {
  ComplexMatrix j(d_in_ * d_out_, d_in_ * d_out_);
  for (std::size_t o = 0; o < d_out_; ++o)
    for (std::size_t i = 0; i < d_in_; ++i)
      for (std::size_t o2 = 0; o2 < d_out_; ++o2)
        for (std::size_t i2 = 0; i2 < d_in_; ++i2) j(o * d_in_ + i, o2 * d_in_ + i2) = choi_(i2 * d_out_ + o2, i * d_out_ + o);
  return {std::move(j), d_out_, d_in_};
}

HermitianPreservingMap& HermitianPreservingMap::operator*=(double s) {
  choi_ *= s;
  return *this;
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)),
      d_in_(kraus_.empty() ? 0 : kraus_.front().cols()),
      d_out_(kraus_.empty() ? 0 : kraus_.front().rows()),
      map_(HermitianPreservingMap::zero(std::max<std::size_t>(d_in_, 1), std::max<std::size_t>(d_out_, 1))) {
  if (kraus_.empty()) throw InvalidInput("QuantumChannel: at least one Kraus operator is required");
  if (d_in_ == 0 || d_out_ == 0) throw InvalidInput("QuantumChannel: Kraus operators must be non-empty");
  ComplexMatrix sum(d_in_, d_in_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const auto& K = kraus_[k];
    if (K.rows() != d_out_ || K.cols() != d_in_) {
      throw InvalidInput("QuantumChannel: kraus[" + std::to_string(k) + "] is " + dims(K.rows(), K.cols()) +
                         ", expected " + dims(d_out_, d_in_));
    }
    if (!K.all_finite()) throw InvalidInput("QuantumChannel: kraus[" + std::to_string(k) + "] has non-finite entry");
    sum += K.adjoint() * K;
  }
  const double defect = (sum - ComplexMatrix::identity(d_in_)).max_abs();
  if (defect > kChannelTolerance) {
    throw NotTracePreserving("QuantumChannel: max |sum K^dagger K - 1| = " + std::to_string(defect));
  }
  map_ = HermitianPreservingMap(choi_of(kraus_), d_in_, d_out_);
}

QuantumChannel QuantumChannel::from_choi(const ComplexMatrix& choi, std::size_t d_in, std::size_t d_out) {
  const HermitianPreservingMap checked(choi, d_in, d_out);
  return QuantumChannel(kraus_of(checked.choi(), d_in, d_out));
}

BipartiteState QuantumChannel::apply_on_a(const BipartiteState& state) const {
  if (state.dA() != d_in_) {
    throw InvalidInput("apply_on_a: channel input dimension " + std::to_string(d_in_) + " != dA " +
                       std::to_string(state.dA()));
  }
  return {map_.apply_on_a(state.matrix(), state.dB()).hermitian_part(), d_out_, state.dB()};
}

BipartiteState QuantumChannel::apply_on_b(const BipartiteState& state) const {
  if (state.dB() != d_in_) {
    throw InvalidInput("apply_on_b: channel input dimension " + std::to_string(d_in_) + " != dB " +
                       std::to_string(state.dB()));
  }
  return {map_.apply_on_b(state.matrix(), state.dA()).hermitian_part(), state.dA(), d_out_};
}

ComplexMatrix choi_of(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvalidInput("choi_of: empty Kraus list");
  const std::size_t d_out = kraus.front().rows();
  const std::size_t d_in = kraus.front().cols();
  const std::size_t n = d_in * d_out;
  ComplexMatrix j(n, n);
  std::vector<Complex> v(n);
  for (const auto& K : kraus) {
    if (K.rows() != d_out || K.cols() != d_in) throw InvalidInput("choi_of: inconsistent Kraus shapes");
    for (std::size_t i = 0; i < d_in; ++i)
      for (std::size_t o = 0; o < d_out; ++o) v[i * d_out + o] = K(o, i);
    for (std::size_t r = 0; r < n; ++r) {
      if (v[r] == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) j(r, c) += v[r] * std::conj(v[c]);
    }
  }
  return j;
}

std::vector<ComplexMatrix> kraus_of(const ComplexMatrix& choi, std::size_t d_in, std::size_t d_out) {
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out) {
    throw InvalidInput("kraus_of: Choi matrix must be " + dims(d_in * d_out, d_in * d_out));
  }
  const EigenResult eig = hermitian_eigen(choi);
  if (eig.values.front() < -kChannelTolerance) {
    throw NotCompletelyPositive("kraus_of: Choi matrix has eigenvalue " + std::to_string(eig.values.front()));
  }
  const double cutoff = 1e-14 * std::max(1.0, eig.values.back());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    if (eig.values[k] <= cutoff) break;
    const double s = std::sqrt(eig.values[k]);
    ComplexMatrix K(d_out, d_in);
    for (std::size_t i = 0; i < d_in; ++i)
      for (std::size_t o = 0; o < d_out; ++o) K(o, i) = s * eig.vectors(i * d_out + o, k);
    kraus.push_back(std::move(K));
  }
  if (kraus.empty()) kraus.emplace_back(d_out, d_in);
  return kraus;
}

HermitianPreservingMap difference(const HermitianPreservingMap& a, const HermitianPreservingMap& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw InvalidInput("difference: maps have dimensions " + dims(a.d_in(), a.d_out()) + " and " +
                       dims(b.d_in(), b.d_out()) + " (d_in x d_out)");
  }
  return {a.choi() - b.choi(), a.d_in(), a.d_out()};
}

HermitianPreservingMap difference(const QuantumChannel& a, const QuantumChannel& b) {
  return difference(a.as_map(), b.as_map());
}

QuantumChannel identity_channel(std::size_t d) { return QuantumChannel({ComplexMatrix::identity(d)}); }

QuantumChannel unitary_channel(const ComplexMatrix& u) {
  if (!u.is_square()) throw InvalidInput("unitary_channel: matrix must be square");
  return QuantumChannel({u});
}

QuantumChannel replacement_channel(std::size_t d_in, const ComplexMatrix& sigma) {
  const EigenResult eig = hermitian_eigen(sigma);
  if (eig.values.front() < -kStateTolerance) throw InvalidInput("replacement_channel: sigma is not PSD");
  const std::size_t d_out = sigma.rows();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < d_out; ++k) {
    if (eig.values[k] <= 0.0) continue;
    const double s = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < d_in; ++i) {
      ComplexMatrix K(d_out, d_in);
      for (std::size_t o = 0; o < d_out; ++o) K(o, i) = s * eig.vectors(o, k);
      kraus.push_back(std::move(K));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel fully_depolarizing_channel(std::size_t d_in, std::size_t d_out) {
  return replacement_channel(d_in, ComplexMatrix::identity(d_out) * (1.0 / static_cast<double>(d_out)));
}

QuantumChannel depolarizing_channel(std::size_t d, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("depolarizing_channel: q must lie in [0, 1]");
  const auto phi = maximally_entangled_vector(d);
  ComplexMatrix j = ComplexMatrix::outer(phi, phi) * ((1.0 - q) * static_cast<double>(d));
  j.add_scaled(q / static_cast<double>(d), ComplexMatrix::identity(d * d));
  return QuantumChannel::from_choi(j, d, d);
}

QuantumChannel dephasing_channel(std::size_t d) { return dephasing_channel(ComplexMatrix::identity(d)); }

QuantumChannel dephasing_channel(const ComplexMatrix& u) {
  std::vector<std::size_t> blocks(u.cols());
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] = i;
  return block_dephasing_channel(u, blocks);
}

QuantumChannel block_dephasing_channel(const ComplexMatrix& u, std::span<const std::size_t> blocks) {
  if (!u.is_square() || blocks.size() != u.cols()) {
    throw InvalidInput("block_dephasing_channel: need a square basis and one label per column");
  }
  const std::size_t n_blocks = blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
  std::vector<ComplexMatrix> kraus(n_blocks, ComplexMatrix(u.rows(), u.rows()));
  for (std::size_t c = 0; c < u.cols(); ++c) {
    const auto v = u.col(c);
    kraus[blocks[c]] += ComplexMatrix::outer(v, v);
  }
  std::erase_if(kraus, [](const ComplexMatrix& k) { return k.max_abs() == 0.0; });
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t n_kraus) {
  if (n_kraus == 0 || d_out * n_kraus < d_in) {
    throw InvalidInput("random_channel: need d_out * n_kraus >= d_in");
  }
  const ComplexMatrix v = random_isometry(rng, d_out * n_kraus, d_in);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < n_kraus; ++k) {
    ComplexMatrix K(d_out, d_in);
    for (std::size_t o = 0; o < d_out; ++o)
      for (std::size_t i = 0; i < d_in; ++i) K(o, i) = v(k * d_out + o, i);
    kraus.push_back(std::move(K));
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace cdplab
