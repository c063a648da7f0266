#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mxm/matter.hpp"

namespace mxm {

std::vector<double> pack_rho(const Eigen::MatrixXcd& rho, double hermitian_tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("pack_rho: matrix must be square");
  const double dev = (rho - rho.adjoint()).norm();
  if (dev > hermitian_tol * (1.0 + rho.norm())) {
    throw std::invalid_argument("pack_rho: matrix is not Hermitian");
  }
  const auto n = rho.rows();
  std::vector<double> v(static_cast<std::size_t>(n * n));
  std::size_t k = 0;
  for (Eigen::Index a = 0; a < n; ++a) v[k++] = rho(a, a).real();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      v[k++] = std::numbers::sqrt2 * rho(a, b).real();
      v[k++] = std::numbers::sqrt2 * rho(a, b).imag();
    }
  }
  return v;
}

Eigen::MatrixXcd unpack_rho(std::span<const double> v, int levels) {
  const auto n = static_cast<Eigen::Index>(levels);
  if (v.size() != static_cast<std::size_t>(n * n)) {
    throw std::invalid_argument("unpack_rho: expected N^2 components");
  }
  Eigen::MatrixXcd rho(n, n);
  std::size_t k = 0;
  for (Eigen::Index a = 0; a < n; ++a) rho(a, a) = v[k++];
  const double s = 1.0 / std::numbers::sqrt2;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const std::complex<double> z(s * v[k], s * v[k + 1]);
      k += 2;
      rho(a, b) = z;
      rho(b, a) = std::conj(z);
    }
  }
  return rho;
}

namespace {

bool is_hermitian(const Eigen::MatrixXcd& m, Eigen::Index n) {
  return m.rows() == n && m.cols() == n && (m - m.adjoint()).norm() <= 1e-12 * (1.0 + m.norm());
}

// Packs without the Hermiticity check; the anti-Hermitian round-off of the
// commutator is discarded by reading the upper triangle only.
void pack_into(const Eigen::MatrixXcd& rho, std::span<double> out) {
  const auto n = rho.rows();
  std::size_t k = 0;
  for (Eigen::Index a = 0; a < n; ++a) out[k++] = rho(a, a).real();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      out[k++] = std::numbers::sqrt2 * rho(a, b).real();
      out[k++] = std::numbers::sqrt2 * rho(a, b).imag();
    }
  }
}

}  // namespace

BlochModel::BlochModel(BlochParams params) : p_(std::move(params)) {
  const auto n = static_cast<Eigen::Index>(p_.levels);
  if (n < 2) throw std::invalid_argument("bloch: need at least two levels");
  if (!is_hermitian(p_.hamiltonian, n)) {
    throw std::invalid_argument("bloch: hamiltonian must be an N x N Hermitian matrix");
  }
  for (const auto& g : p_.dipole) {
    if (!is_hermitian(g, n)) {
      throw std::invalid_argument("bloch: dipole components must be N x N Hermitian matrices");
    }
  }
  if (p_.transverse_rate < 0.0) throw std::invalid_argument("bloch: transverse rate must be >= 0");
  growth_ = 0.0;
  if (p_.pauli_rates.size() != 0) {
    if (p_.pauli_rates.rows() != n || p_.pauli_rates.cols() != n ||
        p_.pauli_rates.minCoeff() < 0.0) {
      throw std::invalid_argument("bloch: pauli rates must be a nonnegative N x N matrix");
    }
    // sum_a rho_aa sum_b (W_ab rho_bb - W_ba rho_aa) <= ||W||_2 |diag|^2
    growth_ = p_.pauli_rates.norm();
  }
}

Eigen::MatrixXcd BlochModel::rhs_matrix(const Eigen::MatrixXcd& rho, const Vec3& e) const {
  Eigen::MatrixXcd h = p_.hamiltonian;
  for (int c = 0; c < 3; ++c) {
    if (e[c] != 0.0) h -= e[c] * p_.dipole[c];
  }
  const std::complex<double> minus_i(0.0, -1.0);
  Eigen::MatrixXcd out = minus_i * (h * rho - rho * h);
  if (p_.transverse_rate != 0.0) {
    for (Eigen::Index a = 0; a < rho.rows(); ++a) {
      for (Eigen::Index b = 0; b < rho.cols(); ++b) {
        if (a != b) out(a, b) -= p_.transverse_rate * rho(a, b);
      }
    }
  }
  if (p_.pauli_rates.size() != 0) {
    const auto& w = p_.pauli_rates;
    for (Eigen::Index a = 0; a < rho.rows(); ++a) {
      double gain = 0.0;
      for (Eigen::Index b = 0; b < rho.rows(); ++b) {
        if (b == a) continue;
        gain += w(a, b) * rho(b, b).real() - w(b, a) * rho(a, a).real();
      }
      out(a, a) += gain;
    }
  }
  return out;
}

void BlochModel::eval(const PointContext&, std::span<const double> v, const Vec6& u,
                      std::span<double> out) const {
  const Eigen::MatrixXcd rho = unpack_rho(v, p_.levels);
  pack_into(rhs_matrix(rho, {u[3], u[4], u[5]}), out);
}

void BlochModel::couple(const PointContext&, std::span<const double> v, Vec3& l1v,
                        Vec3& l2v) const {
  const Eigen::MatrixXcd rho = unpack_rho(v, p_.levels);
  l1v = {0.0, 0.0, 0.0};
  for (int c = 0; c < 3; ++c) {
    l2v[c] = -p_.density * (p_.dipole[c] * rho).trace().real();
  }
}

}  // namespace mxm
