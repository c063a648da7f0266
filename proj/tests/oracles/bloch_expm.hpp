#pragma once

// rho(t) = exp(-i H t) rho0 exp(i H t) for a constant Hamiltonian, via the
// dense matrix exponential.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

inline Eigen::MatrixXcd unitary_evolution(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& rho0,
                                          double t) {
  const Eigen::MatrixXcd gen = std::complex<double>(0.0, -t) * h;
  const Eigen::MatrixXcd u = gen.exp();
  return u * rho0 * u.adjoint();
}

}  // namespace oracle
