#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ontic::test {

/// First column of a Haar unitary, built by QR of a complex Gaussian matrix
/// with the R-diagonal phases divided out.
inline std::vector<std::complex<double>> haar_column_by_qr(std::size_t d, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) g(i, j) = {normal(gen), normal(gen)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  std::vector<std::complex<double>> col(d);
  const auto phase = r(0, 0) / std::abs(r(0, 0));
  for (std::size_t i = 0; i < d; ++i) col[i] = q(i, 0) * phase;
  return col;
}

}  // namespace ontic::test
