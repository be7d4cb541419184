#pragma once

#include "qcr/core.hpp"
#include "qcr/measurement.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qcr::testing {

inline DensityOperator diag_state(const Dims& dims, std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return DensityOperator(dims, v.cast<Complex>().asDiagonal());
}

inline DensityOperator ket_state(const Dims& dims, std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return DensityOperator::from_pure(PureState::normalized(dims, v));
}

inline DensityOperator bell() { return ket_state({2, 2}, {1, 0, 0, 1}); }

// Haar unitary times a flat-simplex spectrum.
inline DensityOperator random_state(const Dims& dims, std::uint64_t seed) {
  const int d = total_dim(dims);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  RealVector w(d);
  for (auto& x : w) x = expo(rng);
  w /= w.sum();
  const ComplexMatrix u = random_unitary(d, rng);
  return DensityOperator(dims, u * w.cast<Complex>().asDiagonal() * u.adjoint());
}

inline DensityOperator random_pure(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix u = random_unitary(total_dim(dims), rng);
  return DensityOperator::from_pure(PureState::normalized(dims, u.col(0)));
}

inline void expect_matrix_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE(max_abs(a - b), tol);
}

}  // namespace qcr::testing
