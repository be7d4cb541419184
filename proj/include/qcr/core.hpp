// core.hpp
// Dense complex linear algebra and density-operator primitives.
//
// Factor ordering follows the usual Kronecker convention: for dims
// [d0, d1, ..., dn-1] the composite index of |i0 i1 ... in-1> is
// i0*d1*...*dn-1 + ... + in-1, i.e. factor 0 is the most significant digit.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qcr/errors.hpp"

namespace qcr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double unitary = 1e-9;
inline constexpr double pure_norm = 1e-12;
}  // namespace tol

inline int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

inline std::string dims_string(const Dims& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

inline double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

// Digits of a composite index in the mixed radix given by dims.
inline std::vector<int> unflatten(int index, const Dims& dims) {
  std::vector<int> digits(dims.size());
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
  return digits;
}

inline int flatten(const std::vector<int>& digits, const Dims& dims) {
  int index = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) index = index * dims[f] + digits[f];
  return index;
}

struct Eigensystem {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

inline Eigensystem eigendecompose(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eigendecompose: matrix is not square");
  const double herr = hermiticity_error(m);
  if (herr > tol::hermitian) {
    std::ostringstream os;
    os << "eigendecompose: matrix is not Hermitian (max |M - M^dagger| = " << herr << ")";
    throw ValidationError(os.str());
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw ComputationError("eigendecompose: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Eigenvalues of a matrix already known to be Hermitian (no validation).
inline RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  if (h.rows() == 1) return RealVector::Constant(1, h(0, 0).real());
  if (h.rows() == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    RealVector out(2);
    out << mean - r, mean + r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// -sum lambda ln lambda with 0 ln 0 = 0; values below zero count as zero.
inline double entropy_of_spectrum(const RealVector& values) {
  double s = 0.0;
  for (double v : values)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

class PureState {
 public:
  PureState(Dims dims, ComplexVector amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    check_dims(dims_);
    if (amplitudes_.size() != total_dim(dims_))
      throw ValidationError("PureState: amplitude count " + std::to_string(amplitudes_.size()) +
                            " does not match dims " + dims_string(dims_));
    const double err = std::abs(amplitudes_.norm() - 1.0);
    if (err > tol::pure_norm) {
      std::ostringstream os;
      os << "PureState invariant violated: unit norm (| ||psi|| - 1 | = " << err << ")";
      throw ValidationError(os.str());
    }
  }

  // Computational basis ket with the given digit per factor.
  static PureState basis(const Dims& dims, const std::vector<int>& digits) {
    check_dims(dims);
    if (digits.size() != dims.size()) throw ValidationError("PureState::basis: digit count mismatch");
    for (std::size_t f = 0; f < dims.size(); ++f)
      if (digits[f] < 0 || digits[f] >= dims[f])
        throw ValidationError("PureState::basis: digit out of range");
    ComplexVector v = ComplexVector::Zero(total_dim(dims));
    v(flatten(digits, dims)) = 1.0;
    return PureState(dims, std::move(v));
  }

  // Normalizes first; use when amplitudes come from arithmetic rather than input.
  static PureState normalized(Dims dims, ComplexVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw ValidationError("PureState: zero vector");
    return PureState(std::move(dims), amplitudes / n);
  }

  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

  static void check_dims(const Dims& dims) {
    if (dims.empty()) throw ValidationError("dims must be nonempty");
    for (int d : dims)
      if (d < 2) throw ValidationError("every factor dimension must be >= 2, got " + dims_string(dims));
  }

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

class DensityOperator {
 public:
  // Validates every invariant; the stored matrix is the Hermitian part of m.
  DensityOperator(Dims dims, const ComplexMatrix& m) : dims_(std::move(dims)) {
    PureState::check_dims(dims_);
    const int d = total_dim(dims_);
    if (m.rows() != d || m.cols() != d)
      throw ValidationError("DensityOperator invariant violated: entries length (matrix is " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            ", dims " + dims_string(dims_) + " require " + std::to_string(d) + "x" +
                            std::to_string(d) + ")");
    const double herr = hermiticity_error(m);
    if (herr > tol::hermitian) {
      std::ostringstream os;
      os << "DensityOperator invariant violated: Hermitian (max |M - M^dagger| = " << herr << ")";
      throw ValidationError(os.str());
    }
    matrix_ = 0.5 * (m + m.adjoint());
    const double terr = std::abs(matrix_.trace().real() - 1.0);
    if (terr > tol::trace) {
      std::ostringstream os;
      os << "DensityOperator invariant violated: unit trace (|tr M - 1| = " << terr << ")";
      throw ValidationError(os.str());
    }
    const double lmin = hermitian_eigenvalues(matrix_).minCoeff();
    if (lmin < -tol::psd) {
      std::ostringstream os;
      os << "DensityOperator invariant violated: positive semidefinite (min eigenvalue = " << lmin
         << ")";
      throw ValidationError(os.str());
    }
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityOperator maximally_mixed(const Dims& dims) {
    const int d = total_dim(dims);
    return DensityOperator(dims, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  }

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int factor_count() const { return static_cast<int>(dims_.size()); }

  // Eigenvalues ascending, noise in [-1e-10, 0) clipped to zero.
  RealVector spectrum() const {
    RealVector v = hermitian_eigenvalues(matrix_);
    for (double& x : v)
      if (x < 0.0) x = 0.0;
    return v;
  }

 private:
  Dims dims_;
  ComplexMatrix matrix_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(concat(a.dims(), b.dims()), kron(a.matrix(), b.matrix()));
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState::normalized(concat(a.dims(), b.dims()), kron(a.amplitudes(), b.amplitudes()));
}

// Traces out every factor not listed in keep. Kept factors stay in ascending order.
inline DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: nothing kept");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const Dims& dims = rho.dims();
  const int n = static_cast<int>(dims.size());
  for (int f : keep)
    if (f < 0 || f >= n)
      throw ValidationError("partial_trace: factor index " + std::to_string(f) + " out of range");

  Dims kept_dims, traced_dims;
  std::vector<bool> is_kept(n, false);
  for (int f : keep) is_kept[f] = true;
  for (int f = 0; f < n; ++f) (is_kept[f] ? kept_dims : traced_dims).push_back(dims[f]);

  const int d = rho.dim();
  std::vector<int> kept_index(d), traced_index(d);
  for (int i = 0; i < d; ++i) {
    const auto digits = unflatten(i, dims);
    std::vector<int> kd, td;
    for (int f = 0; f < n; ++f) (is_kept[f] ? kd : td).push_back(digits[f]);
    kept_index[i] = flatten(kd, kept_dims);
    traced_index[i] = td.empty() ? 0 : flatten(td, traced_dims);
  }

  const int dk = total_dim(kept_dims);
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const ComplexMatrix& m = rho.matrix();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
  return DensityOperator(kept_dims, out);
}

// Natural-log (nats) von Neumann entropy.
inline double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(rho.spectrum());
}

inline DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw ValidationError("apply_unitary: unitary is " + std::to_string(u.rows()) + "x" +
                          std::to_string(u.cols()) + ", state dimension is " +
                          std::to_string(rho.dim()));
  const double err = unitarity_error(u);
  if (err > tol::unitary) {
    std::ostringstream os;
    os << "apply_unitary: matrix is not unitary (max |U^dagger U - I| = " << err << ")";
    throw ValidationError(os.str());
  }
  return DensityOperator(rho.dims(), u * rho.matrix() * u.adjoint());
}

inline constexpr double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

// Common single-qubit matrices.
namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
}  // namespace pauli

}  // namespace qcr
