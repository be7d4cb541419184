// structures.hpp
// Tensor-product structures and the maps between them.
//
// A structure is a bipartition of the reference factors together with a
// global unitary U relating the reference product basis |k l> to the new
// product basis |alpha beta>:  |k l> = sum_{alpha,beta} C^{kl}_{alpha beta} |alpha beta>,
// with C^{kl}_{alpha beta} = <alpha beta| U |k l>.  A state expressed in the new
// structure is U rho U^dagger, labeled with the target dims.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qcr/core.hpp"

namespace qcr {

class Bipartition {
 public:
  Bipartition(std::vector<int> side_a, std::vector<int> side_b, Dims dims)
      : side_a_(std::move(side_a)), side_b_(std::move(side_b)), dims_(std::move(dims)) {
    PureState::check_dims(dims_);
    if (side_a_.empty() || side_b_.empty())
      throw ValidationError("Bipartition: both sides must be nonempty");
    std::vector<int> seen(dims_.size(), 0);
    for (const auto* side : {&side_a_, &side_b_})
      for (int f : *side) {
        if (f < 0 || f >= static_cast<int>(dims_.size()))
          throw ValidationError("Bipartition: factor index " + std::to_string(f) +
                                " out of range for dims " + dims_string(dims_));
        if (seen[f]++) throw ValidationError("Bipartition: factor " + std::to_string(f) + " listed twice");
      }
    for (std::size_t f = 0; f < seen.size(); ++f)
      if (!seen[f]) throw ValidationError("Bipartition: factor " + std::to_string(f) + " not covered");
  }

  // {0}|{1} on a two-factor space.
  static Bipartition trivial(const Dims& dims) {
    if (dims.size() != 2)
      throw ValidationError("expected a bipartite state (2 factors), got dims " + dims_string(dims));
    return Bipartition({0}, {1}, dims);
  }

  const std::vector<int>& side_a() const { return side_a_; }
  const std::vector<int>& side_b() const { return side_b_; }
  const Dims& dims() const { return dims_; }

  int dim_a() const { return side_dim(side_a_); }
  int dim_b() const { return side_dim(side_b_); }

  // Reference factors reordered as side_a followed by side_b.
  std::vector<int> permutation() const {
    std::vector<int> perm = side_a_;
    perm.insert(perm.end(), side_b_.begin(), side_b_.end());
    return perm;
  }

  bool is_identity() const {
    const auto perm = permutation();
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i)) return false;
    return dims_.size() == 2;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < side_a_.size(); ++i) s += (i ? "," : "") + std::to_string(side_a_[i]);
    s += '|';
    for (std::size_t i = 0; i < side_b_.size(); ++i) s += (i ? "," : "") + std::to_string(side_b_[i]);
    return s;
  }

 private:
  int side_dim(const std::vector<int>& side) const {
    int d = 1;
    for (int f : side) d *= dims_[f];
    return d;
  }

  std::vector<int> side_a_, side_b_;
  Dims dims_;
};

// Reorders tensor factors: factor f of the result is factor perm[f] of the input.
inline ComplexMatrix permute_factors(const ComplexMatrix& m, const Dims& dims, const std::vector<int>& perm) {
  Dims new_dims(perm.size());
  for (std::size_t f = 0; f < perm.size(); ++f) new_dims[f] = dims[perm[f]];
  const int d = total_dim(dims);
  std::vector<int> target(d);
  for (int i = 0; i < d; ++i) {
    const auto digits = unflatten(i, dims);
    std::vector<int> nd(perm.size());
    for (std::size_t f = 0; f < perm.size(); ++f) nd[f] = digits[perm[f]];
    target[i] = flatten(nd, new_dims);
  }
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(target[i], target[j]) = m(i, j);
  return out;
}

inline DensityOperator regroup(const DensityOperator& rho, const Bipartition& bip) {
  if (rho.dims() != bip.dims())
    throw ValidationError("regroup: bipartition dims " + dims_string(bip.dims()) +
                          " do not match state dims " + dims_string(rho.dims()));
  return DensityOperator({bip.dim_a(), bip.dim_b()}, permute_factors(rho.matrix(), rho.dims(), bip.permutation()));
}

// Inverse of regroup: back to the reference factor order and dims.
inline DensityOperator ungroup(const DensityOperator& grouped, const Bipartition& bip) {
  if (grouped.dim() != total_dim(bip.dims()))
    throw ValidationError("ungroup: dimension mismatch");
  const auto perm = bip.permutation();
  Dims permuted_dims(perm.size());
  for (std::size_t f = 0; f < perm.size(); ++f) permuted_dims[f] = bip.dims()[perm[f]];
  std::vector<int> inverse(perm.size());
  for (std::size_t f = 0; f < perm.size(); ++f) inverse[perm[f]] = static_cast<int>(f);
  return DensityOperator(bip.dims(), permute_factors(grouped.matrix(), permuted_dims, inverse));
}

class StructureMap {
 public:
  StructureMap(Bipartition source, std::array<int, 2> target_dims, ComplexMatrix unitary)
      : source_(std::move(source)), target_dims_(target_dims), unitary_(std::move(unitary)) {
    const int d = total_dim(source_.dims());
    if (target_dims_[0] < 2 || target_dims_[1] < 2)
      throw ValidationError("StructureMap: target dims must be >= 2");
    if (target_dims_[0] * target_dims_[1] != d)
      throw ValidationError("StructureMap: target dims " + std::to_string(target_dims_[0]) + "x" +
                            std::to_string(target_dims_[1]) + " do not multiply to " + std::to_string(d));
    if (unitary_.rows() != d || unitary_.cols() != d)
      throw ValidationError("StructureMap: unitary must be " + std::to_string(d) + "x" + std::to_string(d));
    const double err = unitarity_error(unitary_);
    if (err > tol::unitary) {
      std::ostringstream os;
      os << "StructureMap: matrix is not unitary (max |U^dagger U - I| = " << err << ")";
      throw ValidationError(os.str());
    }
  }

  const Bipartition& source() const { return source_; }
  const std::array<int, 2>& target_dims() const { return target_dims_; }
  const ComplexMatrix& unitary() const { return unitary_; }
  int dim() const { return static_cast<int>(unitary_.rows()); }

 private:
  Bipartition source_;
  std::array<int, 2> target_dims_;
  ComplexMatrix unitary_;
};

inline DensityOperator restructure(const DensityOperator& rho, const StructureMap& map) {
  if (rho.dims() != map.source().dims())
    throw ValidationError("restructure: map expects dims " + dims_string(map.source().dims()) +
                          ", state has " + dims_string(rho.dims()));
  const DensityOperator grouped = map.source().is_identity() ? rho : regroup(rho, map.source());
  const ComplexMatrix& u = map.unitary();
  return DensityOperator({map.target_dims()[0], map.target_dims()[1]}, u * grouped.matrix() * u.adjoint());
}

// `second` must start from the trivial bipartition of `first`'s target.
inline StructureMap compose(const StructureMap& second, const StructureMap& first) {
  const Dims mid{first.target_dims()[0], first.target_dims()[1]};
  if (second.source().dims() != mid || !second.source().is_identity())
    throw ValidationError("compose: second map does not start from the first map's target structure");
  return StructureMap(first.source(), second.target_dims(), second.unitary() * first.unitary());
}

inline StructureMap identity_map(const Dims& dims) {
  const Bipartition bip = Bipartition::trivial(dims);
  const int d = total_dim(dims);
  return StructureMap(bip, {dims[0], dims[1]}, ComplexMatrix::Identity(d, d));
}

// |k l> -> |l k>; target dims are swapped.
inline StructureMap swap_map(const Dims& dims) {
  const Bipartition bip = Bipartition::trivial(dims);
  const int d1 = dims[0], d2 = dims[1];
  ComplexMatrix u = ComplexMatrix::Zero(d1 * d2, d1 * d2);
  for (int k = 0; k < d1; ++k)
    for (int l = 0; l < d2; ++l) u(l * d1 + k, k * d2 + l) = 1.0;
  return StructureMap(bip, {d2, d1}, u);
}

// Columns are |Phi+>, |Psi+>, |Phi->, |Psi->: U = CNOT (H x I).
inline StructureMap bell_map() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix u(4, 4);
  u << s, 0, s, 0,
       0, s, 0, s,
       0, s, 0, -s,
       s, 0, -s, 0;
  return StructureMap(Bipartition::trivial({2, 2}), {2, 2}, u);
}

// Pure factor regrouping; the unitary is the identity on the regrouped space.
inline StructureMap regroup_map(const Bipartition& bip) {
  const int d = total_dim(bip.dims());
  return StructureMap(bip, {bip.dim_a(), bip.dim_b()}, ComplexMatrix::Identity(d, d));
}

class CoefficientTensor {
 public:
  // columns(alpha*dB + beta, k*d2 + l) = C^{kl}_{alpha beta}
  CoefficientTensor(std::array<int, 4> shape, ComplexMatrix columns)
      : shape_(shape), columns_(std::move(columns)) {
    if (columns_.rows() != shape_[2] * shape_[3] || columns_.cols() != shape_[0] * shape_[1])
      throw ValidationError("CoefficientTensor: shape mismatch");
  }

  // (d1, d2, dA, dB)
  const std::array<int, 4>& shape() const { return shape_; }

  Complex operator()(int k, int l, int alpha, int beta) const {
    return columns_(alpha * shape_[3] + beta, k * shape_[1] + l);
  }

  // Column k*d2+l holds the expansion of |k l> in the new product basis.
  const ComplexMatrix& columns() const { return columns_; }

  // max |sum_{alpha beta} C^{kl} C^{k'l'*} - delta delta|
  double normalization_error() const {
    const int n = static_cast<int>(columns_.cols());
    return max_abs(columns_.adjoint() * columns_ - ComplexMatrix::Identity(n, n));
  }

  // The (dA x dB) slice C^{kl}_{..}.
  ComplexMatrix slice(int k, int l) const {
    ComplexMatrix s(shape_[2], shape_[3]);
    for (int a = 0; a < shape_[2]; ++a)
      for (int b = 0; b < shape_[3]; ++b) s(a, b) = (*this)(k, l, a, b);
    return s;
  }

 private:
  std::array<int, 4> shape_;
  ComplexMatrix columns_;
};

inline CoefficientTensor extract_coefficients(const StructureMap& map) {
  return CoefficientTensor({map.source().dim_a(), map.source().dim_b(), map.target_dims()[0], map.target_dims()[1]},
                           map.unitary());
}

struct ProductTest {
  bool is_product = false;
  double residual = 0.0;  // second singular value of the slice
};

// Is |k>|l> still a product vector in the target structure?
inline ProductTest product_coefficient_test(const CoefficientTensor& c, int k, int l) {
  if (k < 0 || k >= c.shape()[0] || l < 0 || l >= c.shape()[1])
    throw ValidationError("product_coefficient_test: index out of range");
  Eigen::JacobiSVD<ComplexMatrix> svd(c.slice(k, l));
  const RealVector& sv = svd.singularValues();
  const double second = sv.size() > 1 ? sv(1) : 0.0;
  return {second <= 1e-9, second};
}

// Truncated single-mode annihilation operator on {|0>, ..., |cutoff-1>}.
inline ComplexMatrix annihilation(int cutoff) {
  ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline ComplexMatrix total_number_operator(int cutoff) {
  ComplexMatrix n = ComplexMatrix::Zero(cutoff * cutoff, cutoff * cutoff);
  for (int n1 = 0; n1 < cutoff; ++n1)
    for (int n2 = 0; n2 < cutoff; ++n2) n(n1 * cutoff + n2, n1 * cutoff + n2) = n1 + n2;
  return n;
}

// exp(theta (a1^dagger a2 - a1 a2^dagger)) on two modes truncated at `cutoff`.
// The generator conserves total photon number, so sectors with N < cutoff
// are represented exactly; |1,0> -> cos(theta)|1,0> - sin(theta)|0,1>.
inline StructureMap beamsplitter_map(int cutoff, double theta) {
  if (cutoff < 2) throw ValidationError("beamsplitter_map: cutoff must be >= 2");
  const ComplexMatrix a = annihilation(cutoff);
  const ComplexMatrix hop = kron(a.adjoint(), a);  // a1^dagger a2
  const ComplexMatrix generator = theta * (hop - hop.adjoint());
  // generator is anti-Hermitian: exp(G) = V exp(-i lambda) V^dagger with i G = V lambda V^dagger.
  const ComplexMatrix h = Complex(0, 1) * generator;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
  const ComplexVector phases = (Complex(0, -1) * solver.eigenvalues().cast<Complex>()).array().exp();
  const ComplexMatrix u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  return StructureMap(Bipartition::trivial({cutoff, cutoff}), {cutoff, cutoff}, u);
}

// Weight on two-mode Fock states with n1 + n2 > cutoff - margin.
inline double leakage_norm(const PureState& psi, int cutoff, int margin) {
  if (psi.dims() != Dims{cutoff, cutoff})
    throw ValidationError("leakage_norm: expected two-mode dims [" + std::to_string(cutoff) + "," +
                          std::to_string(cutoff) + "], got " + dims_string(psi.dims()));
  double w = 0.0;
  for (int n1 = 0; n1 < cutoff; ++n1)
    for (int n2 = 0; n2 < cutoff; ++n2)
      if (n1 + n2 > cutoff - margin) w += std::norm(psi.amplitudes()(n1 * cutoff + n2));
  return w;
}

inline double leakage_norm(const DensityOperator& rho, int cutoff, int margin) {
  if (rho.dims() != Dims{cutoff, cutoff})
    throw ValidationError("leakage_norm: expected two-mode dims [" + std::to_string(cutoff) + "," +
                          std::to_string(cutoff) + "], got " + dims_string(rho.dims()));
  double w = 0.0;
  for (int n1 = 0; n1 < cutoff; ++n1)
    for (int n2 = 0; n2 < cutoff; ++n2)
      if (n1 + n2 > cutoff - margin) w += rho.matrix()(n1 * cutoff + n2, n1 * cutoff + n2).real();
  return w;
}

// Coherent state amplitudes on {|0>, ..., |cutoff-1>}, renormalized after truncation.
inline ComplexVector truncated_coherent(Complex alpha, int cutoff) {
  ComplexVector v(cutoff);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < cutoff; ++n) {
    v(n) = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v / v.norm();
}

inline PureState fock_state(int cutoff, int n1, int n2) {
  return PureState::basis({cutoff, cutoff}, {n1, n2});
}

}  // namespace qcr
