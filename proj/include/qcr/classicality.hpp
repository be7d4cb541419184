// classicality.hpp
// Zero-discord state families and their fate under a change of structure.
//
//   CQ:  rho = sum_k p_k |k><k| (x) rho_k          (classical on one side)
//   CC:  rho = sum_kl p_kl |k><k| (x) |l><l|        (classical on both sides)
//
// Re-expressing the kets |k>|chi^k_l> in a new product basis through the
// coefficient tensor C gives
//   rho = sum w_kl C^{kl}_{ab} C^{kl*}_{a'b'} |a><a'| (x) |b><b'|,
// and the state keeps its classical form in the new structure only if the
// coherent blocks (a != a', and for CC also b != b') vanish.  The residuals
// below measure the largest such block entry.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "qcr/core.hpp"
#include "qcr/measurement.hpp"
#include "qcr/structures.hpp"

namespace qcr {

inline void check_probabilities(std::span<const double> p, const char* what) {
  if (p.empty()) throw ValidationError(std::string(what) + ": empty probability vector");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError(std::string(what) + ": negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << what << ": probabilities sum to " << sum << ", not 1";
    throw ValidationError(os.str());
  }
}

inline void check_orthonormal_columns(const ComplexMatrix& basis, const char* what) {
  if (basis.cols() == 0 || basis.cols() > basis.rows())
    throw ValidationError(std::string(what) + ": basis must have between 1 and d columns");
  const double err = max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(basis.cols(), basis.cols()));
  if (err > 1e-10) {
    std::ostringstream os;
    os << what << ": basis is not orthonormal (error " << err << ")";
    throw ValidationError(os.str());
  }
}

// Weighted pure-state decomposition rho_k = sum_l w_l |chi_l><chi_l|.
struct Ensemble {
  std::vector<double> weights;
  std::vector<ComplexVector> kets;
};

struct CQSpec {
  Side classical_side = Side::A;
  std::vector<double> probs;                       // p_k
  ComplexMatrix classical_basis;                   // columns |k>
  std::vector<DensityOperator> conditional_states; // rho_k on the other side
  std::vector<Ensemble> ensembles;                 // optional; overrides conditional_states when given

  int classical_dim() const { return static_cast<int>(classical_basis.rows()); }

  int other_dim() const {
    if (!ensembles.empty()) return static_cast<int>(ensembles.front().kets.front().size());
    return conditional_states.front().dim();
  }

  Dims dims() const {
    return classical_side == Side::A ? Dims{classical_dim(), other_dim()} : Dims{other_dim(), classical_dim()};
  }

  void validate() const {
    check_probabilities(probs, "CQSpec");
    check_orthonormal_columns(classical_basis, "CQSpec classical basis");
    if (static_cast<int>(probs.size()) != classical_basis.cols())
      throw ValidationError("CQSpec: need one basis vector per probability");
    if (ensembles.empty()) {
      if (conditional_states.size() != probs.size())
        throw ValidationError("CQSpec: need one conditional state per probability");
      for (const auto& s : conditional_states)
        if (s.factor_count() != 1 || s.dim() != other_dim())
          throw ValidationError("CQSpec: conditional states must share one single-factor dimension");
    } else {
      if (ensembles.size() != probs.size()) throw ValidationError("CQSpec: need one ensemble per probability");
      for (const auto& e : ensembles) {
        check_probabilities(e.weights, "CQSpec ensemble");
        if (e.kets.size() != e.weights.size()) throw ValidationError("CQSpec ensemble: weight/ket count mismatch");
        for (const auto& k : e.kets) {
          if (k.size() != other_dim()) throw ValidationError("CQSpec ensemble: ket dimension mismatch");
          if (std::abs(k.norm() - 1.0) > 1e-10) throw ValidationError("CQSpec ensemble: ket not normalized");
        }
      }
    }
    PureState::check_dims(dims());
  }

  // rho_k, assembled from the ensemble when one is given.
  ComplexMatrix conditional(std::size_t k) const {
    if (ensembles.empty()) return conditional_states[k].matrix();
    const auto& e = ensembles[k];
    ComplexMatrix m = ComplexMatrix::Zero(other_dim(), other_dim());
    for (std::size_t l = 0; l < e.kets.size(); ++l) m += e.weights[l] * e.kets[l] * e.kets[l].adjoint();
    return m;
  }

  // The ensemble for rho_k: the given one, or the eigen-decomposition.
  Ensemble ensemble(std::size_t k) const {
    if (!ensembles.empty()) return ensembles[k];
    const Eigensystem es = eigendecompose(conditional(k));
    Ensemble e;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      e.weights.push_back(std::max(es.values(i), 0.0));
      e.kets.push_back(es.vectors.col(i));
    }
    return e;
  }
};

struct CCSpec {
  RealMatrix probs;         // p_kl, d1 x d2
  ComplexMatrix basis_a;    // columns |k>
  ComplexMatrix basis_b;    // columns |l>

  static CCSpec computational(RealMatrix probs) {
    CCSpec s;
    s.basis_a = ComplexMatrix::Identity(probs.rows(), probs.rows());
    s.basis_b = ComplexMatrix::Identity(probs.cols(), probs.cols());
    s.probs = std::move(probs);
    return s;
  }

  Dims dims() const { return {static_cast<int>(basis_a.rows()), static_cast<int>(basis_b.rows())}; }

  void validate() const {
    check_probabilities(std::span<const double>(probs.data(), static_cast<std::size_t>(probs.size())), "CCSpec");
    check_orthonormal_columns(basis_a, "CCSpec basis a");
    check_orthonormal_columns(basis_b, "CCSpec basis b");
    if (probs.rows() != basis_a.cols() || probs.cols() != basis_b.cols())
      throw ValidationError("CCSpec: probability matrix shape does not match the bases");
    PureState::check_dims(dims());
  }
};

inline DensityOperator build_cq_state(const CQSpec& spec) {
  spec.validate();
  const int dc = spec.classical_dim(), d = dc * spec.other_dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < spec.probs.size(); ++k) {
    const ComplexVector ket = spec.classical_basis.col(static_cast<Eigen::Index>(k));
    const ComplexMatrix proj = ket * ket.adjoint();
    const ComplexMatrix cond = spec.conditional(k);
    m += spec.probs[k] * (spec.classical_side == Side::A ? kron(proj, cond) : kron(cond, proj));
  }
  return DensityOperator(spec.dims(), m);
}

inline DensityOperator build_cc_state(const CCSpec& spec) {
  spec.validate();
  const Dims dims = spec.dims();
  const int d = dims[0] * dims[1];
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < spec.probs.rows(); ++k)
    for (Eigen::Index l = 0; l < spec.probs.cols(); ++l) {
      const ComplexVector v = kron(ComplexVector(spec.basis_a.col(k)), ComplexVector(spec.basis_b.col(l)));
      m += spec.probs(k, l) * v * v.adjoint();
    }
  return DensityOperator(dims, m);
}

// Hermitian operator basis of dimension d: sqrt(2/d) I and the generalized
// Gell-Mann matrices, all with tr(F^2) = 2.  For d = 2 this is {I, X, Y, Z}.
inline std::vector<ComplexMatrix> hermitian_operator_basis(int d) {
  std::vector<ComplexMatrix> out;
  out.push_back(std::sqrt(2.0 / d) * ComplexMatrix::Identity(d, d));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d), a = ComplexMatrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0;
      a(j, k) = Complex(0, -1);
      a(k, j) = Complex(0, 1);
      out.push_back(s);
      out.push_back(a);
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < l; ++j) z(j, j) = 1.0;
    z(l, l) = -static_cast<double>(l);
    out.push_back(std::sqrt(2.0 / (l * (l + 1.0))) * z);
  }
  return out;
}

// B_j = tr_other[(I (x) F_j) rho] so that rho is a combination of B_j (x) F_j.
inline std::vector<ComplexMatrix> coefficient_operators(const DensityOperator& rho, Side side) {
  require_bipartite(rho, "coefficient_operators");
  const int db = rho.dims()[1];
  const int ds = rho.dims()[side == Side::A ? 0 : 1];
  const int dother = rho.dims()[side == Side::A ? 1 : 0];
  const ComplexMatrix& m = rho.matrix();
  std::vector<ComplexMatrix> out;
  // B(x,y) = sum_{o,q} F(o,q) <x q| rho |y o>  (side and other factor in state order)
  for (const ComplexMatrix& f : hermitian_operator_basis(dother)) {
    ComplexMatrix b(ds, ds);
    for (int x = 0; x < ds; ++x)
      for (int y = 0; y < ds; ++y) {
        Complex acc = 0.0;
        for (int o = 0; o < dother; ++o)
          for (int q = 0; q < dother; ++q) {
            const int row = side == Side::A ? x * db + q : q * db + x;
            const int col = side == Side::A ? y * db + o : o * db + y;
            acc += f(o, q) * m(row, col);
          }
        b(x, y) = acc;
      }
    out.push_back(std::move(b));
  }
  return out;
}

struct CQVerdict {
  bool accepted = false;
  double max_commutator = 0.0;
  ComplexMatrix basis;  // common eigenbasis (the classical |k>) when accepted
};

inline constexpr double kClassifyTolerance = 1e-8;

inline CQVerdict classify_cq(const DensityOperator& rho, Side side, double tolerance = kClassifyTolerance) {
  const auto ops = coefficient_operators(rho, side);
  CQVerdict v;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      v.max_commutator = std::max(v.max_commutator, max_abs(ops[i] * ops[j] - ops[j] * ops[i]));
  v.accepted = v.max_commutator <= tolerance;
  if (!v.accepted) return v;

  // A generic real combination of commuting Hermitian operators has an
  // eigenbasis that diagonalizes all of them; a few draws guard against an
  // unlucky degenerate combination.
  const int d = static_cast<int>(ops.front().rows());
  std::mt19937_64 rng(0x636c6173736963ULL);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  double best_offdiag = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 6 && best_offdiag > 1e-12; ++attempt) {
    ComplexMatrix combo = ComplexMatrix::Zero(d, d);
    for (const auto& op : ops) combo += coeff(rng) * op;
    const ComplexMatrix basis = eigendecompose(0.5 * (combo + combo.adjoint())).vectors;
    double offdiag = 0.0;
    for (const auto& op : ops) {
      ComplexMatrix rot = basis.adjoint() * op * basis;
      rot.diagonal().setZero();
      offdiag = std::max(offdiag, max_abs(rot));
    }
    if (offdiag < best_offdiag) {
      best_offdiag = offdiag;
      v.basis = basis;
    }
  }
  return v;
}

struct CCVerdict {
  bool accepted = false;
  double max_commutator = 0.0;
  CQVerdict side_a;
  CQVerdict side_b;
  RealMatrix probs;  // recovered p_kl in the witness bases (up to permutation and phase)
};

inline CCVerdict classify_cc(const DensityOperator& rho, double tolerance = kClassifyTolerance) {
  CCVerdict v;
  v.side_a = classify_cq(rho, Side::A, tolerance);
  v.side_b = classify_cq(rho, Side::B, tolerance);
  v.max_commutator = std::max(v.side_a.max_commutator, v.side_b.max_commutator);
  v.accepted = v.side_a.accepted && v.side_b.accepted;
  if (!v.accepted) return v;
  const int da = rho.dims()[0], db = rho.dims()[1];
  v.probs.resize(da, db);
  for (int k = 0; k < da; ++k)
    for (int l = 0; l < db; ++l) {
      const ComplexVector ket = kron(ComplexVector(v.side_a.basis.col(k)), ComplexVector(v.side_b.basis.col(l)));
      v.probs(k, l) = (ket.adjoint() * rho.matrix() * ket)(0, 0).real();
    }
  return v;
}

// Which off-diagonal blocks of the restructured state are tested.
enum class CoherenceFamily {
  A,     // alpha != alpha', any beta, beta'   (one-way, classical side A)
  B,     // beta != beta', any alpha, alpha'   (one-way, classical side B)
  Both,  // alpha != alpha' and beta != beta' (two-way)
};

inline bool in_family(CoherenceFamily f, int a, int a2, int b, int b2) {
  switch (f) {
    case CoherenceFamily::A: return a != a2;
    case CoherenceFamily::B: return b != b2;
    case CoherenceFamily::Both: return a != a2 && b != b2;
  }
  return false;
}

struct ResidualReport {
  double max_residual = 0.0;
  std::array<int, 4> argmax{0, 0, 0, 0};  // (alpha, alpha', beta, beta')
  // |sum| for every tested index tuple in lexicographic order; filled on request.
  std::vector<std::array<int, 4>> indices;
  std::vector<double> values;
};

// max |sum_{k,l} w_kl C^{kl}_{ab} C^{kl*}_{a'b'}| over the family; ties keep
// the lexicographically first index tuple.
inline ResidualReport coherence_residual(const RealMatrix& weights, const CoefficientTensor& c, CoherenceFamily family,
                                         bool dump = false) {
  const auto [d1, d2, da, db] = c.shape();
  if (weights.rows() != d1 || weights.cols() != d2)
    throw ValidationError("coherence_residual: weight table is " + std::to_string(weights.rows()) + "x" +
                          std::to_string(weights.cols()) + ", tensor expects " + std::to_string(d1) + "x" +
                          std::to_string(d2));
  ResidualReport r;
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b)
        for (int b2 = 0; b2 < db; ++b2) {
          if (!in_family(family, a, a2, b, b2)) continue;
          Complex s = 0.0;
          for (int k = 0; k < d1; ++k)
            for (int l = 0; l < d2; ++l)
              if (weights(k, l) != 0.0) s += weights(k, l) * c(k, l, a, b) * std::conj(c(k, l, a2, b2));
          const double v = std::abs(s);
          if (v > r.max_residual) {
            r.max_residual = v;
            r.argmax = {a, a2, b, b2};
          }
          if (dump) {
            r.indices.push_back({a, a2, b, b2});
            r.values.push_back(v);
          }
        }
  return r;
}

// One-way condition: weights p_k omega^k_l on the kets |k>|l>.
inline ResidualReport one_way_coherence_residual(std::span<const double> p, const RealMatrix& omega,
                                                 const CoefficientTensor& c, bool dump = false) {
  check_probabilities(p, "one_way_coherence_residual p");
  if (omega.rows() != static_cast<Eigen::Index>(p.size()))
    throw ValidationError("one_way_coherence_residual: omega needs one row per p_k");
  for (Eigen::Index k = 0; k < omega.rows(); ++k) {
    const RealVector row = omega.row(k).transpose();
    check_probabilities(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())),
                        "one_way_coherence_residual omega row");
  }
  if (c.normalization_error() > 1e-9) throw ValidationError("one_way_coherence_residual: tensor is not normalized");
  RealMatrix w(omega.rows(), omega.cols());
  for (Eigen::Index k = 0; k < omega.rows(); ++k) w.row(k) = p[static_cast<std::size_t>(k)] * omega.row(k);
  return coherence_residual(w, c, CoherenceFamily::A, dump);
}

// Two-way condition: joint weights p_kl on |k>|l>.
inline ResidualReport two_way_coherence_residual(const RealMatrix& p_kl, const CoefficientTensor& c, bool dump = false) {
  check_probabilities(std::span<const double>(p_kl.data(), static_cast<std::size_t>(p_kl.size())),
                      "two_way_coherence_residual");
  if (c.normalization_error() > 1e-9) throw ValidationError("two_way_coherence_residual: tensor is not normalized");
  return coherence_residual(p_kl, c, CoherenceFamily::Both, dump);
}

// Weighted kets of a spec, expressed in the target structure: column (k, l)
// of the tensor is U |k>|chi^k_l> (or U |chi^k_l>|k> when B is classical).
struct WeightedExpansion {
  RealMatrix weights;
  CoefficientTensor tensor;
};

inline void check_spec_map(const Dims& dims, const StructureMap& map) {
  if (map.source().dims() != dims || !map.source().is_identity())
    throw ValidationError("structure map source " + dims_string(map.source().dims()) +
                          " does not match the spec's bipartite dims " + dims_string(dims));
}

inline WeightedExpansion weighted_expansion(const CQSpec& spec, const StructureMap& map) {
  spec.validate();
  check_spec_map(spec.dims(), map);
  const std::size_t nk = spec.probs.size();
  std::vector<Ensemble> ens;
  std::size_t nl = 0;
  for (std::size_t k = 0; k < nk; ++k) {
    ens.push_back(spec.ensemble(k));
    nl = std::max(nl, ens.back().kets.size());
  }
  const int d = map.dim();
  RealMatrix w = RealMatrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nl));
  ComplexMatrix cols = ComplexMatrix::Zero(d, static_cast<Eigen::Index>(nk * nl));
  for (std::size_t k = 0; k < nk; ++k) {
    const ComplexVector ck = spec.classical_basis.col(static_cast<Eigen::Index>(k));
    for (std::size_t l = 0; l < ens[k].kets.size(); ++l) {
      const ComplexVector ref = spec.classical_side == Side::A ? kron(ck, ens[k].kets[l]) : kron(ens[k].kets[l], ck);
      w(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = spec.probs[k] * ens[k].weights[l];
      cols.col(static_cast<Eigen::Index>(k * nl + l)) = map.unitary() * ref;
    }
  }
  return {w, CoefficientTensor({static_cast<int>(nk), static_cast<int>(nl), map.target_dims()[0], map.target_dims()[1]},
                               cols)};
}

inline WeightedExpansion weighted_expansion(const CCSpec& spec, const StructureMap& map) {
  spec.validate();
  check_spec_map(spec.dims(), map);
  const Eigen::Index d1 = spec.probs.rows(), d2 = spec.probs.cols();
  ComplexMatrix cols(map.dim(), d1 * d2);
  for (Eigen::Index k = 0; k < d1; ++k)
    for (Eigen::Index l = 0; l < d2; ++l)
      cols.col(k * d2 + l) =
          map.unitary() * kron(ComplexVector(spec.basis_a.col(k)), ComplexVector(spec.basis_b.col(l)));
  return {spec.probs, CoefficientTensor({static_cast<int>(d1), static_cast<int>(d2), map.target_dims()[0],
                                         map.target_dims()[1]},
                                        cols)};
}

inline CoherenceFamily one_way_family(const CQSpec& spec) {
  return spec.classical_side == Side::A ? CoherenceFamily::A : CoherenceFamily::B;
}

// Residuals of a spec under a map. For a CC spec the one-way residual uses
// the classical side A (p_k omega^k_l = p_kl).
inline ResidualReport one_way_residual(const CQSpec& spec, const StructureMap& map) {
  const auto e = weighted_expansion(spec, map);
  return coherence_residual(e.weights, e.tensor, one_way_family(spec));
}
inline ResidualReport two_way_residual(const CQSpec& spec, const StructureMap& map) {
  const auto e = weighted_expansion(spec, map);
  return coherence_residual(e.weights, e.tensor, CoherenceFamily::Both);
}
inline ResidualReport one_way_residual(const CCSpec& spec, const StructureMap& map) {
  const auto e = weighted_expansion(spec, map);
  return coherence_residual(e.weights, e.tensor, CoherenceFamily::A);
}
inline ResidualReport two_way_residual(const CCSpec& spec, const StructureMap& map) {
  const auto e = weighted_expansion(spec, map);
  return coherence_residual(e.weights, e.tensor, CoherenceFamily::Both);
}

// The restructured state split into the block-diagonal part (the term that
// keeps the classical form) and everything else.  For a CQ spec the split is
// on the classical index only; for a CC spec "diagonal" means alpha = alpha'
// and beta = beta', so the remainder also holds the mixed blocks
// (alpha = alpha', beta != beta') and (alpha != alpha', beta = beta').
struct Expansion {
  ComplexMatrix diagonal;
  ComplexMatrix off_diagonal;
  ComplexMatrix sum() const { return diagonal + off_diagonal; }
};

namespace detail {
template <class Keep>
Expansion expand(const WeightedExpansion& e, Keep keep_diagonal) {
  const auto [d1, d2, da, db] = e.tensor.shape();
  const int d = da * db;
  Expansion out{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          Complex s = 0.0;
          for (int k = 0; k < d1; ++k)
            for (int l = 0; l < d2; ++l)
              if (e.weights(k, l) != 0.0) s += e.weights(k, l) * e.tensor(k, l, a, b) * std::conj(e.tensor(k, l, a2, b2));
          (keep_diagonal(a, a2, b, b2) ? out.diagonal : out.off_diagonal)(a * db + b, a2 * db + b2) = s;
        }
  return out;
}
}  // namespace detail

inline Expansion expand_restructured(const CQSpec& spec, const StructureMap& map) {
  const Side s = spec.classical_side;
  return detail::expand(weighted_expansion(spec, map),
                        [s](int a, int a2, int b, int b2) { return s == Side::A ? a == a2 : b == b2; });
}

inline Expansion expand_restructured(const CCSpec& spec, const StructureMap& map) {
  return detail::expand(weighted_expansion(spec, map),
                        [](int a, int a2, int b, int b2) { return a == a2 && b == b2; });
}

// (1 - eps) p + eps q with q drawn uniformly from the simplex, so the result
// is a probability vector within total-variation distance eps of p.
inline std::vector<double> perturb_weights(std::span<const double> p, double epsilon, std::uint64_t seed) {
  check_probabilities(p, "perturb_weights");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("perturb_weights: epsilon must lie in (0, 1)");
  std::mt19937_64 rng(mix64(seed));
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> q(p.size());
  double total = 0.0;
  for (double& x : q) total += (x = expo(rng));
  std::vector<double> out(p.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += (out[i] = (1.0 - epsilon) * p[i] + epsilon * q[i] / total);
  for (double& x : out) x /= sum;
  return out;
}

inline RealMatrix perturb_weights(const RealMatrix& p, double epsilon, std::uint64_t seed) {
  const auto flat = perturb_weights(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), epsilon, seed);
  return Eigen::Map<const RealMatrix>(flat.data(), p.rows(), p.cols());
}

// Seeded random zero-discord specs: Haar bases, flat-simplex weights,
// Haar x flat-simplex conditional states.
inline CQSpec random_cq_spec(int classical_dim, int other_dim, Side classical_side, std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed));
  CQSpec s;
  s.classical_side = classical_side;
  s.probs = random_simplex(classical_dim, rng);
  s.classical_basis = random_unitary(classical_dim, rng);
  for (int k = 0; k < classical_dim; ++k)
    s.conditional_states.push_back(random_density_operator({other_dim}, derive_seed(seed, static_cast<std::uint64_t>(k))));
  return s;
}

inline CCSpec random_cc_spec(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed));
  const auto w = random_simplex(dim_a * dim_b, rng);
  CCSpec s;
  s.probs = Eigen::Map<const RealMatrix>(w.data(), dim_a, dim_b);
  s.basis_a = random_unitary(dim_a, rng);
  s.basis_b = random_unitary(dim_b, rng);
  return s;
}

}  // namespace qcr
