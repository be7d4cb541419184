// correlations.hpp
// Mutual information, classical correlations, one- and two-way discord,
// covariance function and negativity of a bipartite density operator.
//
// Side convention: "measured on X" means the projective measurement acts on
// side X.  One-way discord measured on X vanishes iff the state has the form
// sum_k p_k |k><k|_X (x) rho_k, i.e. is classical on X.  Both one-way values
// are always reported so either reading of the subscripts is recoverable.

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcr/core.hpp"
#include "qcr/measurement.hpp"

namespace qcr {

inline constexpr double kClipTolerance = 1e-6;

inline DensityOperator marginal(const DensityOperator& rho, Side side) {
  require_bipartite(rho, "marginal");
  return partial_trace(rho, {side == Side::A ? 0 : 1});
}

inline double mutual_information(const DensityOperator& rho) {
  require_bipartite(rho, "mutual_information");
  return von_neumann_entropy(marginal(rho, Side::A)) + von_neumann_entropy(marginal(rho, Side::B)) -
         von_neumann_entropy(rho);
}

inline double conditional_entropy_given_measurement(const DensityOperator& rho, const ProjectiveMeasurement& m) {
  require_bipartite(rho, "conditional_entropy_given_measurement");
  const int side_dim = rho.dims()[m.side() == Side::A ? 0 : 1];
  if (m.dim() != side_dim)
    throw ValidationError("conditional_entropy_given_measurement: measurement dimension " + std::to_string(m.dim()) +
                          " does not match side dimension " + std::to_string(side_dim));
  const ConditionalEntropyObjective objective(rho, m.side());
  // Each rank-1 projector contributes its range vector.
  ComplexMatrix kets(side_dim, static_cast<Eigen::Index>(m.projectors().size()));
  for (std::size_t i = 0; i < m.projectors().size(); ++i) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.projectors()[i]);
    kets.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(side_dim - 1);
  }
  return objective(kets);
}

struct SideCorrelations {
  double classical = 0.0;     // J measured on this side
  double discord = 0.0;       // clipped
  double raw_discord = 0.0;   // before clipping
  OptimizerResult optimizer;
};

inline SideCorrelations side_correlations(const DensityOperator& rho, Side measured, const OptimizerConfig& config) {
  require_bipartite(rho, "one_way_discord");
  const double s_other = von_neumann_entropy(marginal(rho, other_side(measured)));
  const double mi = mutual_information(rho);
  SideCorrelations out;
  out.optimizer = optimize_conditional_entropy(rho, measured, config);
  out.classical = s_other - out.optimizer.inf_estimate;
  if (out.classical < -kClipTolerance || out.classical > s_other + kClipTolerance) {
    std::ostringstream os;
    os << "classical_correlations: estimate " << out.classical << " outside [0, " << s_other
       << "] (restarts " << out.optimizer.diagnostics.restarts_used << ", spread "
       << out.optimizer.diagnostics.spread << ")";
    throw ComputationError(os.str());
  }
  out.raw_discord = mi - out.classical;
  if (out.raw_discord < -kClipTolerance) {
    std::ostringstream os;
    os << "one_way_discord: negative value " << out.raw_discord << " beyond tolerance";
    throw ComputationError(os.str());
  }
  out.discord = std::max(out.raw_discord, 0.0);
  return out;
}

inline double classical_correlations(const DensityOperator& rho, Side measured, const OptimizerConfig& config) {
  return side_correlations(rho, measured, config).classical;
}

inline double one_way_discord(const DensityOperator& rho, Side measured, const OptimizerConfig& config) {
  return side_correlations(rho, measured, config).discord;
}

inline double two_way_discord(const DensityOperator& rho, const OptimizerConfig& config) {
  return std::max(one_way_discord(rho, Side::A, config), one_way_discord(rho, Side::B, config));
}

// <A (x) B> - <A><B>
inline double covariance_function(const DensityOperator& rho, const ComplexMatrix& obs_a, const ComplexMatrix& obs_b) {
  require_bipartite(rho, "covariance_function");
  if (obs_a.rows() != rho.dims()[0] || obs_a.cols() != rho.dims()[0] || obs_b.rows() != rho.dims()[1] ||
      obs_b.cols() != rho.dims()[1])
    throw ValidationError("covariance_function: observable dimensions do not match dims " + dims_string(rho.dims()));
  if (hermiticity_error(obs_a) > tol::hermitian || hermiticity_error(obs_b) > tol::hermitian)
    throw ValidationError("covariance_function: observable is not Hermitian");
  const Complex joint = (rho.matrix() * kron(obs_a, obs_b)).trace();
  const Complex ea = (marginal(rho, Side::A).matrix() * obs_a).trace();
  const Complex eb = (marginal(rho, Side::B).matrix() * obs_b).trace();
  if (std::abs(joint.imag()) > 1e-9 || std::abs(ea.imag()) > 1e-9 || std::abs(eb.imag()) > 1e-9)
    throw ComputationError("covariance_function: expectation value has a non-negligible imaginary part");
  return joint.real() - ea.real() * eb.real();
}

inline ComplexMatrix partial_transpose_b(const DensityOperator& rho) {
  require_bipartite(rho, "partial_transpose");
  const int da = rho.dims()[0], db = rho.dims()[1];
  ComplexMatrix out(rho.dim(), rho.dim());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) out(a * db + b, a2 * db + b2) = rho.matrix()(a * db + b2, a2 * db + b);
  return out;
}

// (||rho^{T_B}||_1 - 1) / 2
inline double negativity(const DensityOperator& rho) {
  const RealVector ev = hermitian_eigenvalues(partial_transpose_b(rho));
  return (-ev.array()).max(0.0).sum();
}

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical_corr_a = 0.0;  // measured on A
  double classical_corr_b = 0.0;  // measured on B
  double discord_a = 0.0;
  double discord_b = 0.0;
  double two_way_discord = 0.0;
  double negativity = 0.0;
  double raw_discord_a = 0.0;
  double raw_discord_b = 0.0;
  OptimizerDiagnostics diag_a;
  OptimizerDiagnostics diag_b;
};

inline CorrelationReport correlation_report(const DensityOperator& rho, const OptimizerConfig& config) {
  require_bipartite(rho, "correlation_report");
  const SideCorrelations a = side_correlations(rho, Side::A, config);
  const SideCorrelations b = side_correlations(rho, Side::B, config);
  CorrelationReport r;
  r.mutual_info = mutual_information(rho);
  r.classical_corr_a = a.classical;
  r.classical_corr_b = b.classical;
  r.discord_a = a.discord;
  r.discord_b = b.discord;
  r.two_way_discord = std::max(a.discord, b.discord);
  r.negativity = negativity(rho);
  r.raw_discord_a = a.raw_discord;
  r.raw_discord_b = b.raw_discord;
  r.diag_a = a.optimizer.diagnostics;
  r.diag_b = b.optimizer.diagnostics;
  return r;
}

}  // namespace qcr
