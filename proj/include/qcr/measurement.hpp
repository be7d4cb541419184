// measurement.hpp
// Projective measurements on one side of a bipartite state and the search
// for the measurement minimizing the post-measurement conditional entropy
//
//     inf_{Pi}  sum_i p_i S(rho_other | i).
//
// The search is a derivative-free multistart Nelder-Mead over a local unitary
// chart; an exhaustive Bloch-sphere grid serves as an independent oracle when
// the measured side is a qubit.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qcr/core.hpp"

namespace qcr {

enum class Side { A = 0, B = 1 };

inline const char* side_name(Side s) { return s == Side::A ? "a" : "b"; }
inline Side other_side(Side s) { return s == Side::A ? Side::B : Side::A; }

inline void require_bipartite(const DensityOperator& rho, const char* who) {
  if (rho.factor_count() != 2)
    throw ValidationError(std::string(who) + ": expected a bipartite state (2 factors), got dims " +
                          dims_string(rho.dims()));
}

// splitmix64 finalizer; used to derive independent streams from (seed, index).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x51ed270b27d1a3c5ULL));
}

// Haar-distributed unitary: QR of a complex Ginibre matrix, with the phases of
// R's diagonal moved into Q so the distribution is exactly Haar.
inline ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw ValidationError("random_unitary: d must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    q.col(j) *= mag > 0.0 ? r(j, j) / mag : Complex(1.0);
  }
  return q;
}

inline ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed));
  return random_unitary(d, rng);
}

// Uniform point on the probability simplex (normalized exponentials).
inline std::vector<double> random_simplex(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  for (double& x : w) x /= total;
  return w;
}

// Haar unitary times a flat-simplex spectrum.
inline DensityOperator random_density_operator(const Dims& dims, std::uint64_t seed) {
  PureState::check_dims(dims);
  const int d = total_dim(dims);
  std::mt19937_64 rng(mix64(seed));
  const auto w = random_simplex(d, rng);
  const ComplexMatrix u = random_unitary(d, rng);
  RealVector spec(d);
  for (int i = 0; i < d; ++i) spec(i) = w[static_cast<std::size_t>(i)];
  return DensityOperator(dims, u * spec.cast<Complex>().asDiagonal() * u.adjoint());
}

class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(Side side, std::vector<ComplexMatrix> projectors)
      : side_(side), projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw ValidationError("ProjectiveMeasurement: no projectors");
    const Eigen::Index d = projectors_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
      const auto& p = projectors_[i];
      if (p.rows() != d || p.cols() != d) throw ValidationError("ProjectiveMeasurement: projector shape mismatch");
      sum += p;
      for (std::size_t j = 0; j < projectors_.size(); ++j) {
        const ComplexMatrix expect = i == j ? p : ComplexMatrix::Zero(d, d);
        if (max_abs(p * projectors_[j] - expect) > 1e-9)
          throw ValidationError("ProjectiveMeasurement invariant violated: orthonormality");
      }
    }
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > 1e-9)
      throw ValidationError("ProjectiveMeasurement invariant violated: completeness");
  }

  // Rank-1 projectors onto the columns of a unitary.
  static ProjectiveMeasurement from_basis(Side side, const ComplexMatrix& basis) {
    std::vector<ComplexMatrix> ps;
    for (Eigen::Index i = 0; i < basis.cols(); ++i) ps.push_back(basis.col(i) * basis.col(i).adjoint());
    return ProjectiveMeasurement(side, std::move(ps));
  }

  Side side() const { return side_; }
  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }

 private:
  Side side_;
  std::vector<ComplexMatrix> projectors_;
};

// Evaluates sum_i p_i S(rho_other|i) for rank-1 measurements given as the
// columns of a basis matrix.  Outcomes with p_i <= 1e-12 contribute zero.
class ConditionalEntropyObjective {
 public:
  ConditionalEntropyObjective(const DensityOperator& rho, Side measured) {
    require_bipartite(rho, "conditional entropy");
    const int da = rho.dims()[0], db = rho.dims()[1];
    measured_dim_ = measured == Side::A ? da : db;
    other_dim_ = measured == Side::A ? db : da;
    blocks_.assign(static_cast<std::size_t>(measured_dim_ * measured_dim_),
                   ComplexMatrix::Zero(other_dim_, other_dim_));
    const ComplexMatrix& m = rho.matrix();
    for (int x = 0; x < measured_dim_; ++x)
      for (int y = 0; y < measured_dim_; ++y)
        for (int o = 0; o < other_dim_; ++o)
          for (int q = 0; q < other_dim_; ++q) {
            const int row = measured == Side::A ? x * db + o : o * db + x;
            const int col = measured == Side::A ? y * db + q : q * db + y;
            blocks_[x * measured_dim_ + y](o, q) = m(row, col);
          }
  }

  int measured_dim() const { return measured_dim_; }
  int other_dim() const { return other_dim_; }

  // Unnormalized conditional state of the other side for outcome |u>.
  ComplexMatrix conditional(const ComplexVector& u) const {
    ComplexMatrix s = ComplexMatrix::Zero(other_dim_, other_dim_);
    for (int x = 0; x < measured_dim_; ++x) {
      const Complex cx = std::conj(u(x));
      if (cx == Complex(0.0)) continue;
      for (int y = 0; y < measured_dim_; ++y) {
        const Complex w = cx * u(y);
        if (w != Complex(0.0)) s += w * blocks_[x * measured_dim_ + y];
      }
    }
    return s;
  }

  double operator()(const ComplexMatrix& basis) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
      const ComplexMatrix s = conditional(basis.col(i));
      const double p = s.trace().real();
      if (p <= 1e-12) continue;
      for (double lambda : hermitian_eigenvalues(s))
        if (lambda > 0.0) total -= lambda * std::log(lambda / p);
    }
    return total;
  }

 private:
  int measured_dim_ = 0;
  int other_dim_ = 0;
  std::vector<ComplexMatrix> blocks_;  // blocks_[x*d+y](o,q) = <x o| rho |y q>
};

// Local unitary chart with d^2 real parameters: for each pair i<j a complex
// plane rotation exp(z E_ij - conj(z) E_ji) with z = angles[2p] + i angles[2p+1],
// composed in lexicographic pair order, followed by d diagonal phases.
// Zero angles give the identity, so the chart is centered on `base`.
struct MeasurementParameterization {
  int dim = 0;
  std::vector<double> angles;

  static int rotation_parameter_count(int d) { return d * (d - 1); }

  ComplexMatrix unitary() const { return chart(dim, angles); }

  static ComplexMatrix chart(int d, std::span<const double> angles) {
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    std::size_t p = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j, p += 2) {
        const Complex z(p < angles.size() ? angles[p] : 0.0, p + 1 < angles.size() ? angles[p + 1] : 0.0);
        const double r = std::abs(z);
        if (r == 0.0) continue;
        const double c = std::cos(r);
        const Complex s = z * (std::sin(r) / r);
        // u <- u * G, where G acts on columns i and j.
        for (int row = 0; row < d; ++row) {
          const Complex ui = u(row, i), uj = u(row, j);
          u(row, i) = ui * c - uj * std::conj(s);
          u(row, j) = ui * s + uj * c;
        }
      }
    for (int k = 0; k < d; ++k, ++p)
      if (p < angles.size() && angles[p] != 0.0) u.col(k) *= std::polar(1.0, angles[p]);
    return u;
  }
};

struct OptimizerConfig {
  int restarts = 24;
  int max_iterations = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  // Restarts 0 and 1 start from the computational basis and from the
  // eigenbasis of the measured marginal; the rest are Haar-random.
  bool informed_starts = true;

  void validate() const {
    if (restarts < 1) throw ValidationError("optimizer.restarts must be positive");
    if (max_iterations < 1) throw ValidationError("optimizer.max_iter must be positive");
    if (!(tolerance > 0.0)) throw ValidationError("optimizer.tol must be > 0");
  }
};

namespace detail {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead with standard coefficients. On convergence (objective spread
// <= tol) the simplex is rebuilt around the best vertex; the search stops
// once a rebuild no longer improves by more than tol.
template <class F>
SimplexResult nelder_mead(F&& f, std::vector<double> x0, double step, int max_iterations, double tol) {
  const std::size_t n = x0.size();
  SimplexResult res{x0, f(x0), 0, false};
  if (n == 0) {
    res.converged = true;
    return res;
  }
  std::vector<std::vector<double>> pts(n + 1);
  std::vector<double> vals(n + 1);

  auto build = [&](const std::vector<double>& centre, double centre_value) {
    pts[0] = centre;
    vals[0] = centre_value;
    for (std::size_t i = 0; i < n; ++i) {
      pts[i + 1] = centre;
      pts[i + 1][i] += step;
      vals[i + 1] = f(pts[i + 1]);
    }
  };

  build(res.x, res.value);
  double last_rebuild_best = res.value;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (res.iterations < max_iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    if (vals[worst] - vals[best] <= tol) {
      if (last_rebuild_best - vals[best] <= tol && res.iterations > 0) {
        res.converged = true;
        break;
      }
      last_rebuild_best = vals[best];
      const auto centre = pts[best];
      const double cv = vals[best];
      build(centre, cv);
      ++res.iterations;
      continue;
    }
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - pts[worst][i]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      for (std::size_t i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (centroid[i] - pts[worst][i]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    for (std::size_t i = 0; i < n; ++i)
      xc[i] = outside ? centroid[i] + 0.5 * (xr[i] - centroid[i]) : centroid[i] + 0.5 * (pts[worst][i] - centroid[i]);
    const double fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
      vals[k] = f(pts[k]);
    }
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  if (*it < res.value) {
    res.value = *it;
    res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  }
  return res;
}

}  // namespace detail

struct OptimizerDiagnostics {
  int restarts_used = 0;
  int best_restart = 0;
  std::vector<double> best_parameters;  // chart angles at the best point of the best restart
  std::vector<double> local_optima;     // one per restart, in restart order
  std::vector<double> start_values;     // objective at each restart's start point
  double spread = 0.0;                  // max - min of local_optima
  int converged_restarts = 0;
  long evaluations = 0;
};

struct OptimizerResult {
  double inf_estimate = 0.0;
  ComplexMatrix best_basis;  // columns are the measurement kets
  OptimizerDiagnostics diagnostics;

  ProjectiveMeasurement best_measurement(Side side) const {
    return ProjectiveMeasurement::from_basis(side, best_basis);
  }
};

inline constexpr int kMaxMeasuredDim = 8;

inline OptimizerResult optimize_conditional_entropy(const DensityOperator& rho, Side side, const OptimizerConfig& config) {
  config.validate();
  require_bipartite(rho, "optimize_conditional_entropy");
  const ConditionalEntropyObjective objective(rho, side);
  const int d = objective.measured_dim();
  if (d > kMaxMeasuredDim)
    throw ComputationError("optimize_conditional_entropy: measured side dimension " + std::to_string(d) +
                           " exceeds the supported maximum of " + std::to_string(kMaxMeasuredDim));

  const int nparams = MeasurementParameterization::rotation_parameter_count(d);
  OptimizerResult out;
  auto& diag = out.diagnostics;
  out.inf_estimate = std::numeric_limits<double>::infinity();

  ComplexMatrix marginal_basis;
  if (config.informed_starts) {
    const DensityOperator marginal = partial_trace(rho, {side == Side::A ? 0 : 1});
    marginal_basis = eigendecompose(marginal.matrix()).vectors;
  }

  for (int r = 0; r < config.restarts; ++r) {
    ComplexMatrix base;
    if (config.informed_starts && r == 0)
      base = ComplexMatrix::Identity(d, d);
    else if (config.informed_starts && r == 1)
      base = marginal_basis;
    else
      base = random_unitary(d, derive_seed(config.seed, static_cast<std::uint64_t>(r)));

    long evals = 0;
    auto f = [&](const std::vector<double>& angles) {
      ++evals;
      return objective(base * MeasurementParameterization::chart(d, angles));
    };
    const double start = objective(base);
    auto local = detail::nelder_mead(f, std::vector<double>(nparams, 0.0), 0.25, config.max_iterations, config.tolerance);
    // The start point is itself a candidate, so the estimate never exceeds it.
    if (start <= local.value) {
      local.value = start;
      local.x.assign(nparams, 0.0);
    }

    diag.start_values.push_back(start);
    diag.local_optima.push_back(local.value);
    diag.evaluations += evals + 1;
    diag.converged_restarts += local.converged ? 1 : 0;
    ++diag.restarts_used;
    if (local.value < out.inf_estimate) {
      out.inf_estimate = local.value;
      out.best_basis = base * MeasurementParameterization::chart(d, local.x);
      diag.best_restart = r;
      diag.best_parameters = local.x;
    }
  }
  const auto [lo, hi] = std::minmax_element(diag.local_optima.begin(), diag.local_optima.end());
  diag.spread = *hi - *lo;
  if (!std::isfinite(out.inf_estimate))
    throw ComputationError("optimize_conditional_entropy: objective is not finite (restarts used " +
                           std::to_string(diag.restarts_used) + ")");
  return out;
}

// Qubit measurement basis with Bloch vector (theta, phi).
inline ComplexMatrix bloch_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix u(2, 2);
  u << c, -std::conj(e) * s,
       e * s, c;
  return u;
}

// Exhaustive search over theta in [0, pi] (grid_steps points, endpoints
// included) and phi in [0, 2 pi) (2 (grid_steps - 1) points).  Doubling
// grid_steps - 1 refines the grid to a superset, so the minimum can only drop.
inline double qubit_grid_oracle(const DensityOperator& rho, Side side, int grid_steps = 181) {
  require_bipartite(rho, "qubit_grid_oracle");
  const ConditionalEntropyObjective objective(rho, side);
  if (objective.measured_dim() != 2)
    throw ValidationError("qubit_grid_oracle: measured side is not a qubit (dimension " +
                          std::to_string(objective.measured_dim()) + ")");
  if (grid_steps < 2) throw ValidationError("qubit_grid_oracle: grid_steps must be >= 2");
  const int phi_steps = 2 * (grid_steps - 1);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_steps; ++i) {
    const double theta = std::numbers::pi * i / (grid_steps - 1);
    for (int j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / phi_steps;
      best = std::min(best, objective(bloch_basis(theta, phi)));
    }
  }
  return best;
}

}  // namespace qcr
