#include "qcr/measurement.hpp"
#include "qcr/correlations.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qcr;
using namespace qcr::testing;

namespace {

// Frozen with tests/oracles/derive_values.py (dense Bloch grid + scipy polish).
constexpr double kCcConditionalEntropySideB = 0.6068425588244111;
constexpr double kCqFixtureMinConditionalEntropySideB = 0.4164955306996873;

DensityOperator cq_fixture() {
  // 1/2 |0><0| (x) |0><0| + 1/2 |1><1| (x) |+><+|
  const auto zero = ket_state({2}, {1, 0}), one = ket_state({2}, {0, 1}), plus = ket_state({2}, {1, 1});
  return DensityOperator({2, 2}, 0.5 * kron(zero.matrix(), zero.matrix()) + 0.5 * kron(one.matrix(), plus.matrix()));
}

// sum_k p_k |k><k| (x) rho_k with a Haar-random classical basis.
DensityOperator random_cq_on_a(int da, int db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  const ComplexMatrix basis = random_unitary(da, rng);
  std::vector<double> p(da);
  double total = 0.0;
  for (auto& x : p) total += (x = expo(rng));
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (int k = 0; k < da; ++k) {
    const ComplexMatrix proj = basis.col(k) * basis.col(k).adjoint();
    m += (p[k] / total) * kron(proj, random_state({db}, seed * 31 + k).matrix());
  }
  return DensityOperator({da, db}, m);
}

}  // namespace

TEST(RandomUnitary, ScalarCaseAndDeterminism) {
  const auto u1 = random_unitary(1, 42);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-15);
  const auto a = random_unitary(5, 1234), b = random_unitary(5, 1234);
  EXPECT_EQ(max_abs(a - b), 0.0);
  EXPECT_GT(max_abs(a - random_unitary(5, 1235)), 1e-3);
}

TEST(RandomUnitary, ColumnsOrthonormal) {
  for (int d = 1; d <= 8; ++d) {
    const auto u = random_unitary(d, 7 + d);
    for (int j = 0; j < d; ++j) EXPECT_NEAR(u.col(j).norm(), 1.0, 1e-10);
    EXPECT_LE(unitarity_error(u), 1e-10);
  }
}

TEST(RandomUnitary, FirstMomentMatchesHaar) {
  // E|U_00|^2 = 1/d and E U_00 = 0 under the Haar measure.
  const int d = 3, n = 4000;
  double second = 0.0;
  Complex first = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto u = random_unitary(d, 100000 + i);
    second += std::norm(u(0, 0));
    first += u(0, 0);
  }
  EXPECT_NEAR(second / n, 1.0 / d, 0.02);
  EXPECT_LT(std::abs(first / static_cast<double>(n)), 0.03);
}

TEST(Parameterization, ZeroAnglesIdentityAndUnitarity) {
  for (int d = 2; d <= 4; ++d) {
    MeasurementParameterization p{d, std::vector<double>(d * d, 0.0)};
    expect_matrix_near(p.unitary(), ComplexMatrix::Identity(d, d), 0.0);
    std::mt19937_64 rng(d);
    std::normal_distribution<double> g(0.0, 2.0);
    for (auto& x : p.angles) x = g(rng);
    EXPECT_LE(unitarity_error(p.unitary()), 1e-12);
  }
}

TEST(Parameterization, QubitRotationReachesEveryBlochDirection) {
  // One complex plane rotation reaches any Bloch direction: r = theta/2, phase pi - phi.
  const double theta = 1.2, phi = 0.7;
  const std::vector<double> angles{0.5 * theta * std::cos(phi), 0.5 * theta * std::sin(phi)};
  const ComplexMatrix u = MeasurementParameterization::chart(2, angles);
  const ComplexMatrix ref = bloch_basis(theta, std::numbers::pi - phi);
  // Same projectors up to phases: compare |<u_i|ref_i>|.
  EXPECT_NEAR(std::abs(u.col(0).dot(ref.col(0))), 1.0, 1e-12);
}

TEST(ProjectiveMeasurementInvariants, CompletenessAndOrthogonality) {
  EXPECT_NO_THROW(ProjectiveMeasurement::from_basis(Side::A, random_unitary(3, 5)));
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  EXPECT_THROW(ProjectiveMeasurement(Side::A, {p0}), ValidationError);
  EXPECT_THROW(ProjectiveMeasurement(Side::A, {p0, p0}), ValidationError);
}

TEST(GridOracle, ReferenceStates) {
  EXPECT_NEAR(qubit_grid_oracle(bell(), Side::A), 0.0, 1e-12);
  const auto prod = tensor_product(random_state({2}, 1), random_state({2}, 2));
  const double s_b = von_neumann_entropy(partial_trace(prod, {1}));
  EXPECT_NEAR(qubit_grid_oracle(prod, Side::A, 19), s_b, 1e-10);
  const ConditionalEntropyObjective obj(prod, Side::A);
  EXPECT_NEAR(obj(bloch_basis(1.0, 2.0)), s_b, 1e-10);

  const auto cc = diag_state({2, 2}, {0.4, 0.1, 0.2, 0.3});
  EXPECT_NEAR(ConditionalEntropyObjective(cc, Side::B)(ComplexMatrix::Identity(2, 2)), kCcConditionalEntropySideB, 1e-12);
  EXPECT_NEAR(qubit_grid_oracle(cc, Side::B), kCcConditionalEntropySideB, 1e-12);
}

TEST(GridOracle, RefinementNeverIncreasesTheMinimum) {
  const auto rho = random_state({2, 2}, 17);
  double last = std::numeric_limits<double>::infinity();
  for (int steps : {5, 9, 17, 33, 65}) {
    const double v = qubit_grid_oracle(rho, Side::B, steps);
    EXPECT_LE(v, last + 1e-15);
    last = v;
  }
  EXPECT_THROW(qubit_grid_oracle(random_state({3, 2}, 1), Side::A), ValidationError);
}

TEST(Optimizer, ConstantObjectiveOnProductStates) {
  const auto prod = tensor_product(random_state({3}, 4), random_state({2}, 5));
  const auto r = optimize_conditional_entropy(prod, Side::A, {});
  EXPECT_NEAR(r.inf_estimate, von_neumann_entropy(partial_trace(prod, {1})), 1e-10);
  EXPECT_LE(r.diagnostics.spread, 1e-10);
}

TEST(Optimizer, BellStateReachesZero) {
  EXPECT_NEAR(optimize_conditional_entropy(bell(), Side::A, {}).inf_estimate, 0.0, 1e-12);
  EXPECT_NEAR(optimize_conditional_entropy(bell(), Side::B, {}).inf_estimate, 0.0, 1e-12);
}

TEST(Optimizer, CqFixtureQuantumSideMatchesOracle) {
  const auto rho = cq_fixture();
  const double opt = optimize_conditional_entropy(rho, Side::B, {}).inf_estimate;
  EXPECT_NEAR(opt, qubit_grid_oracle(rho, Side::B), 1e-4);
  EXPECT_NEAR(opt, kCqFixtureMinConditionalEntropySideB, 1e-8);
}

TEST(Optimizer, OracleDominanceOnRandomStates) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto rho = random_state({2, seed % 2 ? 3 : 2}, 500 + seed);
    const double opt = optimize_conditional_entropy(rho, Side::A, {}).inf_estimate;
    const double grid = qubit_grid_oracle(rho, Side::A);
    EXPECT_LE(opt, grid + 1e-6);
    EXPECT_GE(opt, grid - 1e-3);
  }
}

TEST(Optimizer, RandomStartsAloneFindClassicalBasis) {
  OptimizerConfig cfg;
  cfg.informed_starts = false;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto rho = random_cq_on_a(seed % 2 ? 3 : 2, 2, 900 + seed);
    const auto side = side_correlations(rho, Side::A, cfg);
    EXPECT_LE(side.raw_discord, 1e-6) << "seed " << seed;
  }
}

TEST(Optimizer, DeterministicAndStartBounded) {
  const auto rho = random_state({3, 2}, 21);
  OptimizerConfig cfg;
  cfg.seed = 99;
  const auto a = optimize_conditional_entropy(rho, Side::A, cfg);
  const auto b = optimize_conditional_entropy(rho, Side::A, cfg);
  EXPECT_EQ(a.inf_estimate, b.inf_estimate);
  EXPECT_EQ(a.diagnostics.local_optima, b.diagnostics.local_optima);
  EXPECT_EQ(a.diagnostics.restarts_used, cfg.restarts);
  for (double s : a.diagnostics.start_values) EXPECT_LE(a.inf_estimate, s);
  for (std::size_t i = 0; i < a.diagnostics.local_optima.size(); ++i)
    EXPECT_LE(a.diagnostics.local_optima[i], a.diagnostics.start_values[i]);
}

TEST(Optimizer, ObjectiveIgnoresProjectorOrderAndPhase) {
  const auto rho = random_state({3, 3}, 8);
  const ConditionalEntropyObjective obj(rho, Side::B);
  const ComplexMatrix u = random_unitary(3, 3);
  ComplexMatrix permuted(3, 3);
  permuted << u.col(2), u.col(0) * std::polar(1.0, 0.4), u.col(1) * std::polar(1.0, -2.0);
  EXPECT_NEAR(obj(u), obj(permuted), 1e-14);
}

TEST(Optimizer, RejectsOversizedSideAndBadConfig) {
  const auto rho = DensityOperator::maximally_mixed({9, 2});
  EXPECT_THROW(optimize_conditional_entropy(rho, Side::A, {}), ComputationError);
  EXPECT_NO_THROW(optimize_conditional_entropy(rho, Side::B, {}));
  OptimizerConfig bad;
  bad.restarts = 0;
  EXPECT_THROW(optimize_conditional_entropy(bell(), Side::A, bad), ValidationError);
  bad = {};
  bad.tolerance = 0.0;
  EXPECT_THROW(bad.validate(), ValidationError);
}
