#include "qcr/structures.hpp"
#include "qcr/measurement.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qcr;
using namespace qcr::testing;

namespace {

// |phi>_0 (x) (|00> + |11>)/sqrt2 on factors 1,2.
DensityOperator teleport_input(Complex a, Complex b) {
  ComplexVector phi(2);
  phi << a, b;
  ComplexVector pair(4);
  pair << 1, 0, 0, 1;
  return DensityOperator::from_pure(PureState::normalized({2, 2, 2}, kron(ComplexVector(phi.normalized()), pair)));
}

StructureMap random_map(const Dims& dims, std::uint64_t seed) {
  return StructureMap(Bipartition::trivial(dims), {dims[0], dims[1]}, random_unitary(total_dim(dims), seed));
}

}  // namespace

TEST(Bipartition, Validation) {
  EXPECT_THROW(Bipartition({0}, {0}, {2, 2}), ValidationError);
  EXPECT_THROW(Bipartition({0}, {}, {2, 2}), ValidationError);
  EXPECT_THROW(Bipartition({0}, {2}, {2, 2}), ValidationError);
  EXPECT_THROW(Bipartition({0}, {1}, {2, 2, 2}), ValidationError);
  const Bipartition b({2, 0}, {1}, {2, 3, 4});
  EXPECT_EQ(b.dim_a(), 8);
  EXPECT_EQ(b.dim_b(), 3);
  EXPECT_EQ(b.to_string(), "2,0|1");
}

TEST(Regroup, TeleportFirstCutIsProduct) {
  const auto rho = teleport_input(0.6, Complex(0, 0.8));
  const auto cut = regroup(rho, Bipartition({0}, {1, 2}, {2, 2, 2}));
  EXPECT_EQ(cut.dims(), (Dims{2, 4}));
  expect_matrix_near(cut.matrix(), tensor_product(partial_trace(cut, {0}), partial_trace(cut, {1})).matrix(), 1e-12);
}

TEST(Regroup, TeleportSecondCutIsMaximallyEntangled) {
  const auto rho = teleport_input(1, 0);
  const auto cut = regroup(rho, Bipartition({0, 1}, {2}, {2, 2, 2}));
  EXPECT_EQ(cut.dims(), (Dims{4, 2}));
  expect_matrix_near(partial_trace(cut, {1}).matrix(), DensityOperator::maximally_mixed({2}).matrix(), 1e-10);
}

TEST(Regroup, IdentityGroupingAndExactInverse) {
  const auto rho = random_state({2, 3}, 3);
  EXPECT_EQ(max_abs(regroup(rho, Bipartition::trivial({2, 3})).matrix() - rho.matrix()), 0.0);

  const auto big = random_state({2, 3, 2}, 4);
  for (const Bipartition& bip : {Bipartition({2, 0}, {1}, {2, 3, 2}), Bipartition({1}, {2, 0}, {2, 3, 2}),
                                 Bipartition({0, 2}, {1}, {2, 3, 2})}) {
    const auto grouped = regroup(big, bip);
    // Entries are only permuted, so the spectrum is the same multiset.
    EXPECT_LE((grouped.spectrum() - big.spectrum()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(max_abs(ungroup(grouped, bip).matrix() - big.matrix()), 0.0);
  }
}

TEST(Regroup, InconsistentIndicesRejected) {
  EXPECT_THROW(regroup(random_state({2, 2}, 1), Bipartition({0}, {1, 2}, {2, 2, 2})), ValidationError);
}

TEST(Restructure, IdentityMaximallyMixedAndBell) {
  const auto rho = random_state({2, 2}, 8);
  expect_matrix_near(restructure(rho, identity_map({2, 2})).matrix(), rho.matrix(), 1e-15);

  const auto mixed = DensityOperator::maximally_mixed({2, 2});
  expect_matrix_near(restructure(mixed, random_map({2, 2}, 4)).matrix(), mixed.matrix(), 1e-12);

  const auto cc = diag_state({2, 2}, {0.4, 0.1, 0.2, 0.3});
  const auto out = restructure(cc, bell_map());
  // Bell-diagonal: <00|rho|11> = (0.4 - 0.2)/2, <01|rho|10> = (0.1 - 0.3)/2.
  EXPECT_NEAR(std::abs(out.matrix()(0, 3)), 0.1, 1e-12);
  EXPECT_NEAR(std::abs(out.matrix()(1, 2)), 0.1, 1e-12);
}

TEST(Restructure, SpectrumPreservedAndErrors) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_state({2, 3}, seed);
    const StructureMap map(Bipartition::trivial({2, 3}), {3, 2}, random_unitary(6, seed + 77));
    const auto out = restructure(rho, map);
    EXPECT_EQ(out.dims(), (Dims{3, 2}));
    EXPECT_LE((out.spectrum() - rho.spectrum()).cwiseAbs().maxCoeff(), 1e-8);
  }
  EXPECT_THROW(restructure(random_state({2, 3}, 1), bell_map()), ValidationError);
  EXPECT_THROW(StructureMap(Bipartition::trivial({2, 2}), {2, 2}, ComplexMatrix::Identity(4, 4) * 2.0),
               ValidationError);
  EXPECT_THROW(StructureMap(Bipartition::trivial({2, 2}), {3, 2}, ComplexMatrix::Identity(4, 4)), ValidationError);
}

TEST(Coefficients, IdentitySwapBell) {
  const auto id = extract_coefficients(identity_map({2, 3}));
  const auto sw = extract_coefficients(swap_map({2, 3}));
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 3; ++l) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) EXPECT_EQ(id(k, l, a, b), Complex(k == a && l == b ? 1.0 : 0.0));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_EQ(sw(k, l, a, b), Complex(k == b && l == a ? 1.0 : 0.0));
    }
  const auto bell = extract_coefficients(bell_map());
  for (int i = 0; i < 16; ++i) {
    const double m = std::abs(bell(i / 8, (i / 4) % 2, (i / 2) % 2, i % 2));
    EXPECT_TRUE(std::abs(m) < 1e-15 || std::abs(m - 1.0 / std::sqrt(2.0)) < 1e-15) << m;
  }
}

TEST(Coefficients, NormalizationAndFunctoriality) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m1 = random_map({2, 3}, seed);
    const auto m2 = random_map({2, 3}, seed + 100);
    EXPECT_LE(extract_coefficients(m1).normalization_error(), 1e-9);
    const auto composed = extract_coefficients(compose(m2, m1));
    const ComplexMatrix product = extract_coefficients(m2).columns() * extract_coefficients(m1).columns();
    expect_matrix_near(composed.columns(), product, 1e-12);
  }
  EXPECT_THROW(compose(bell_map(), random_map({2, 3}, 1)), ValidationError);
}

TEST(ProductCoefficientTest, IdentityBellSwap) {
  const auto id = product_coefficient_test(extract_coefficients(identity_map({2, 2})), 1, 0);
  EXPECT_TRUE(id.is_product);
  EXPECT_EQ(id.residual, 0.0);
  const auto b = product_coefficient_test(extract_coefficients(bell_map()), 0, 0);
  EXPECT_FALSE(b.is_product);
  EXPECT_NEAR(b.residual, 1.0 / std::sqrt(2.0), 1e-12);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 3; ++l) EXPECT_TRUE(product_coefficient_test(extract_coefficients(swap_map({2, 3})), k, l).is_product);
}

TEST(Beamsplitter, ZeroAngleIsIdentity) {
  const auto map = beamsplitter_map(4, 0.0);
  expect_matrix_near(map.unitary(), ComplexMatrix::Identity(16, 16), 1e-14);
}

TEST(Beamsplitter, OnePhotonSectorRotation) {
  const int cutoff = 4;
  const ComplexVector in = fock_state(cutoff, 1, 0).amplitudes();
  const auto quarter = beamsplitter_map(cutoff, std::numbers::pi / 4).unitary() * in;
  // Declared convention: |1,0> -> cos(theta)|1,0> - sin(theta)|0,1>.
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(quarter(1 * cutoff + 0) - s), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(quarter(0 * cutoff + 1) + s), 0.0, 1e-12);
  const auto half = beamsplitter_map(cutoff, std::numbers::pi / 2).unitary() * in;
  EXPECT_NEAR(std::abs(half(0 * cutoff + 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(half(1 * cutoff + 0)), 0.0, 1e-12);
}

TEST(Beamsplitter, ConservesTotalPhotonNumber) {
  for (int cutoff : {2, 3, 5}) {
    for (double theta : {0.3, 1.1, 2.9}) {
      const ComplexMatrix u = beamsplitter_map(cutoff, theta).unitary();
      const ComplexMatrix n = total_number_operator(cutoff);
      EXPECT_LE(max_abs(u * n - n * u), 1e-9);
    }
  }
  EXPECT_THROW(beamsplitter_map(1, 0.1), ValidationError);
}

TEST(Beamsplitter, TwoPhotonSectorMatchesBosonicRotation) {
  // Below the cutoff the truncated map acts like the untruncated one:
  // a1^dagger -> cos a1^dagger - sin a2^dagger, so |2,0> -> cos^2|2,0> - sqrt2 cos sin|1,1> + sin^2|0,2>.
  const int cutoff = 4;
  const double t = 0.37, c = std::cos(t), s = std::sin(t);
  const ComplexVector out = beamsplitter_map(cutoff, t).unitary() * fock_state(cutoff, 2, 0).amplitudes();
  EXPECT_NEAR(std::abs(out(2 * cutoff + 0) - c * c), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(1 * cutoff + 1) + std::sqrt(2.0) * c * s), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(0 * cutoff + 2) - s * s), 0.0, 1e-12);
}

TEST(Leakage, FockAndCoherent) {
  EXPECT_EQ(leakage_norm(fock_state(4, 1, 0), 4, 1), 0.0);
  EXPECT_EQ(leakage_norm(fock_state(4, 3, 1), 4, 1), 1.0);
  const int cutoff = 8;
  ComplexVector vac = ComplexVector::Zero(cutoff);
  vac(0) = 1.0;
  const PureState coherent({cutoff, cutoff}, kron(truncated_coherent(0.5, cutoff), vac));
  const double leak = leakage_norm(coherent, cutoff, 2);
  // Poisson(0.25) tail above 6 photons, about 1e-8.
  EXPECT_LE(leak, 1e-4);
  EXPECT_GT(leak, 0.0);
  EXPECT_NEAR(leakage_norm(DensityOperator::from_pure(coherent), cutoff, 2), leak, 1e-15);
  EXPECT_THROW(leakage_norm(fock_state(4, 1, 0), 5, 1), ValidationError);
}
