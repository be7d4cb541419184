#include "qcr/scenarios.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qcr;
using namespace qcr::testing;

namespace {

// Frozen with tests/oracles/derive_values.py.
constexpr double kBellDiagonalDiscord = 0.0241572567811712;
constexpr double kSeparableDiscord = 0.09993575274934996;

template <class F>
std::string validation_message(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Fixtures, RegistryIsConsistent) {
  std::set<std::string> ids;
  for (const auto& f : fixtures()) {
    EXPECT_TRUE(ids.insert(f.id).second) << f.id;
    EXPECT_EQ(f.state().factor_count(), 2u) << f.id;
  }
  EXPECT_EQ(find_fixture("cc-0.4-0.1-0.2-0.3").state().matrix()(1, 1).real(), 0.1);
  EXPECT_NE(validation_message([] { find_fixture("nope"); }).find("unknown fixture"), std::string::npos);
}

TEST(Fixtures, ClassicalSpecRecovery) {
  const Spec product = classical_spec(find_fixture("product"));
  ASSERT_TRUE(std::holds_alternative<CCSpec>(product));
  EXPECT_LE(max_abs(build_state(product).matrix() - find_fixture("product").state().matrix()), 1e-12);
  EXPECT_NE(validation_message([] { classical_spec(find_fixture("bell")); }).find("source not classical"), std::string::npos);

  // A CQ-but-not-CC state given as a plain state comes back as a CQ spec.
  const Fixture loose{"loose", "", find_fixture("cq-zero-plus").state()};
  const Spec cq = classical_spec(loose);
  ASSERT_TRUE(std::holds_alternative<CQSpec>(cq));
  EXPECT_EQ(std::get<CQSpec>(cq).classical_side, Side::A);
  EXPECT_LE(max_abs(build_state(cq).matrix() - loose.state().matrix()), 1e-10);
}

TEST(Maps, NamedIdsResolve) {
  EXPECT_TRUE(resolve_map("identity", {2, 3}).unitary().isIdentity());
  EXPECT_EQ(resolve_map("swap", {2, 3}).target_dims(), (std::array<int, 2>{3, 2}));
  EXPECT_EQ(max_abs(resolve_map("bell", {2, 2}).unitary() - bell_map().unitary()), 0.0);
  EXPECT_EQ(max_abs(resolve_map("beamsplitter:3:0.5", {3, 3}).unitary() - beamsplitter_map(3, 0.5).unitary()), 0.0);
  EXPECT_EQ(resolve_map("regroup:0,2|1", {2, 3, 2}).target_dims(), (std::array<int, 2>{4, 3}));
  EXPECT_EQ(max_abs(resolve_map("random:4", {2, 2}).unitary() - resolve_map("random:4", {2, 2}).unitary()), 0.0);
  for (const char* bad : {"bell2", "beamsplitter:3", "beamsplitter:x:0.1", "random:", "regroup:0", "swap:1"})
    EXPECT_NE(validation_message([&] { resolve_map(bad, {2, 2}); }), "") << bad;
  EXPECT_NE(validation_message([] { resolve_map("bell", {2, 3}); }).find("[2,2]"), std::string::npos);
  EXPECT_NE(validation_message([] { resolve_map("beamsplitter:3:0.1", {2, 2}); }), "");
  EXPECT_EQ(parse_dims("2,3"), (Dims{2, 3}));
  EXPECT_THROW(parse_dims("2,,3"), ValidationError);
}

TEST(QcrDemo, HeadlineFixture) {
  const auto r = scenario_qcr_demo("cc-0.4-0.1-0.2-0.3", "bell", {});
  EXPECT_TRUE(r.qcr_exhibited);
  EXPECT_LE(r.source.two_way_discord, 1e-6);
  EXPECT_NEAR(r.target.two_way_discord, kBellDiagonalDiscord, 1e-6);
  EXPECT_NEAR(r.two_way.max_residual, 0.1, 1e-12);
  EXPECT_LE(r.expansion_error, 1e-10);
  EXPECT_EQ(r.spec_type, "cc");
}

TEST(QcrDemo, ExceptionalAndTrivialCases) {
  const auto uniform = scenario_qcr_demo("cc-uniform", "bell", {});
  EXPECT_FALSE(uniform.qcr_exhibited);
  EXPECT_LE(uniform.target.two_way_discord, 1e-6);
  const auto same = scenario_qcr_demo("cc-0.4-0.1-0.2-0.3", "identity", {});
  EXPECT_FALSE(same.qcr_exhibited);
  EXPECT_LE(same.target.two_way_discord, 1e-6);
  EXPECT_EQ(same.off_diagonal_max, 0.0);
}

TEST(QcrDemo, CqSourceUsesClassicalSide) {
  const auto r = scenario_qcr_demo("cq-zero-plus", "bell", {});
  EXPECT_LE(r.source_discord, 1e-6);
  EXPECT_GT(r.source.discord_b, 0.1);  // the quantum side never vanished
  EXPECT_EQ(r.spec_type, "cq");
  EXPECT_EQ(r.source_discord, r.source.discord_a);
  EXPECT_EQ(r.target_discord, r.target.discord_a);
}

TEST(QcrDemo, NonClassicalSourceRejected) {
  EXPECT_NE(validation_message([] { scenario_qcr_demo("bell", "identity", {}); }).find("source not classical"),
            std::string::npos);
  EXPECT_NE(validation_message([] { scenario_qcr_demo("separable-discordant", "bell", {}); }).find("source not classical"),
            std::string::npos);
}

TEST(QcrDemo, ExpansionIdentityAcrossRegistry) {
  for (const auto& f : fixtures()) {
    Spec spec;
    try {
      spec = classical_spec(f);
    } catch (const ValidationError&) {
      continue;
    }
    for (const auto& id : registry_map_ids(spec_dims(spec))) {
      const StructureMap map = resolve_map(id, spec_dims(spec));
      const auto e = std::visit([&](const auto& s) { return expand_restructured(s, map); }, spec);
      EXPECT_LE(max_abs(e.sum() - restructure(build_state(spec), map).matrix()), 1e-10) << f.id << " " << id;
    }
  }
}

TEST(Teleport, CutsAndCoefficients) {
  const double s = 1.0 / std::sqrt(2.0);
  for (auto [a, b] : {std::pair<Complex, Complex>{1.0, 0.0}, {s, s}}) {
    const auto r = scenario_teleport_structures(a, b, {});
    EXPECT_NEAR(r.first.correlations.mutual_info, 0.0, 1e-9);
    EXPECT_LE(r.first.correlations.two_way_discord, 1e-9);
    EXPECT_NEAR(r.first.correlations.negativity, 0.0, 1e-9);
    EXPECT_NEAR(r.second.correlations.two_way_discord, std::log(2.0), 1e-4);
    EXPECT_NEAR(r.second.correlations.negativity, 0.5, 1e-6);
    EXPECT_LE(r.factor3_marginal_error, 1e-10);
    EXPECT_LE(r.spectrum_gap, 1e-10);
    for (double n : r.bell_coefficient_norms) EXPECT_NEAR(n, 0.5, 1e-12);
  }
  EXPECT_NE(validation_message([] { scenario_teleport_structures(1.0, 1.0, {}); }).find("normalized"), std::string::npos);
}

TEST(SeparableDemo, DiscordWithoutEntanglement) {
  const auto r = scenario_separable_discordant({});
  EXPECT_NEAR(r.correlations.discord_a, kSeparableDiscord, 1e-8);
  EXPECT_NEAR(r.correlations.discord_b, kSeparableDiscord, 1e-8);
  EXPECT_LE(r.correlations.negativity, 1e-9);
  EXPECT_NEAR(r.covariance_zz, 0.25, 1e-12);
}

TEST(Sampling, InjectedClassicalStateCountsBelow) {
  SamplingConfig sc;
  sc.n = 1;
  sc.injected = {find_fixture("cc-0.4-0.1-0.2-0.3").state()};
  sc.relativity_variants = 0;
  const auto r = scenario_measure_sampling(sc, {});
  EXPECT_EQ(r.count, 1);
  EXPECT_EQ(r.below, 1);
  EXPECT_EQ(r.fraction_below, 1.0);
}

TEST(Sampling, GenericStatesAreDiscordantAndReproducible) {
  SamplingConfig sc;
  sc.n = 40;
  sc.seed = 7;
  sc.relativity_variants = 10;
  const auto a = scenario_measure_sampling(sc, {});
  EXPECT_EQ(a.count, 40);
  EXPECT_EQ(a.discord.size(), 40u);
  EXPECT_EQ(a.fraction_below, 0.0);
  EXPECT_EQ(a.relativity_map, "bell");
  EXPECT_EQ(a.relativity_source_zero, 10);
  EXPECT_EQ(a.relativity_restored, 10);
  const auto b = scenario_measure_sampling(sc, {});
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  sc.n = 0;
  EXPECT_THROW(scenario_measure_sampling(sc, {}), ValidationError);
}

TEST(CvDemo, BeamsplitterCorrelations) {
  const auto quarter = scenario_cv_demo(4, std::numbers::pi / 4, 1, 0, {});
  EXPECT_NEAR(quarter.correlations.two_way_discord, std::log(2.0), 1e-4);
  EXPECT_NEAR(quarter.correlations.negativity, 0.5, 1e-6);
  EXPECT_EQ(quarter.leakage, 0.0);
  EXPECT_LE(scenario_cv_demo(4, std::numbers::pi / 2, 1, 0, {}).correlations.two_way_discord, 1e-6);
  EXPECT_LE(scenario_cv_demo(3, 0.9, 0, 0, {}).correlations.two_way_discord, 1e-9);
  EXPECT_NE(validation_message([] { scenario_cv_demo(3, 0.1, 2, 1, {}); }).find("truncation unsafe"), std::string::npos);
}

TEST(Csv, RowsHaveEveryColumn) {
  const auto r = scenario_qcr_demo("cc-0.4-0.1-0.2-0.3", "bell", {});
  const auto rows = csv_rows(r, 1);
  ASSERT_EQ(rows.size(), 2u);
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  EXPECT_EQ(count(rows[0]), count(kCsvHeader));
  EXPECT_EQ(count(rows[1]), count(kCsvHeader));
  EXPECT_EQ(rows[1].rfind("qcr-demo,cc-0.4-0.1-0.2-0.3,bell,", 0), 0u);
}
