// scenarios.hpp
// End-to-end demonstrations: built-in fixtures, named structure maps and the
// pipelines behind the CLI subcommands.  Every pipeline is a pure function of
// its inputs and the optimizer seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qcr/classicality.hpp"
#include "qcr/correlations.hpp"
#include "qcr/io.hpp"
#include "qcr/structures.hpp"

namespace qcr {

// Zero-discord thresholds used by the pipelines.
inline constexpr double kSourceClassicalThreshold = 1e-4;
inline constexpr double kTargetQuantumThreshold = 1e-2;
inline constexpr double kExpansionTolerance = 1e-10;

// ---- fixtures ----

struct Fixture {
  std::string id;
  std::string description;
  std::variant<CQSpec, CCSpec, DensityOperator> source;

  DensityOperator state() const {
    if (const auto* s = std::get_if<CQSpec>(&source)) return build_cq_state(*s);
    if (const auto* s = std::get_if<CCSpec>(&source)) return build_cc_state(*s);
    return std::get<DensityOperator>(source);
  }
};

namespace detail {

inline DensityOperator pure_qubit_pair(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return DensityOperator::from_pure(PureState::normalized({2, 2}, v));
}

inline DensityOperator projector(int d, std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return DensityOperator::from_pure(PureState::normalized({d}, v));
}

inline RealMatrix probs(int rows, int cols, std::initializer_list<double> v) {
  RealMatrix m(rows, cols);
  auto it = v.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

inline std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"cc-0.4-0.1-0.2-0.3", "CC diag(0.4, 0.1, 0.2, 0.3) on 2x2",
                 CCSpec::computational(probs(2, 2, {0.4, 0.1, 0.2, 0.3}))});
  out.push_back({"cc-uniform", "CC uniform on 2x2 (maximally mixed)", CCSpec::computational(RealMatrix::Constant(2, 2, 0.25))});
  out.push_back({"cc-half-half", "CC diag(1/2, 0, 0, 1/2) on 2x2", CCSpec::computational(probs(2, 2, {0.5, 0.0, 0.0, 0.5}))});
  out.push_back({"cc-3x3", "CC with unequal weights on 3x3",
                 CCSpec::computational(probs(3, 3, {0.2, 0.05, 0.1, 0.05, 0.15, 0.1, 0.1, 0.05, 0.2}))});

  CQSpec zero_plus;
  zero_plus.probs = {0.5, 0.5};
  zero_plus.classical_basis = ComplexMatrix::Identity(2, 2);
  zero_plus.conditional_states = {projector(2, {1, 0}), projector(2, {1, 1})};
  out.push_back({"cq-zero-plus", "CQ 1/2 |0><0| (x) |0><0| + 1/2 |1><1| (x) |+><+|", zero_plus});

  CQSpec two_three;
  two_three.probs = {0.6, 0.4};
  two_three.classical_basis = ComplexMatrix::Identity(2, 2);
  RealVector half(3);
  half << 0.5, 0.5, 0.0;
  two_three.conditional_states = {DensityOperator({3}, half.cast<Complex>().asDiagonal()), projector(3, {1, 1, 1})};
  out.push_back({"cq-2x3", "CQ on 2x3: 0.6 |0><0| (x) diag(1/2,1/2,0) + 0.4 |1><1| (x) |u><u|, u uniform", two_three});

  out.push_back({"bell", "Bell state (|00> + |11>)/sqrt2", pure_qubit_pair({1, 0, 0, 1})});
  out.push_back({"separable-discordant", "1/2 |00><00| + 1/2 |++><++|",
                 DensityOperator({2, 2}, 0.5 * pure_qubit_pair({1, 0, 0, 0}).matrix() +
                                             0.5 * pure_qubit_pair({1, 1, 1, 1}).matrix())});
  RealVector mixed(2);
  mixed << 0.7, 0.3;
  out.push_back({"product", "|0><0| (x) diag(0.7, 0.3)",
                 tensor_product(projector(2, {1, 0}), DensityOperator({2}, mixed.cast<Complex>().asDiagonal()))});
  return out;
}

}  // namespace detail

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> registry = detail::make_fixtures();
  return registry;
}

inline const Fixture& find_fixture(const std::string& id) {
  for (const auto& f : fixtures())
    if (f.id == id) return f;
  std::string known;
  for (const auto& f : fixtures()) known += (known.empty() ? "" : ", ") + f.id;
  throw ValidationError("unknown fixture \"" + id + "\" (known: " + known + ")");
}

// ---- named maps ----

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline long long parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError(what + ": \"" + s + "\" is not an integer");
  return v;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) throw ValidationError(what + ": \"" + s + "\" is not a number");
  return v;
}

inline std::vector<int> parse_indices(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(static_cast<int>(parse_int(part, what)));
  return out;
}

}  // namespace detail

inline Dims parse_dims(const std::string& s) {
  Dims dims;
  for (const auto& part : detail::split(s, ',')) dims.push_back(static_cast<int>(detail::parse_int(part, "dims")));
  PureState::check_dims(dims);
  return dims;
}

// "identity", "swap", "bell", "beamsplitter:<cutoff>:<theta>", "regroup:<i,j|k>",
// "random:<seed>", or a path to a map JSON file.
inline StructureMap resolve_map(const std::string& id, const Dims& dims) {
  const auto parts = detail::split(id, ':');
  const std::string& head = parts.front();
  if (id.size() > 5 && id.substr(id.size() - 5) == ".json") {
    auto map = io::map_from_json(io::read_file(id));
    if (map.source().dims() != dims)
      throw ValidationError("map " + id + " expects dims " + dims_string(map.source().dims()) + ", state has " +
                            dims_string(dims));
    return map;
  }
  if (parts.size() == 1 && head == "identity") return identity_map(dims);
  if (parts.size() == 1 && head == "swap") return swap_map(dims);
  if (parts.size() == 1 && head == "bell") {
    if (dims != Dims{2, 2}) throw ValidationError("map bell needs dims [2,2], got " + dims_string(dims));
    return bell_map();
  }
  if (parts.size() == 3 && head == "beamsplitter") {
    const int cutoff = static_cast<int>(detail::parse_int(parts[1], "beamsplitter cutoff"));
    const double theta = detail::parse_double(parts[2], "beamsplitter theta");
    if (dims != Dims{cutoff, cutoff})
      throw ValidationError("map " + id + " needs dims [" + parts[1] + "," + parts[1] + "], got " + dims_string(dims));
    return beamsplitter_map(cutoff, theta);
  }
  if (parts.size() == 2 && head == "regroup") {
    const auto sides = detail::split(parts[1], '|');
    if (sides.size() != 2) throw ValidationError("map " + id + ": expected regroup:<indices>|<indices>");
    return regroup_map(Bipartition(detail::parse_indices(sides[0], "regroup"), detail::parse_indices(sides[1], "regroup"), dims));
  }
  if (parts.size() == 2 && head == "random") {
    const auto seed = static_cast<std::uint64_t>(detail::parse_int(parts[1], "random map seed"));
    return StructureMap(Bipartition::trivial(dims), {dims[0], dims[1]}, random_unitary(total_dim(dims), seed));
  }
  throw ValidationError("unknown map \"" + id +
                        "\" (known: identity, swap, bell, beamsplitter:<cutoff>:<theta>, regroup:<a>|<b>, random:<seed>, "
                        "or a .json file)");
}

// Maps exercised for a bipartite fixture of the given dims.
inline std::vector<std::string> registry_map_ids(const Dims& dims) {
  std::vector<std::string> ids{"identity", "swap", "random:1", "random:2"};
  if (dims == Dims{2, 2}) ids.push_back("bell");
  if (dims.size() == 2 && dims[0] == dims[1]) ids.push_back("beamsplitter:" + std::to_string(dims[0]) + ":0.6");
  return ids;
}

// ---- zero-discord spec for a fixture ----

using Spec = io::Spec;

inline Dims spec_dims(const Spec& s) {
  return std::visit([](const auto& x) { return x.dims(); }, s);
}

inline DensityOperator build_state(const Spec& s) {
  if (const auto* cq = std::get_if<CQSpec>(&s)) return build_cq_state(*cq);
  return build_cc_state(std::get<CCSpec>(s));
}

namespace detail {

inline CQSpec cq_from_witness(const DensityOperator& rho, Side side, const ComplexMatrix& basis) {
  const int ds = rho.dims()[side == Side::A ? 0 : 1];
  const int dother = rho.dims()[side == Side::A ? 1 : 0];
  const ComplexMatrix& m = rho.matrix();
  CQSpec s;
  s.classical_side = side;
  s.classical_basis = basis;
  std::vector<ComplexMatrix> blocks;
  double total = 0.0;
  for (int k = 0; k < ds; ++k) {
    // p_k rho_k = (<k| (x) I) rho (|k> (x) I)
    ComplexMatrix cond = ComplexMatrix::Zero(dother, dother);
    for (int a = 0; a < ds; ++a)
      for (int a2 = 0; a2 < ds; ++a2) {
        const Complex w = std::conj(basis(a, k)) * basis(a2, k);
        for (int o = 0; o < dother; ++o)
          for (int o2 = 0; o2 < dother; ++o2)
            cond(o, o2) += w * (side == Side::A ? m(a * dother + o, a2 * dother + o2) : m(o * ds + a, o2 * ds + a2));
      }
    const double pk = std::max(cond.trace().real(), 0.0);
    s.probs.push_back(pk);
    total += pk;
    blocks.push_back(std::move(cond));
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    s.probs[k] /= total;
    ComplexMatrix cond = s.probs[k] > 1e-14 ? ComplexMatrix(blocks[k] / blocks[k].trace().real())
                                            : ComplexMatrix(ComplexMatrix::Identity(dother, dother) / double(dother));
    s.conditional_states.emplace_back(Dims{dother}, 0.5 * (cond + cond.adjoint()));
  }
  return s;
}

}  // namespace detail

// The zero-discord form of a fixture: its own spec, or one recovered by the
// classifier (CC preferred, then CQ on side A, then side B).
inline Spec classical_spec(const Fixture& f) {
  if (const auto* s = std::get_if<CQSpec>(&f.source)) return *s;
  if (const auto* s = std::get_if<CCSpec>(&f.source)) return *s;
  const DensityOperator& rho = std::get<DensityOperator>(f.source);
  require_bipartite(rho, "classical_spec");
  const CCVerdict cc = classify_cc(rho);
  if (cc.accepted) {
    CCSpec s;
    s.basis_a = cc.side_a.basis;
    s.basis_b = cc.side_b.basis;
    s.probs = cc.probs.cwiseMax(0.0);
    s.probs /= s.probs.sum();
    return s;
  }
  for (Side side : {Side::A, Side::B}) {
    const CQVerdict v = side == Side::A ? cc.side_a : cc.side_b;
    if (v.accepted) return detail::cq_from_witness(rho, side, v.basis);
  }
  std::ostringstream os;
  os << "source not classical: fixture " << f.id << " is not CQ or CC (largest coefficient commutator "
     << cc.max_commutator << ")";
  throw ValidationError(os.str());
}

// ---- QCR demo ----

struct QcrDemoReport {
  std::string fixture;
  std::string map;
  std::string spec_type;                 // "cq" or "cc"
  std::optional<Side> classical_side;    // cq only
  CorrelationReport source;
  CorrelationReport target;
  ResidualReport one_way;
  ResidualReport two_way;
  double source_discord = 0.0;  // discord that must vanish for this spec type
  double target_discord = 0.0;  // the same quantity after restructuring
  double expansion_error = 0.0;
  double off_diagonal_max = 0.0;
  bool qcr_exhibited = false;
};

// For a CC spec the relevant discord is two-way; for a CQ spec it is the
// one-way discord measured on the classical side.
inline double relevant_discord(const CorrelationReport& r, const Spec& spec) {
  if (const auto* cq = std::get_if<CQSpec>(&spec)) return cq->classical_side == Side::A ? r.discord_a : r.discord_b;
  return r.two_way_discord;
}

inline QcrDemoReport scenario_qcr_demo(const std::string& label, const Spec& spec, const std::string& map_id,
                                       const OptimizerConfig& config) {
  QcrDemoReport out;
  out.fixture = label;
  out.map = map_id;
  const DensityOperator rho = build_state(spec);
  out.source = correlation_report(rho, config);
  out.source_discord = relevant_discord(out.source, spec);
  if (out.source_discord > kSourceClassicalThreshold) {
    std::ostringstream os;
    os << "source not classical: " << label << " has discord " << out.source_discord << " > "
       << kSourceClassicalThreshold;
    throw ValidationError(os.str());
  }
  const StructureMap map = resolve_map(map_id, rho.dims());
  const DensityOperator moved = restructure(rho, map);
  out.target = correlation_report(moved, config);
  out.target_discord = relevant_discord(out.target, spec);

  Expansion e;
  if (const auto* cq = std::get_if<CQSpec>(&spec)) {
    out.spec_type = "cq";
    out.classical_side = cq->classical_side;
    out.one_way = one_way_residual(*cq, map);
    out.two_way = two_way_residual(*cq, map);
    e = expand_restructured(*cq, map);
  } else {
    const auto& cc = std::get<CCSpec>(spec);
    out.spec_type = "cc";
    out.one_way = one_way_residual(cc, map);
    out.two_way = two_way_residual(cc, map);
    e = expand_restructured(cc, map);
  }
  out.expansion_error = max_abs(e.sum() - moved.matrix());
  out.off_diagonal_max = max_abs(e.off_diagonal);
  if (out.expansion_error > kExpansionTolerance) {
    std::ostringstream os;
    os << "qcr-demo: restructured state differs from its two-term expansion by " << out.expansion_error;
    throw ComputationError(os.str());
  }
  out.qcr_exhibited = out.source_discord <= kSourceClassicalThreshold && out.target_discord > kTargetQuantumThreshold;
  return out;
}

inline QcrDemoReport scenario_qcr_demo(const std::string& fixture_id, const std::string& map_id,
                                       const OptimizerConfig& config) {
  return scenario_qcr_demo(fixture_id, classical_spec(find_fixture(fixture_id)), map_id, config);
}

// ---- teleportation re-partition ----

struct CutReport {
  std::string cut;
  CorrelationReport correlations;
};

struct TeleportReport {
  Complex phi0, phi1;
  CutReport first;   // 0 | 1,2
  CutReport second;  // 0,1 | 2
  double factor3_marginal_error = 0.0;        // max |rho_3 - I/2|
  std::array<double, 4> bell_coefficient_norms{};  // |(<B_i| (x) I) psi| for B = Phi+, Psi+, Phi-, Psi-
  double spectrum_gap = 0.0;                  // between the two groupings
};

inline TeleportReport scenario_teleport_structures(Complex phi0, Complex phi1, const OptimizerConfig& config) {
  const double norm = std::sqrt(std::norm(phi0) + std::norm(phi1));
  if (std::abs(norm - 1.0) > tol::pure_norm)
    throw ValidationError("teleport-demo: phi is not normalized (norm " + std::to_string(norm) + ")");
  ComplexVector phi(2), pair(4);
  phi << phi0, phi1;
  const double s = 1.0 / std::sqrt(2.0);
  pair << s, 0, 0, s;
  const ComplexVector psi = kron(phi, pair);
  const DensityOperator rho = DensityOperator::from_pure(PureState({2, 2, 2}, psi));

  TeleportReport out;
  out.phi0 = phi0;
  out.phi1 = phi1;
  const Bipartition first({0}, {1, 2}, {2, 2, 2}), second({0, 1}, {2}, {2, 2, 2});
  const DensityOperator g1 = regroup(rho, first), g2 = regroup(rho, second);
  out.first = {first.to_string(), correlation_report(g1, config)};
  out.second = {second.to_string(), correlation_report(g2, config)};
  out.factor3_marginal_error =
      max_abs(partial_trace(rho, {2}).matrix() - DensityOperator::maximally_mixed({2}).matrix());
  out.spectrum_gap = (g1.spectrum() - g2.spectrum()).cwiseAbs().maxCoeff();
  const ComplexMatrix bell = bell_map().unitary();
  for (int i = 0; i < 4; ++i) {
    ComplexVector rest = ComplexVector::Zero(2);
    for (int f01 = 0; f01 < 4; ++f01)
      for (int f2 = 0; f2 < 2; ++f2) rest(f2) += std::conj(bell(f01, i)) * psi(f01 * 2 + f2);
    out.bell_coefficient_norms[static_cast<std::size_t>(i)] = rest.norm();
  }
  return out;
}

// ---- separable but discordant ----

struct SeparableReport {
  CorrelationReport correlations;
  double covariance_zz = 0.0;
};

inline SeparableReport scenario_separable_discordant(const OptimizerConfig& config) {
  const DensityOperator rho = find_fixture("separable-discordant").state();
  return {correlation_report(rho, config), covariance_function(rho, pauli::z(), pauli::z())};
}

// ---- measure-zero sampling ----

struct SamplingConfig {
  int n = 1000;
  Dims dims{2, 2};
  double epsilon = 1e-6;
  std::uint64_t seed = 1;
  int relativity_variants = -1;    // negative: min(n, 100)
  std::string relativity_map;      // empty: "bell" on 2x2, otherwise "random:<seed>"
  std::vector<DensityOperator> injected;  // take the first sample slots
};

struct SamplingReport {
  int count = 0;
  Dims dims;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string measure;
  int injected = 0;
  std::vector<double> discord;  // two-way, per sample
  int below = 0;
  double fraction_below = 0.0;
  // Structure-relativity variant: random CC states, then a fixed map.
  std::string relativity_map;
  int relativity_variants = 0;
  int relativity_source_zero = 0;   // CC source discord <= epsilon
  int relativity_restored = 0;      // ... and target discord > epsilon
  std::vector<double> relativity_target_discord;
};

inline constexpr const char* kSamplingMeasure =
    "Haar unitary x flat-simplex spectrum (substitute for dynamics-reachable states)";

inline SamplingReport scenario_measure_sampling(const SamplingConfig& sc, const OptimizerConfig& config) {
  if (sc.n < 1) throw ValidationError("sample: n must be >= 1");
  if (sc.dims.size() != 2) throw ValidationError("sample: dims must have two entries");
  PureState::check_dims(sc.dims);
  if (!(sc.epsilon >= 0.0)) throw ValidationError("sample: epsilon must be >= 0");
  if (static_cast<int>(sc.injected.size()) > sc.n) throw ValidationError("sample: more injected states than samples");
  SamplingReport out;
  out.count = sc.n;
  out.dims = sc.dims;
  out.epsilon = sc.epsilon;
  out.seed = sc.seed;
  out.measure = kSamplingMeasure;
  out.injected = static_cast<int>(sc.injected.size());
  for (int i = 0; i < sc.n; ++i) {
    const DensityOperator rho = i < out.injected ? sc.injected[static_cast<std::size_t>(i)]
                                                 : random_density_operator(sc.dims, derive_seed(sc.seed, static_cast<std::uint64_t>(i)));
    if (rho.dims() != sc.dims) throw ValidationError("sample: injected state has dims " + dims_string(rho.dims()));
    const double d = two_way_discord(rho, config);
    out.discord.push_back(d);
    if (d <= sc.epsilon) ++out.below;
  }
  out.fraction_below = static_cast<double>(out.below) / sc.n;

  out.relativity_variants = sc.relativity_variants < 0 ? std::min(sc.n, 100) : sc.relativity_variants;
  out.relativity_map = !sc.relativity_map.empty() ? sc.relativity_map
                       : sc.dims == Dims{2, 2}   ? std::string("bell")
                                                 : "random:" + std::to_string(sc.seed);
  const StructureMap map = resolve_map(out.relativity_map, sc.dims);
  for (int i = 0; i < out.relativity_variants; ++i) {
    const CCSpec spec = random_cc_spec(sc.dims[0], sc.dims[1], derive_seed(~sc.seed, static_cast<std::uint64_t>(i)));
    const DensityOperator rho = build_cc_state(spec);
    const double before = two_way_discord(rho, config);
    const double after = two_way_discord(restructure(rho, map), config);
    out.relativity_target_discord.push_back(after);
    if (before <= sc.epsilon) {
      ++out.relativity_source_zero;
      if (after > sc.epsilon) ++out.relativity_restored;
    }
  }
  return out;
}

// ---- truncated Fock-space mode mixing ----

struct CvReport {
  int cutoff = 0;
  double theta = 0.0;
  int n1 = 0, n2 = 0;
  CorrelationReport correlations;
  double leakage = 0.0;
};

inline constexpr int kLeakageMargin = 1;

inline CvReport scenario_cv_demo(int cutoff, double theta, int n1, int n2, const OptimizerConfig& config) {
  if (n1 < 0 || n2 < 0) throw ValidationError("cv-demo: photon numbers must be >= 0");
  if (cutoff < 2 || cutoff > kMaxMeasuredDim)
    throw ValidationError("cv-demo: cutoff must lie in [2, " + std::to_string(kMaxMeasuredDim) + "]");
  if (n1 + n2 >= cutoff)
    throw ValidationError("truncation unsafe: total photon number " + std::to_string(n1 + n2) +
                          " must be below the cutoff " + std::to_string(cutoff));
  const DensityOperator in = DensityOperator::from_pure(fock_state(cutoff, n1, n2));
  const DensityOperator out_state = restructure(in, beamsplitter_map(cutoff, theta));
  CvReport out;
  out.cutoff = cutoff;
  out.theta = theta;
  out.n1 = n1;
  out.n2 = n2;
  out.correlations = correlation_report(out_state, config);
  out.leakage = leakage_norm(out_state, cutoff, kLeakageMargin);
  return out;
}

// ---- serialization ----

namespace detail {
inline io::json complex_json(Complex z) { return {z.real(), z.imag()}; }
}  // namespace detail

inline io::json to_json(const QcrDemoReport& r) {
  io::json j{{"scenario", "qcr-demo"},
             {"fixture", r.fixture},
             {"map", r.map},
             {"spec_type", r.spec_type}};
  if (r.classical_side) j["classical_side"] = side_name(*r.classical_side);
  j["source"] = io::to_json(r.source);
  j["target"] = io::to_json(r.target);
  j["one_way_residual"] = io::to_json(r.one_way);
  j["two_way_residual"] = io::to_json(r.two_way);
  j["source_discord"] = r.source_discord;
  j["target_discord"] = r.target_discord;
  j["expansion_error"] = r.expansion_error;
  j["off_diagonal_max"] = r.off_diagonal_max;
  j["QCR exhibited"] = r.qcr_exhibited;
  return j;
}

inline io::json to_json(const TeleportReport& r) {
  auto cut = [](const CutReport& c) { return io::json{{"cut", c.cut}, {"correlations", io::to_json(c.correlations)}}; };
  return {{"scenario", "teleport-demo"},
          {"phi", {detail::complex_json(r.phi0), detail::complex_json(r.phi1)}},
          {"first_cut", cut(r.first)},
          {"second_cut", cut(r.second)},
          {"factor3_marginal_error", r.factor3_marginal_error},
          {"bell_coefficient_norms", r.bell_coefficient_norms},
          {"spectrum_gap", r.spectrum_gap}};
}

inline io::json to_json(const SeparableReport& r) {
  return {{"scenario", "separable-demo"},
          {"fixture", "separable-discordant"},
          {"correlations", io::to_json(r.correlations)},
          {"covariance_zz", r.covariance_zz}};
}

inline io::json to_json(const SamplingReport& r) {
  return {{"scenario", "sample"},
          {"count", r.count},
          {"dims", r.dims},
          {"epsilon", r.epsilon},
          {"seed", r.seed},
          {"measure", r.measure},
          {"injected", r.injected},
          {"below", r.below},
          {"fraction_below", r.fraction_below},
          {"two_way_discord", r.discord},
          {"relativity",
           {{"map", r.relativity_map},
            {"variants", r.relativity_variants},
            {"source_zero", r.relativity_source_zero},
            {"restored", r.relativity_restored},
            {"target_discord", r.relativity_target_discord}}}};
}

inline io::json to_json(const CvReport& r) {
  return {{"scenario", "cv-demo"}, {"cutoff", r.cutoff},   {"theta", r.theta},
          {"input", {r.n1, r.n2}}, {"leakage", r.leakage}, {"correlations", io::to_json(r.correlations)}};
}

// ---- CSV ----

inline constexpr const char* kCsvHeader = "scenario,fixture,map,I,J_a,J_b,D_a,D_b,D,negativity,residual6,residual9,seed";

inline std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

inline std::string csv_row(const std::string& scenario, const std::string& fixture, const std::string& map,
                           const CorrelationReport& r, std::optional<double> one_way, std::optional<double> two_way,
                           std::uint64_t seed) {
  std::ostringstream os;
  os << scenario << ',' << fixture << ',' << map << ',' << csv_number(r.mutual_info) << ','
     << csv_number(r.classical_corr_a) << ',' << csv_number(r.classical_corr_b) << ',' << csv_number(r.discord_a) << ','
     << csv_number(r.discord_b) << ',' << csv_number(r.two_way_discord) << ',' << csv_number(r.negativity) << ','
     << (one_way ? csv_number(*one_way) : "") << ',' << (two_way ? csv_number(*two_way) : "") << ',' << seed;
  return os.str();
}

inline std::vector<std::string> csv_rows(const QcrDemoReport& r, std::uint64_t seed) {
  return {csv_row("qcr-demo", r.fixture, "identity", r.source, std::nullopt, std::nullopt, seed),
          csv_row("qcr-demo", r.fixture, r.map, r.target, r.one_way.max_residual, r.two_way.max_residual, seed)};
}

// ---- full suite (used for the reproducibility check) ----

inline io::json run_scenario_suite(const OptimizerConfig& config) {
  io::json j = io::json::array();
  for (const char* f : {"cc-0.4-0.1-0.2-0.3", "cc-uniform", "cq-zero-plus"})
    j.push_back(to_json(scenario_qcr_demo(f, "bell", config)));
  const double s = 1.0 / std::sqrt(2.0);
  j.push_back(to_json(scenario_teleport_structures(1.0, 0.0, config)));
  j.push_back(to_json(scenario_teleport_structures(s, s, config)));
  j.push_back(to_json(scenario_separable_discordant(config)));
  SamplingConfig sc;
  sc.n = 20;
  sc.seed = config.seed;
  sc.relativity_variants = 5;
  j.push_back(to_json(scenario_measure_sampling(sc, config)));
  j.push_back(to_json(scenario_cv_demo(4, std::numbers::pi / 4, 1, 0, config)));
  return j;
}

}  // namespace qcr
