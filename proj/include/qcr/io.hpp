// io.hpp
// JSON for states, structure maps, CQ/CC specs, optimizer config and reports.
//
// Complex arrays are lists of [re, im] pairs in row-major order:
//   state: {"dims": [2, 2], "matrix": [[0.5, 0], [0, 0], ...]}
//   map:   {"target_dims": [2, 2], "unitary": [[re, im], ...],
//           "source": {"dims": [2, 2, 2], "side_a": [0], "side_b": [1, 2]}}   (source optional)
// Entropic report fields are in nats with a "bits" block mirroring them.

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qcr/classicality.hpp"
#include "qcr/core.hpp"
#include "qcr/correlations.hpp"
#include "qcr/measurement.hpp"
#include "qcr/structures.hpp"

namespace qcr::io {

using json = nlohmann::ordered_json;

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(what + ": invalid JSON (" + e.what() + ")");
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(what + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + ": expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError(what + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(integer(x, what));
  return out;
}

inline std::vector<double> number_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

inline Complex complex_entry(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw ValidationError(what + ": complex entries are [re, im] pairs");
  return {number(j[0], what), number(j[1], what)};
}

}  // namespace detail

inline json complex_list(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

inline json complex_rows(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

inline ComplexVector complex_vector_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = detail::complex_entry(j[i], what);
  return v;
}

inline ComplexMatrix square_from(const json& j, int d, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != d * d)
    throw ValidationError(what + ": entries length " + std::to_string(j.is_array() ? j.size() : 0) +
                          " does not match " + std::to_string(d) + "x" + std::to_string(d));
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = detail::complex_entry(j[static_cast<std::size_t>(r * d + c)], what);
  return m;
}

// ---- states ----

inline json to_json(const DensityOperator& rho) {
  return {{"dims", rho.dims()}, {"matrix", complex_rows(rho.matrix())}};
}

inline DensityOperator state_from_json(const json& j) {
  const Dims dims = detail::int_list(detail::field(j, "dims", "state"), "state dims");
  if (dims.empty()) throw ValidationError("state: dims must be nonempty");
  PureState::check_dims(dims);
  return DensityOperator(dims, square_from(detail::field(j, "matrix", "state"), total_dim(dims), "state matrix"));
}

inline DensityOperator load_state(const std::string& path) { return state_from_json(read_file(path)); }

// ---- structure maps ----

inline json to_json(const Bipartition& b) {
  return {{"dims", b.dims()}, {"side_a", b.side_a()}, {"side_b", b.side_b()}};
}

inline json to_json(const StructureMap& m) {
  return {{"target_dims", m.target_dims()}, {"unitary", complex_rows(m.unitary())}, {"source", to_json(m.source())}};
}

inline StructureMap map_from_json(const json& j) {
  const auto td = detail::int_list(detail::field(j, "target_dims", "map"), "map target_dims");
  if (td.size() != 2) throw ValidationError("map: target_dims must have two entries");
  const int d = td[0] * td[1];
  std::optional<Bipartition> source;
  if (j.contains("source")) {
    const json& s = j.at("source");
    source.emplace(detail::int_list(detail::field(s, "side_a", "map source"), "map source side_a"),
                   detail::int_list(detail::field(s, "side_b", "map source"), "map source side_b"),
                   detail::int_list(detail::field(s, "dims", "map source"), "map source dims"));
  } else {
    source.emplace(Bipartition::trivial({td[0], td[1]}));
  }
  return StructureMap(*source, {td[0], td[1]}, square_from(detail::field(j, "unitary", "map"), d, "map unitary"));
}

// ---- specs ----

using Spec = std::variant<CQSpec, CCSpec>;

inline json kets_json(const ComplexMatrix& columns) {
  json out = json::array();
  for (Eigen::Index c = 0; c < columns.cols(); ++c) out.push_back(complex_list(columns.col(c)));
  return out;
}

inline ComplexMatrix kets_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ValidationError(what + ": expected a nonempty list of kets");
  ComplexMatrix m;
  for (std::size_t c = 0; c < j.size(); ++c) {
    const ComplexVector v = complex_vector_from(j[c], what);
    if (c == 0) m.resize(v.size(), static_cast<Eigen::Index>(j.size()));
    if (v.size() != m.rows()) throw ValidationError(what + ": kets of different lengths");
    m.col(static_cast<Eigen::Index>(c)) = v;
  }
  return m;
}

inline json to_json(const CQSpec& s) {
  json j{{"type", "cq"}, {"classical_side", side_name(s.classical_side)}, {"probs", s.probs},
         {"classical_basis", kets_json(s.classical_basis)}};
  if (s.ensembles.empty()) {
    json states = json::array();
    for (const auto& c : s.conditional_states) states.push_back(to_json(c));
    j["conditional_states"] = states;
  } else {
    json ens = json::array();
    for (const auto& e : s.ensembles) {
      json kets = json::array();
      for (const auto& k : e.kets) kets.push_back(complex_list(k));
      ens.push_back({{"weights", e.weights}, {"kets", kets}});
    }
    j["ensembles"] = ens;
  }
  return j;
}

inline json to_json(const CCSpec& s) {
  json probs = json::array();
  for (Eigen::Index k = 0; k < s.probs.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index l = 0; l < s.probs.cols(); ++l) row.push_back(s.probs(k, l));
    probs.push_back(row);
  }
  return {{"type", "cc"}, {"probs", probs}, {"basis_a", kets_json(s.basis_a)}, {"basis_b", kets_json(s.basis_b)}};
}

inline Side side_from(const json& j, const std::string& what) {
  if (j == "a" || j == "A") return Side::A;
  if (j == "b" || j == "B") return Side::B;
  throw ValidationError(what + ": side must be \"a\" or \"b\"");
}

inline Spec spec_from_json(const json& j) {
  const json& type = detail::field(j, "type", "spec");
  if (type == "cq") {
    CQSpec s;
    s.classical_side = j.contains("classical_side") ? side_from(j.at("classical_side"), "cq spec") : Side::A;
    s.probs = detail::number_list(detail::field(j, "probs", "cq spec"), "cq spec probs");
    if (j.contains("classical_basis")) {
      s.classical_basis = kets_from(j.at("classical_basis"), "cq spec classical_basis");
    } else {
      s.classical_basis = ComplexMatrix::Identity(static_cast<Eigen::Index>(s.probs.size()),
                                                  static_cast<Eigen::Index>(s.probs.size()));
    }
    if (j.contains("ensembles")) {
      for (const auto& e : j.at("ensembles")) {
        Ensemble ens;
        ens.weights = detail::number_list(detail::field(e, "weights", "cq ensemble"), "cq ensemble weights");
        for (const auto& k : detail::field(e, "kets", "cq ensemble")) ens.kets.push_back(complex_vector_from(k, "cq ensemble ket"));
        s.ensembles.push_back(std::move(ens));
      }
    } else {
      for (const auto& c : detail::field(j, "conditional_states", "cq spec")) s.conditional_states.push_back(state_from_json(c));
    }
    s.validate();
    return s;
  }
  if (type == "cc") {
    const json& rows = detail::field(j, "probs", "cc spec");
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
      throw ValidationError("cc spec: probs must be a nonempty matrix (list of rows)");
    RealMatrix p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto row = detail::number_list(rows[k], "cc spec probs");
      if (static_cast<Eigen::Index>(row.size()) != p.cols()) throw ValidationError("cc spec: ragged probs matrix");
      for (std::size_t l = 0; l < row.size(); ++l) p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = row[l];
    }
    CCSpec s = CCSpec::computational(p);
    if (j.contains("basis_a")) s.basis_a = kets_from(j.at("basis_a"), "cc spec basis_a");
    if (j.contains("basis_b")) s.basis_b = kets_from(j.at("basis_b"), "cc spec basis_b");
    s.validate();
    return s;
  }
  throw ValidationError("spec: type must be \"cq\" or \"cc\"");
}

// ---- optimizer config ----

// Accepts {"optimizer": {"restarts": 8}} and {"optimizer.restarts": 8}.
inline OptimizerConfig apply_config(const json& j, OptimizerConfig cfg) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  auto lookup = [&](const char* key) -> const json* {
    const std::string dotted = std::string("optimizer.") + key;
    if (j.contains(dotted)) return &j.at(dotted);
    if (j.contains("optimizer") && j.at("optimizer").is_object() && j.at("optimizer").contains(key))
      return &j.at("optimizer").at(key);
    return nullptr;
  };
  if (const json* v = lookup("restarts")) cfg.restarts = detail::integer(*v, "optimizer.restarts");
  if (const json* v = lookup("max_iter")) cfg.max_iterations = detail::integer(*v, "optimizer.max_iter");
  if (const json* v = lookup("tol")) cfg.tolerance = detail::number(*v, "optimizer.tol");
  if (const json* v = lookup("seed")) {
    if (!v->is_number_unsigned() && !v->is_number_integer()) throw ValidationError("optimizer.seed: expected an integer");
    cfg.seed = v->get<std::uint64_t>();
  }
  if (const json* v = lookup("informed_starts")) {
    if (!v->is_boolean()) throw ValidationError("optimizer.informed_starts: expected true or false");
    cfg.informed_starts = v->get<bool>();
  }
  cfg.validate();
  return cfg;
}

inline json to_json(const OptimizerConfig& c) {
  return {{"restarts", c.restarts}, {"max_iter", c.max_iterations}, {"tol", c.tolerance}, {"seed", c.seed},
          {"informed_starts", c.informed_starts}};
}

// ---- reports ----

inline json to_json(const OptimizerDiagnostics& d) {
  return {{"restarts_used", d.restarts_used}, {"best_restart", d.best_restart}, {"spread", d.spread},
          {"converged_restarts", d.converged_restarts}, {"evaluations", d.evaluations}};
}

inline json to_json(const CorrelationReport& r) {
  json j{{"mutual_information", r.mutual_info},
         {"classical_correlations_a", r.classical_corr_a},
         {"classical_correlations_b", r.classical_corr_b},
         {"discord_a", r.discord_a},
         {"discord_b", r.discord_b},
         {"two_way_discord", r.two_way_discord},
         {"negativity", r.negativity},
         {"raw_discord_a", r.raw_discord_a},
         {"raw_discord_b", r.raw_discord_b}};
  json bits = json::object();
  for (const char* key : {"mutual_information", "classical_correlations_a", "classical_correlations_b", "discord_a",
                          "discord_b", "two_way_discord"})
    bits[key] = nats_to_bits(j[key].get<double>());
  j["bits"] = bits;
  j["optimizer_a"] = to_json(r.diag_a);
  j["optimizer_b"] = to_json(r.diag_b);
  return j;
}

inline json to_json(const ResidualReport& r) {
  json j{{"max_residual", r.max_residual},
         {"argmax", {{"alpha", r.argmax[0]}, {"alpha_prime", r.argmax[1]}, {"beta", r.argmax[2]}, {"beta_prime", r.argmax[3]}}}};
  if (!r.values.empty()) {
    json entries = json::array();
    for (std::size_t i = 0; i < r.values.size(); ++i) entries.push_back({r.indices[i], r.values[i]});
    j["entries"] = entries;
  }
  return j;
}

inline json to_json(const CQVerdict& v) {
  json j{{"accepted", v.accepted}, {"max_commutator", v.max_commutator}};
  if (v.accepted) j["basis"] = kets_json(v.basis);
  return j;
}

inline json to_json(const CCVerdict& v) {
  json j{{"accepted", v.accepted}, {"max_commutator", v.max_commutator}, {"side_a", to_json(v.side_a)},
         {"side_b", to_json(v.side_b)}};
  if (v.accepted) {
    json rows = json::array();
    for (Eigen::Index k = 0; k < v.probs.rows(); ++k) {
      json row = json::array();
      for (Eigen::Index l = 0; l < v.probs.cols(); ++l) row.push_back(v.probs(k, l));
      rows.push_back(row);
    }
    j["probs"] = rows;
  }
  return j;
}

}  // namespace qcr::io
