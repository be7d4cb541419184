// qcr_cli: command-line front end for the scenario pipelines.
//
// Exit codes: 0 success, 1 invalid input (including usage errors),
// 2 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "qcr/qcr.hpp"

namespace {

using qcr::io::json;

struct Global {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string format = "json";
  std::string output;
};

// Precedence: --seed, then optimizer.seed from --config, then QCR_SEED, then 1.
qcr::OptimizerConfig optimizer_config(const Global& g) {
  qcr::OptimizerConfig cfg;
  if (const char* env = std::getenv("QCR_SEED")) {
    const std::string s(env);
    if (!s.empty()) cfg.seed = static_cast<std::uint64_t>(qcr::detail::parse_int(s, "QCR_SEED"));
  }
  if (!g.config_path.empty()) cfg = qcr::io::apply_config(qcr::io::read_file(g.config_path), cfg);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

void emit(const Global& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
  } else {
    qcr::io::write_file(g.output, text);
  }
}

void emit_json(const Global& g, const json& j) { emit(g, j.dump(2) + "\n"); }

void emit_csv(const Global& g, const std::vector<std::string>& rows, const std::string& header = qcr::kCsvHeader) {
  std::string text = header + "\n";
  for (const auto& r : rows) text += r + "\n";
  emit(g, text);
}

struct Source {
  std::string state_path;
  std::string fixture;

  qcr::DensityOperator load() const {
    if (!state_path.empty()) return qcr::io::load_state(state_path);
    if (!fixture.empty()) return qcr::find_fixture(fixture).state();
    throw qcr::ValidationError("give --state <file> or --fixture <id>");
  }
  std::string label() const { return state_path.empty() ? fixture : state_path; }
};

void add_source(CLI::App* cmd, Source& src) {
  auto* st = cmd->add_option("--state", src.state_path, "density operator JSON file");
  auto* fx = cmd->add_option("--fixture", src.fixture, "built-in fixture id");
  st->excludes(fx);
}

std::pair<qcr::Complex, qcr::Complex> parse_phi(const std::string& s) {
  const auto parts = qcr::detail::split(s, ',');
  if (parts.size() != 4) throw qcr::ValidationError("--phi expects re0,im0,re1,im1");
  double v[4];
  for (int i = 0; i < 4; ++i) v[i] = qcr::detail::parse_double(parts[static_cast<std::size_t>(i)], "--phi");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

std::string fixture_list() {
  std::string out = "fixtures:";
  for (const auto& f : qcr::fixtures()) out += "\n  " + f.id + "  " + f.description;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum correlations under changes of tensor-product structure"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(fixture_list() +
             "\nmaps: identity, swap, bell, beamsplitter:<cutoff>:<theta>, regroup:<i,j>|<k>, random:<seed>, or a map .json");

  Global g;
  app.add_option("--seed", g.seed, "optimizer and sampling seed (default: $QCR_SEED, else 1)");
  app.add_option("--config", g.config_path, "JSON config (optimizer.restarts, optimizer.max_iter, optimizer.tol, optimizer.seed)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", g.output, "write the report here instead of stdout");

  // discord
  auto* discord = app.add_subcommand("discord", "correlation report for a state (optionally after a map)");
  Source discord_src;
  std::string discord_map;
  add_source(discord, discord_src);
  discord->add_option("--map", discord_map, "restructure before analysing");

  // classify
  auto* classify = app.add_subcommand("classify", "CQ / CC classification");
  Source classify_src;
  double classify_tol = qcr::kClassifyTolerance;
  add_source(classify, classify_src);
  classify->add_option("--tol", classify_tol, "commutator tolerance");

  // residual
  auto* residual = app.add_subcommand("residual", "coherence residuals of a CQ/CC spec under a map");
  std::string residual_spec, residual_fixture, residual_map = "bell";
  bool residual_dump = false;
  residual->add_option("--spec", residual_spec, "CQ/CC spec JSON file")->excludes(residual->add_option("--fixture", residual_fixture, "built-in fixture id"));
  residual->add_option("--map", residual_map, "structure map id");
  residual->add_flag("--dump", residual_dump, "include every tested index tuple");

  // restructure
  auto* restructure_cmd = app.add_subcommand("restructure", "apply a structure map and write the new state");
  Source restructure_src;
  std::string restructure_map;
  add_source(restructure_cmd, restructure_src);
  restructure_cmd->add_option("--map", restructure_map, "structure map id")->required();

  // qcr-demo
  auto* qcr_demo = app.add_subcommand("qcr-demo", "zero discord in one structure, nonzero in another");
  std::string demo_fixture, demo_spec, demo_map = "bell";
  qcr_demo->add_option("--spec", demo_spec, "CQ/CC spec JSON file")->excludes(qcr_demo->add_option("--fixture", demo_fixture, "built-in fixture id"));
  qcr_demo->add_option("--map", demo_map, "structure map id");

  // teleport-demo
  auto* teleport = app.add_subcommand("teleport-demo", "|phi> (x) |Phi+> across 0|1,2 and 0,1|2");
  std::string phi = "1,0,0,0";
  teleport->add_option("--phi", phi, "re0,im0,re1,im1 of the input qubit");

  // separable-demo
  auto* separable = app.add_subcommand("separable-demo", "separable state with nonzero discord");

  // sample
  auto* sample = app.add_subcommand("sample", "fraction of random states with discord below epsilon");
  qcr::SamplingConfig sampling;
  std::string sample_dims = "2,2";
  sample->add_option("--n", sampling.n, "number of samples");
  sample->add_option("--dims", sample_dims, "bipartite dims, e.g. 2,2");
  sample->add_option("--epsilon", sampling.epsilon, "discord threshold (nats)");
  sample->add_option("--variants", sampling.relativity_variants, "random CC states for the structure variant (default min(n,100))");
  sample->add_option("--relativity-map", sampling.relativity_map, "map for the structure variant");

  // cv-demo
  auto* cv = app.add_subcommand("cv-demo", "Fock input through a truncated beamsplitter");
  int cutoff = 4;
  double theta = std::numbers::pi / 4;
  std::string input = "1,0";
  cv->add_option("--cutoff", cutoff, "Fock cutoff per mode");
  cv->add_option("--theta", theta, "mixing angle");
  cv->add_option("--input", input, "photon numbers n1,n2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\nerror: " << e.what() << "\n";
    return 1;
  }

  try {
    const qcr::OptimizerConfig cfg = optimizer_config(g);
    const bool csv = g.format == "csv";

    if (*discord) {
      qcr::DensityOperator rho = discord_src.load();
      const std::string map_id = discord_map.empty() ? "identity" : discord_map;
      if (!discord_map.empty()) rho = qcr::restructure(rho, qcr::resolve_map(discord_map, rho.dims()));
      const auto r = qcr::correlation_report(rho, cfg);
      if (csv) return emit_csv(g, {qcr::csv_row("discord", discord_src.label(), map_id, r, std::nullopt, std::nullopt, cfg.seed)}), 0;
      emit_json(g, {{"command", "discord"}, {"source", discord_src.label()}, {"map", map_id}, {"dims", rho.dims()},
                    {"optimizer", qcr::io::to_json(cfg)}, {"report", qcr::io::to_json(r)}});
    } else if (*classify) {
      const auto rho = classify_src.load();
      const auto cc = qcr::classify_cc(rho, classify_tol);
      if (csv) {
        auto row = [](const char* name, bool ok, double c) {
          return std::string(name) + "," + (ok ? "true" : "false") + "," + qcr::csv_number(c);
        };
        return emit_csv(g, {row("cq_a", cc.side_a.accepted, cc.side_a.max_commutator),
                            row("cq_b", cc.side_b.accepted, cc.side_b.max_commutator),
                            row("cc", cc.accepted, cc.max_commutator)},
                        "check,accepted,max_commutator"), 0;
      }
      emit_json(g, {{"command", "classify"}, {"source", classify_src.label()}, {"tolerance", classify_tol},
                    {"cc", qcr::io::to_json(cc)}});
    } else if (*residual) {
      qcr::Spec spec;
      std::string label;
      if (!residual_spec.empty()) {
        spec = qcr::io::spec_from_json(qcr::io::read_file(residual_spec));
        label = residual_spec;
      } else if (!residual_fixture.empty()) {
        spec = qcr::classical_spec(qcr::find_fixture(residual_fixture));
        label = residual_fixture;
      } else {
        throw qcr::ValidationError("give --spec <file> or --fixture <id>");
      }
      const auto map = qcr::resolve_map(residual_map, qcr::spec_dims(spec));
      const auto e = std::visit([&](const auto& s) { return qcr::weighted_expansion(s, map); }, spec);
      const auto one_family = std::holds_alternative<qcr::CQSpec>(spec) ? qcr::one_way_family(std::get<qcr::CQSpec>(spec))
                                                                         : qcr::CoherenceFamily::A;
      const auto one = qcr::coherence_residual(e.weights, e.tensor, one_family, residual_dump);
      const auto two = qcr::coherence_residual(e.weights, e.tensor, qcr::CoherenceFamily::Both, residual_dump);
      if (csv)
        return emit_csv(g, {label + "," + residual_map + "," + qcr::csv_number(one.max_residual) + "," +
                            qcr::csv_number(two.max_residual)},
                        "fixture,map,residual6,residual9"), 0;
      emit_json(g, {{"command", "residual"}, {"source", label}, {"map", residual_map},
                    {"one_way_residual", qcr::io::to_json(one)}, {"two_way_residual", qcr::io::to_json(two)}});
    } else if (*restructure_cmd) {
      if (csv) throw qcr::ValidationError("restructure writes JSON only");
      const auto rho = restructure_src.load();
      emit_json(g, qcr::io::to_json(qcr::restructure(rho, qcr::resolve_map(restructure_map, rho.dims()))));
    } else if (*qcr_demo) {
      qcr::QcrDemoReport r;
      if (!demo_spec.empty()) {
        r = qcr::scenario_qcr_demo(demo_spec, qcr::io::spec_from_json(qcr::io::read_file(demo_spec)), demo_map, cfg);
      } else {
        r = qcr::scenario_qcr_demo(demo_fixture.empty() ? std::string("cc-0.4-0.1-0.2-0.3") : demo_fixture, demo_map, cfg);
      }
      if (csv) return emit_csv(g, qcr::csv_rows(r, cfg.seed)), 0;
      json j = qcr::to_json(r);
      j["seed"] = cfg.seed;
      emit_json(g, j);
    } else if (*teleport) {
      const auto [a, b] = parse_phi(phi);
      const auto r = qcr::scenario_teleport_structures(a, b, cfg);
      if (csv)
        return emit_csv(g, {qcr::csv_row("teleport-demo", "phi", "regroup:" + r.first.cut, r.first.correlations, std::nullopt, std::nullopt, cfg.seed),
                            qcr::csv_row("teleport-demo", "phi", "regroup:" + r.second.cut, r.second.correlations, std::nullopt, std::nullopt, cfg.seed)}),
               0;
      json j = qcr::to_json(r);
      j["seed"] = cfg.seed;
      emit_json(g, j);
    } else if (*separable) {
      const auto r = qcr::scenario_separable_discordant(cfg);
      if (csv)
        return emit_csv(g, {qcr::csv_row("separable-demo", "separable-discordant", "identity", r.correlations, std::nullopt, std::nullopt, cfg.seed)}), 0;
      json j = qcr::to_json(r);
      j["seed"] = cfg.seed;
      emit_json(g, j);
    } else if (*sample) {
      sampling.dims = qcr::parse_dims(sample_dims);
      sampling.seed = cfg.seed;
      const auto r = qcr::scenario_measure_sampling(sampling, cfg);
      if (csv) {
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < r.discord.size(); ++i)
          rows.push_back("sample,sample-" + std::to_string(i) + ",identity,,,,,," + qcr::csv_number(r.discord[i]) + ",,,," +
                         std::to_string(cfg.seed));
        return emit_csv(g, rows), 0;
      }
      emit_json(g, qcr::to_json(r));
    } else if (*cv) {
      const auto parts = qcr::detail::split(input, ',');
      if (parts.size() != 2) throw qcr::ValidationError("--input expects n1,n2");
      const int n1 = static_cast<int>(qcr::detail::parse_int(parts[0], "--input"));
      const int n2 = static_cast<int>(qcr::detail::parse_int(parts[1], "--input"));
      const auto r = qcr::scenario_cv_demo(cutoff, theta, n1, n2, cfg);
      if (csv)
        return emit_csv(g, {qcr::csv_row("cv-demo", "fock:" + input, "beamsplitter:" + std::to_string(cutoff) + ":" + qcr::csv_number(theta),
                                         r.correlations, std::nullopt, std::nullopt, cfg.seed)}),
               0;
      json j = qcr::to_json(r);
      j["seed"] = cfg.seed;
      emit_json(g, j);
    }
  } catch (const qcr::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qcr::ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
