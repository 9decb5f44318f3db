// Command-line harness around the library: graph generation, exact
// solving, model construction and export, spectral gap search, annealing
// benchmarks, and batch sweeps. Every command is deterministic for fixed
// flags and seeds.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>

#include "mkcs/anneal.hpp"
#include "mkcs/experiments.hpp"
#include "mkcs/graph.hpp"
#include "mkcs/ising.hpp"
#include "mkcs/mkcs.hpp"
#include "mkcs/qubo.hpp"
#include "mkcs/schedule.hpp"
#include "mkcs/spectrum.hpp"

namespace {

mkcs::QuboModel build_model(const mkcs::MkcsInstance& inst,
                            const std::string& form, double c1, double c2) {
  if (form == "linear") return mkcs::build_linear(inst, c1, c2);
  if (form == "nonlinear") return mkcs::build_nonlinear(inst, c1, c2);
  throw CLI::ValidationError("--form must be linear or nonlinear");
}

mkcs::AnnealSchedule load_schedule(const std::string& spec) {
  if (spec.empty() || spec == "default") return mkcs::AnnealSchedule::linear();
  return mkcs::AnnealSchedule::from_csv_file(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum k-colorable subgraph QUBO toolkit"};
  app.require_subcommand(1);

  // gen
  std::string gen_type = "er", gen_out;
  int gen_n = 5, gen_k = 2;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate a graph as DIMACS edge list");
  gen->add_option("--type", gen_type, "er | clique | pendant")
      ->check(CLI::IsMember({"er", "clique", "pendant"}));
  gen->add_option("--n", gen_n, "vertex count (er)");
  gen->add_option("--p", gen_p, "edge probability (er)");
  gen->add_option("--seed", gen_seed, "generator seed (er)");
  gen->add_option("--k", gen_k, "color count (clique/pendant families)");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve-exact
  std::string se_graph;
  int se_k = 1;
  int se_budget = 24;
  auto* se = app.add_subcommand("solve-exact",
                                "exact optimum by exhaustive enumeration");
  se->add_option("--graph", se_graph, "DIMACS graph file")->required();
  se->add_option("--k", se_k, "number of colors");
  se->add_option("--budget", se_budget, "enumeration budget in bits");

  // build
  std::string b_graph, b_form = "nonlinear", b_out;
  int b_k = 1;
  double b_c1 = 2.0, b_c2 = 2.0;
  auto* build = app.add_subcommand("build", "construct a model and export it");
  build->add_option("--graph", b_graph, "DIMACS graph file")->required();
  build->add_option("--k", b_k, "number of colors");
  build->add_option("--form", b_form, "linear | nonlinear")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  build->add_option("--c1", b_c1, "edge-conflict penalty");
  build->add_option("--c2", b_c2, "multi-color penalty");
  build->add_option("--out", b_out, "model output file")->required();

  // solve-qubo
  std::string sq_model;
  int sq_budget = 24;
  auto* sq = app.add_subcommand("solve-qubo",
                                "exact optimum of an exported model");
  sq->add_option("--qubo", sq_model, "model file")->required();
  sq->add_option("--budget", sq_budget, "enumeration budget in bits");

  // min-gap
  std::string mg_graph, mg_form = "nonlinear", mg_schedule = "default";
  int mg_k = 1;
  double mg_c1 = 1.0, mg_c2 = 1.0, mg_eps = 1.0;
  mkcs::SpectrumConfig mg_cfg;
  auto* mg = app.add_subcommand("min-gap",
                                "minimum spectral gap along the anneal");
  mg->add_option("--graph", mg_graph, "DIMACS graph file")->required();
  mg->add_option("--k", mg_k, "number of colors");
  mg->add_option("--form", mg_form, "linear | nonlinear")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  mg->add_option("--c1", mg_c1, "edge-conflict penalty");
  mg->add_option("--c2", mg_c2, "multi-color penalty");
  mg->add_option("--schedule", mg_schedule, "schedule CSV file or 'default'");
  mg->add_option("--epsilon", mg_eps, "distinct-state threshold in GHz");
  mg->add_option("--max-qubits", mg_cfg.max_qubits, "hard spin budget");
  mg->add_option("--dense-routing-qubits", mg_cfg.dense_routing_qubits,
                 "largest spin count solved by full diagonalization");
  mg->add_option("--block-cap", mg_cfg.block_cap,
                 "iterative eigensolver block ceiling");

  // tts
  std::string t_graph, t_form = "nonlinear";
  int t_k = 1, t_reads = 1000, t_sweeps = 100, t_budget = 24;
  double t_c1 = 1.0, t_c2 = 1.0, t_run = 20.0, t_alpha = 0.95, t_tol = 1e-9;
  double t_beta0 = 0.1, t_beta1 = 10.0;
  std::uint64_t t_seed = 1;
  bool t_has_ground = false;
  double t_ground = 0.0;
  auto* tt = app.add_subcommand("tts", "time-to-solution from annealing runs");
  tt->add_option("--graph", t_graph, "DIMACS graph file")->required();
  tt->add_option("--k", t_k, "number of colors");
  tt->add_option("--form", t_form, "linear | nonlinear")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  tt->add_option("--c1", t_c1, "edge-conflict penalty");
  tt->add_option("--c2", t_c2, "multi-color penalty");
  tt->add_option("--reads", t_reads, "annealing runs");
  tt->add_option("--sweeps", t_sweeps, "sweeps per run");
  tt->add_option("--seed", t_seed, "sampler seed");
  tt->add_option("--beta-start", t_beta0, "initial inverse temperature");
  tt->add_option("--beta-end", t_beta1, "final inverse temperature");
  tt->add_option("--t-run", t_run, "single-run time in microseconds");
  tt->add_option("--alpha", t_alpha, "target confidence");
  tt->add_option("--tol", t_tol, "ground-state match tolerance");
  tt->add_option("--budget", t_budget, "enumeration budget in bits");
  auto* ground_opt = tt->add_option(
      "--ground", t_ground, "reference optimum (skips exact solve)");

  // sweep
  std::string sw_config, sw_out;
  auto* sw = app.add_subcommand("sweep", "batch experiment runner");
  sw->add_option("--config", sw_config, "sweep config file")->required();
  sw->add_option("--out", sw_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      mkcs::Graph g;
      if (gen_type == "er")
        g = mkcs::er_generate(gen_n, gen_p, gen_seed);
      else if (gen_type == "clique")
        g = mkcs::clique_counterexample(gen_k);
      else
        g = mkcs::pendant_counterexample(gen_k);
      if (gen_out.empty())
        std::cout << mkcs::write_graph_string(g);
      else
        mkcs::write_graph_file(g, gen_out);
    } else if (se->parsed()) {
      const auto inst =
          mkcs::make_instance(mkcs::read_graph_file(se_graph), se_k);
      const auto result = mkcs::alpha_bruteforce(inst, se_budget);
      std::cout << "value " << result.value << "\n"
                << mkcs::write_assignment(result.witness);
    } else if (build->parsed()) {
      const auto inst =
          mkcs::make_instance(mkcs::read_graph_file(b_graph), b_k);
      const auto model = build_model(inst, b_form, b_c1, b_c2);
      mkcs::write_qubo_file(model, b_out);
      std::cout << "nvars " << model.num_vars << " quadratic_terms "
                << model.quadratic.size() << "\n";
    } else if (sq->parsed()) {
      const auto model = mkcs::read_qubo_file(sq_model);
      const auto result = mkcs::solve_bruteforce(model, sq_budget);
      std::cout << "value " << mkcs::format_double(result.value)
                << " optima " << result.optima_count << "\nbits ";
      for (auto bit : result.bits) std::cout << int(bit);
      std::cout << "\n";
    } else if (mg->parsed()) {
      const auto inst =
          mkcs::make_instance(mkcs::read_graph_file(mg_graph), mg_k);
      const auto model = build_model(inst, mg_form, mg_c1, mg_c2);
      const auto schedule = load_schedule(mg_schedule);
      const auto gap =
          mkcs::min_gap(mkcs::to_ising(model), schedule, mg_eps, mg_cfg);
      std::cout << "delta_min,s_star,evaluations,fallback,no_distinct\n"
                << mkcs::format_double(gap.delta_min) << ','
                << mkcs::format_double(gap.s_star) << ',' << gap.evaluations
                << ',' << (gap.fallback_used ? 1 : 0) << ','
                << (gap.no_distinct ? 1 : 0) << "\n"
                << "s,E0,E1\n";
      for (const auto& point : gap.trace)
        std::cout << mkcs::format_double(point.s) << ','
                  << mkcs::format_double(point.e0) << ','
                  << mkcs::format_double(point.e1) << "\n";
    } else if (tt->parsed()) {
      const auto inst =
          mkcs::make_instance(mkcs::read_graph_file(t_graph), t_k);
      const auto model = build_model(inst, t_form, t_c1, t_c2);
      t_has_ground = ground_opt->count() > 0;
      const double ground =
          t_has_ground ? t_ground
                       : mkcs::solve_bruteforce(model, t_budget).value;
      mkcs::SamplerConfig cfg;
      cfg.num_reads = t_reads;
      cfg.sweeps = t_sweeps;
      cfg.beta_start = t_beta0;
      cfg.beta_end = t_beta1;
      cfg.seed = t_seed;
      const double p_hat =
          mkcs::estimate_success(mkcs::sample(model, cfg), ground, t_tol);
      const auto estimate = mkcs::tts(p_hat, t_run, t_alpha);
      std::cout << "p_hat,tts_us,ground\n"
                << mkcs::format_double(p_hat) << ','
                << (estimate.unbounded
                        ? std::string("unbounded")
                        : mkcs::format_double(estimate.tts_us))
                << ',' << mkcs::format_double(ground) << "\n";
    } else if (sw->parsed()) {
      const auto cfg = mkcs::read_sweep_config_file(sw_config);
      const auto table = mkcs::run_sweep(cfg);
      mkcs::write_sweep_csv(table, cfg.metric, sw_out);
      std::cout << "rows " << table.rows.size() << " errors "
                << table.errors.size() << "\n";
      if (!table.errors.empty()) return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
