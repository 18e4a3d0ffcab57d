// qigalab: command-line driver for the QIGA / SGA building-block experiments.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "qigalab/experiment.hpp"
#include "qigalab/propagation_stats.hpp"
#include "qigalab/qiga.hpp"
#include "qigalab/schema.hpp"
#include "qigalab/sga.hpp"
#include "qigalab/spline_fitness.hpp"

using namespace qigalab;

namespace {

// Flags shared by the experiment-style subcommands. Unset values leave the
// config file (or built-in default) untouched.
struct ExperimentFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::vector<std::string> schemata;
  std::string knots;
  std::string out;
  std::string algorithm;
  std::string spline_bc;
  std::string lookup_table;
  bool running_best = false;

  void attach(CLI::App* app, bool experiment_only) {
    app->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "Base RNG seed (replication k uses seed + k)");
    app->add_option("--schema", schemata, "Tracked schema, e.g. 01001 (repeatable)");
    app->add_option("--knots", knots, "Knot file with one `x y` pair per line")
        ->check(CLI::ExistingFile);
    app->add_option("--spline-bc", spline_bc, "natural | not-a-knot | clamped");
    app->add_option("--lookup-table", lookup_table, "Rotation lookup table file")
        ->check(CLI::ExistingFile);
    if (experiment_only) {
      app->add_option("--runs", runs, "Number of replications");
      app->add_option("--out", out, "Output directory (overrides $QIGALAB_OUT)");
      app->add_option("--algorithm", algorithm, "sga | qiga | both");
      app->add_flag("--running-best", running_best, "Plot running best in fig5");
    }
  }

  ExperimentConfig resolve() const {
    ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (const char* env = std::getenv("QIGALAB_OUT"); env != nullptr && *env != '\0') {
      c.output_dir = env;
    }
    if (!out.empty()) c.output_dir = out;
    if (seed) c.base_seed = *seed;
    if (runs) c.replications = *runs;
    if (!schemata.empty()) c.schemata = schemata;
    if (!knots.empty()) c.knots_path = knots;
    if (!algorithm.empty()) c.algorithm = parse_algorithm(algorithm);
    if (!spline_bc.empty()) c.spline_bc = parse_boundary_condition(spline_bc);
    if (!lookup_table.empty()) {
      c.lookup_table_path = lookup_table;
      c.qiga.lookup_table = RotationLookupTable::load(lookup_table);
    }
    if (running_best) c.running_best = true;
    if (auto errors = c.validate(); !errors.empty()) throw ConfigError(std::move(errors));
    return c;
  }
};

SplineFitness fitness_from(const std::string& knots, const std::string& bc) {
  ExperimentConfig c;
  if (!knots.empty()) c.knots_path = knots;
  if (!bc.empty()) c.spline_bc = parse_boundary_condition(bc);
  return load_fitness(c);
}

int propagation_check(std::size_t instances, std::size_t max_n, std::uint64_t seed) {
  Rng rng(seed);
  double worst_mean = 0.0, worst_var = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 1 + uniform_index(rng, max_n);
    const std::size_t m = 1 + uniform_index(rng, 8);
    std::vector<QuantumChromosome> chromosomes;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<QubitGene> genes;
      for (std::size_t j = 0; j < m; ++j) {
        const double angle = uniform01(rng) * 2 * 3.14159265358979323846;
        genes.emplace_back(std::cos(angle), std::sin(angle));
      }
      chromosomes.emplace_back(std::move(genes));
    }
    const QuantumPopulation q(std::move(chromosomes));
    std::string text;
    for (std::size_t j = 0; j < m; ++j) text.push_back("01*"[uniform_index(rng, 3)]);
    const auto s = Schema::parse(text);
    worst_mean = std::max(worst_mean,
                          std::abs(expected_matches(q, s) - expected_matches_oracle(q, s)));
    worst_var = std::max(worst_var,
                         std::abs(variance_matches(q, s) - variance_matches_oracle(q, s)));
  }
  const bool ok = worst_mean < 1e-9 && worst_var < 1e-9;
  fmt::print("instances={} max_population={}\n", instances, max_n);
  fmt::print("max |E_closed - E_oracle| = {:.3e}\n", worst_mean);
  fmt::print("max |V_closed - V_oracle| = {:.3e}\n", worst_var);
  fmt::print("{}\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-inspired GA and building-block propagation toolkit"};
  app.require_subcommand(1);

  ExperimentFlags experiment_flags, sga_flags, qiga_flags;

  auto* experiment = app.add_subcommand("run-experiment", "Replicated SGA/QIGA comparison");
  experiment_flags.attach(experiment, true);

  auto* sga = app.add_subcommand("run-sga", "Single SGA run; per-generation CSV on stdout");
  sga_flags.attach(sga, false);

  auto* qiga = app.add_subcommand("run-qiga", "Single QIGA run; per-generation CSV on stdout");
  qiga_flags.attach(qiga, false);

  std::vector<std::string> fitness_schemata;
  std::size_t bits = 20;
  std::string knots, spline_bc;
  auto* schema_fitness_cmd = app.add_subcommand("schema-fitness", "Mean fitness of schemata");
  schema_fitness_cmd->add_option("schema", fitness_schemata, "Schema text")->required();
  schema_fitness_cmd->add_option("--bits", bits, "Chromosome length");
  schema_fitness_cmd->add_option("--knots", knots, "Knot file")->check(CLI::ExistingFile);
  schema_fitness_cmd->add_option("--spline-bc", spline_bc, "natural | not-a-knot | clamped");

  std::size_t max_order = 5, max_deflen = 4, top_k = 6;
  auto* table2 = app.add_subcommand("table2", "Rank low-order, short schemata by fitness");
  table2->add_option("--bits", bits, "Chromosome length");
  table2->add_option("--max-order", max_order, "Maximum schema order");
  table2->add_option("--max-deflen", max_deflen, "Maximum defining length");
  table2->add_option("--top", top_k, "Rows to print");
  table2->add_option("--knots", knots, "Knot file")->check(CLI::ExistingFile);
  table2->add_option("--spline-bc", spline_bc, "natural | not-a-knot | clamped");

  std::string chromosome;
  double lo = 0.0, hi = 200.0;
  auto* sampling = app.add_subcommand("sampling-dist", "Sampling distribution of a chromosome");
  sampling->add_option("chromosome", chromosome, "Genes: 0, 1, h or alpha:beta, comma-separated")
      ->required();
  sampling->add_option("--lo", lo, "Domain lower bound");
  sampling->add_option("--hi", hi, "Domain upper bound");

  std::size_t instances = 200, max_n = 12;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("propagation-check", "Closed forms vs subset-sum oracle");
  check->add_option("--instances", instances, "Random populations to test");
  check->add_option("--max-population", max_n, "Largest population size")
      ->check(CLI::Range(std::size_t{1}, kMaxOraclePopulation));
  check->add_option("--seed", check_seed, "RNG seed");

  auto* landscape = app.add_subcommand("landscape", "Objective maximum and exhaustive mean");
  landscape->add_option("--bits", bits, "Chromosome length");
  landscape->add_option("--knots", knots, "Knot file")->check(CLI::ExistingFile);
  landscape->add_option("--spline-bc", spline_bc, "natural | not-a-knot | clamped");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*experiment) {
      const auto config = experiment_flags.resolve();
      for (const auto& path : run_experiment(config)) std::cout << path.string() << '\n';
    } else if (*sga) {
      auto config = sga_flags.resolve();
      config.sga.rng_seed = config.base_seed;
      const auto f = load_fitness(config);
      emit_sga_run(std::cout, {0, config.base_seed, run_sga(config.sga, decoded_fitness(f))},
                   config.schemata);
    } else if (*qiga) {
      auto config = qiga_flags.resolve();
      config.qiga.rng_seed = config.base_seed;
      const auto f = load_fitness(config);
      emit_qiga_run(std::cout, {0, config.base_seed, run_qiga(config.qiga, decoded_fitness(f))},
                    config.schemata);
    } else if (*schema_fitness_cmd) {
      const auto f = fitness_from(knots, spline_bc);
      std::cout << "schema,fitness\n";
      for (const auto& text : fitness_schemata) {
        const auto s = Schema::parse(text, bits);
        std::cout << s.to_string() << ',' << format_real(schema_fitness(s, f, bits)) << '\n';
      }
    } else if (*table2) {
      const auto f = fitness_from(knots, spline_bc);
      emit_table2(std::cout, table2_rows(f, bits, max_order, max_deflen, top_k));
    } else if (*sampling) {
      emit_fig7(std::cout, QuantumChromosome::parse(chromosome), lo, hi);
    } else if (*check) {
      return propagation_check(instances, max_n, check_seed);
    } else if (*landscape) {
      const auto f = fitness_from(knots, spline_bc);
      const auto best = global_argmax(f, 0.01);
      fmt::print("spline_bc={}\n", to_string(f.boundary_condition()));
      fmt::print("x_star={:.6f}\nf_star={:.6f}\n", best.x, best.f);
      fmt::print("mean_fitness_{}bit={:.6f}\n", bits, mean_fitness_exhaustive(f, bits));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
