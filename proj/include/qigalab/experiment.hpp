#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qigalab/generation.hpp"
#include "qigalab/qiga.hpp"
#include "qigalab/schema.hpp"
#include "qigalab/sga.hpp"
#include "qigalab/spline_fitness.hpp"

namespace qigalab {

enum class Algorithm { Sga, Qiga, Both };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);

// Carries every violation found, one per line of what().
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Both;
  std::optional<std::filesystem::path> knots_path;  // reference knots when empty
  BoundaryCondition spline_bc = BoundaryCondition::NotAKnot;
  SgaConfig sga;
  QigaConfig qiga;
  std::optional<std::filesystem::path> lookup_table_path;  // standard table when empty
  std::vector<std::string> schemata{"01001"};
  std::size_t replications = 10;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "results";
  bool running_best = false;

  std::vector<std::string> validate() const;
  bool runs_sga() const { return algorithm != Algorithm::Qiga; }
  bool runs_qiga() const { return algorithm != Algorithm::Sga; }
};

/// INI-style configuration:
///
///   [experiment]  algorithm, runs, seed, knots, spline_bc, schema
///                 (comma-separated), out, running_best
///   [sga]         population_size, chromosome_length, crossover_prob,
///                 mutation_prob, max_generations
///   [qiga]        population_size, chromosome_length, max_generations,
///                 lookup_table
///
/// Relative knots and lookup_table paths resolve against `base_dir`; `out`
/// stays relative to the working directory. Missing keys keep their
/// defaults. Unknown sections or keys and malformed values are all reported
/// together in one ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// The objective named by the config (knot file or reference knots).
SplineFitness load_fitness(const ExperimentConfig& config);

struct SgaRun {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::vector<GenerationSnapshot> history;
};

struct QigaRun {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::vector<QigaGeneration> history;
};

struct ExperimentData {
  std::vector<SgaRun> sga;
  std::vector<QigaRun> qiga;
};

// Replication k runs with seed base_seed + k. Replications execute
// concurrently; the result does not depend on scheduling.
ExperimentData run_replications(const ExperimentConfig& config, const SplineFitness& f);

struct PropagationRecord {
  std::size_t generation = 0;
  std::size_t run = 0;
  std::string algorithm;  // "sga" or "qiga"
  std::string schema;
  std::optional<double> expected;  // qiga only
  std::optional<double> variance;  // qiga only
  std::size_t observed = 0;
};

// Expected/variance come from Q(t), the state after generation t's update;
// `observed` counts matches in P(t).
std::vector<PropagationRecord> propagation_records(const ExperimentData& data,
                                                   const std::vector<std::string>& schemata);

struct Fig5Row {
  std::size_t generation = 0;
  std::optional<double> sga_best_mean;
  std::optional<double> qiga_best_mean;
};

// Pointwise mean across runs of each generation's population best, or of
// the running best when `running_best` is set.
std::vector<Fig5Row> fig5_rows(const ExperimentData& data, bool running_best);

struct Fig6Row {
  std::size_t generation = 0;
  std::optional<double> sga_observed_mean;
  std::optional<double> qiga_expected_mean;
  std::optional<double> qiga_variance_mean;
  std::optional<double> qiga_observed_mean;
  std::optional<double> band_low;   // expected - sqrt(variance)
  std::optional<double> band_high;  // expected + sqrt(variance)
};

std::vector<Fig6Row> fig6_rows(const ExperimentData& data, const std::string& schema);

/// Fraction of (run, generation) cells in which the observed QIGA match count
/// lies within expected +- k * sqrt(variance), where expected and variance
/// describe the quantum state that was observed: Q(0) for generation 0 and
/// Q(t - 1) for generation t.
double calibration_coverage(const std::vector<QigaRun>& runs, const std::string& schema,
                            double k = 3.0);

struct Table2Row {
  Schema schema;
  double fitness;
};

// Every schema from enumerate_schemata() scored by schema_fitness(), sorted
// by fitness descending (ties by schema text), truncated to top_k.
// Throws RefusalError naming how many schemata exceed the enumeration cap.
std::vector<Table2Row> table2_rows(const SplineFitness& f, std::size_t m, std::size_t max_order,
                                   std::size_t max_defining_length, std::size_t top_k);

// CSV writers: comma-separated, header row, 6 significant digits, empty
// cell for missing values.
void emit_fig5(std::ostream& out, const std::vector<Fig5Row>& rows);
void emit_fig6(std::ostream& out, const std::vector<Fig6Row>& rows);
// One row per bitstring of q, in decoded order: decoded_x, probability.
void emit_fig7(std::ostream& out, const QuantumChromosome& q, double lo, double hi);
void emit_table2(std::ostream& out, const std::vector<Table2Row>& rows);
void emit_propagation_records(std::ostream& out, const std::vector<PropagationRecord>& records);
void emit_sga_run(std::ostream& out, const SgaRun& run, const std::vector<std::string>& schemata);
void emit_qiga_run(std::ostream& out, const QigaRun& run, const std::vector<std::string>& schemata);

std::string format_real(double v);

// Runs the experiment and writes every artifact under config.output_dir.
// Returns the paths written, in a fixed order.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

}  // namespace qigalab
