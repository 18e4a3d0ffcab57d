#include "qigalab/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <ostream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/core.h>

#include "qigalab/errors.hpp"
#include "qigalab/propagation_stats.hpp"

namespace qigalab {
namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration:";
  for (const auto& l : lines) out += "\n  - " + l;
  return out;
}

template <typename T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

std::optional<bool> parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  return std::nullopt;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    pos = comma + 1;
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::string cell(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string file_tag(const std::string& schema) {
  std::string tag = schema;
  std::replace(tag.begin(), tag.end(), '*', 'x');
  return tag;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "sga") return Algorithm::Sga;
  if (name == "qiga") return Algorithm::Qiga;
  if (name == "both") return Algorithm::Both;
  throw ParseError("unknown algorithm \"" + std::string(name) + "\" (expected sga, qiga or both)");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Sga: return "sga";
    case Algorithm::Qiga: return "qiga";
    case Algorithm::Both: return "both";
  }
  return "?";
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument(join_lines(violations)), violations_(std::move(violations)) {}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errors;
  if (replications < 1) errors.push_back("experiment.runs must be at least 1");
  if (schemata.empty()) errors.push_back("experiment.schema must name at least one schema");
  if (runs_sga()) {
    auto e = sga.validate();
    errors.insert(errors.end(), e.begin(), e.end());
  }
  if (runs_qiga()) {
    auto e = qiga.validate();
    errors.insert(errors.end(), e.begin(), e.end());
  }
  for (const auto& text : schemata) {
    try {
      const auto s = Schema::parse(text);
      if (runs_sga() && s.size() > sga.chromosome_length) {
        errors.push_back("schema " + text + " is longer than sga.chromosome_length");
      }
      if (runs_qiga() && s.size() > qiga.chromosome_length) {
        errors.push_back("schema " + text + " is longer than qiga.chromosome_length");
      }
    } catch (const ParseError& e) {
      errors.push_back(e.what());
    }
  }
  return errors;
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({e.what()});
  }

  ExperimentConfig config;
  std::vector<std::string> errors;

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  auto bad = [&](const std::string& key, const std::string& value, const char* expected) {
    errors.push_back(key + " = \"" + value + "\": expected " + expected);
  };
  auto set_count = [&](std::size_t& target) {
    return [&](const std::string& key, const std::string& value) {
      if (auto v = parse_number<std::size_t>(value)) {
        target = *v;
      } else {
        bad(key, value, "a non-negative integer");
      }
    };
  };
  auto set_real = [&](double& target) {
    return [&](const std::string& key, const std::string& value) {
      if (auto v = parse_number<double>(value)) {
        target = *v;
      } else {
        bad(key, value, "a real number");
      }
    };
  };

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"experiment.algorithm",
       [&](const std::string& key, const std::string& value) {
         try {
           config.algorithm = parse_algorithm(value);
         } catch (const ParseError&) {
           bad(key, value, "sga, qiga or both");
         }
       }},
      {"experiment.runs", set_count(config.replications)},
      {"experiment.seed",
       [&](const std::string& key, const std::string& value) {
         if (auto v = parse_number<std::uint64_t>(value)) {
           config.base_seed = *v;
         } else {
           bad(key, value, "a non-negative integer");
         }
       }},
      {"experiment.knots",
       [&](const std::string&, const std::string& value) { config.knots_path = resolve(value); }},
      {"experiment.spline_bc",
       [&](const std::string& key, const std::string& value) {
         try {
           config.spline_bc = parse_boundary_condition(value);
         } catch (const ParseError&) {
           bad(key, value, "natural, not-a-knot or clamped");
         }
       }},
      {"experiment.schema",
       [&](const std::string&, const std::string& value) { config.schemata = split_list(value); }},
      {"experiment.out",
       [&](const std::string&, const std::string& value) { config.output_dir = value; }},
      {"experiment.running_best",
       [&](const std::string& key, const std::string& value) {
         if (auto v = parse_bool(value)) {
           config.running_best = *v;
         } else {
           bad(key, value, "true or false");
         }
       }},
      {"sga.population_size", set_count(config.sga.population_size)},
      {"sga.chromosome_length", set_count(config.sga.chromosome_length)},
      {"sga.max_generations", set_count(config.sga.max_generations)},
      {"sga.crossover_prob", set_real(config.sga.crossover_prob)},
      {"sga.mutation_prob", set_real(config.sga.mutation_prob)},
      {"qiga.population_size", set_count(config.qiga.population_size)},
      {"qiga.chromosome_length", set_count(config.qiga.chromosome_length)},
      {"qiga.max_generations", set_count(config.qiga.max_generations)},
      {"qiga.lookup_table",
       [&](const std::string&, const std::string& value) {
         config.lookup_table_path = resolve(value);
       }},
  };

  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      errors.push_back("key \"" + section + "\" must live in a section");
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      auto it = setters.find(full);
      if (it == setters.end()) {
        errors.push_back("unknown key " + full);
        continue;
      }
      it->second(full, node.get_value<std::string>());
    }
  }

  if (config.lookup_table_path) {
    try {
      config.qiga.lookup_table = RotationLookupTable::load(*config.lookup_table_path);
    } catch (const std::exception& e) {
      errors.push_back(std::string("qiga.lookup_table: ") + e.what());
    }
  }

  auto semantic = config.validate();
  errors.insert(errors.end(), semantic.begin(), semantic.end());
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in, path.parent_path());
}

SplineFitness load_fitness(const ExperimentConfig& config) {
  if (config.knots_path) return build_spline(read_knots(*config.knots_path), config.spline_bc);
  const auto knots = reference_knots();
  return build_spline({knots.begin(), knots.end()}, config.spline_bc);
}

ExperimentData run_replications(const ExperimentConfig& config, const SplineFitness& f) {
  if (auto errors = config.validate(); !errors.empty()) throw ConfigError(std::move(errors));
  const FitnessFn fitness = decoded_fitness(f);

  std::vector<std::future<SgaRun>> sga_jobs;
  std::vector<std::future<QigaRun>> qiga_jobs;
  for (std::size_t k = 0; k < config.replications; ++k) {
    const std::uint64_t seed = config.base_seed + k;
    if (config.runs_sga()) {
      sga_jobs.push_back(std::async(std::launch::async, [&config, &fitness, k, seed] {
        SgaConfig c = config.sga;
        c.rng_seed = seed;
        return SgaRun{k, seed, run_sga(c, fitness)};
      }));
    }
    if (config.runs_qiga()) {
      qiga_jobs.push_back(std::async(std::launch::async, [&config, &fitness, k, seed] {
        QigaConfig c = config.qiga;
        c.rng_seed = seed;
        return QigaRun{k, seed, run_qiga(c, fitness)};
      }));
    }
  }

  ExperimentData data;
  for (auto& job : sga_jobs) data.sga.push_back(job.get());
  for (auto& job : qiga_jobs) data.qiga.push_back(job.get());
  return data;
}

std::vector<PropagationRecord> propagation_records(const ExperimentData& data,
                                                   const std::vector<std::string>& schemata) {
  std::vector<PropagationRecord> records;
  for (const auto& text : schemata) {
    for (const auto& run : data.sga) {
      const auto s = Schema::parse(text, run.history.front().population.front().size());
      for (const auto& g : run.history) {
        records.push_back({g.generation, run.run, "sga", s.to_string(), std::nullopt,
                           std::nullopt, count_matches(g.population, s)});
      }
    }
    for (const auto& run : data.qiga) {
      const auto s = Schema::parse(text, run.history.front().state.chromosome_length());
      for (const auto& g : run.history) {
        const auto stats = match_count_stats(g.state, s);
        records.push_back({g.observed.generation, run.run, "qiga", s.to_string(), stats.expected,
                           stats.variance, count_matches(g.observed.population, s)});
      }
    }
  }
  return records;
}

std::vector<Fig5Row> fig5_rows(const ExperimentData& data, bool running_best) {
  std::size_t generations = 0;
  for (const auto& r : data.sga) generations = std::max(generations, r.history.size());
  for (const auto& r : data.qiga) generations = std::max(generations, r.history.size());

  // Per run, per generation value of the plotted series.
  auto series = [&](auto&& best_of, const auto& runs) {
    std::vector<std::vector<double>> out;
    for (const auto& run : runs) {
      std::vector<double> v;
      double running = -std::numeric_limits<double>::infinity();
      for (const auto& g : run.history) {
        running = std::max(running, best_of(g));
        v.push_back(running_best ? running : best_of(g));
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  const auto sga = series([](const GenerationSnapshot& g) { return g.best_fitness; }, data.sga);
  const auto qiga =
      series([](const QigaGeneration& g) { return g.observed.best_fitness; }, data.qiga);

  auto mean_at = [](const std::vector<std::vector<double>>& runs,
                    std::size_t t) -> std::optional<double> {
    std::vector<double> column;
    for (const auto& r : runs) {
      if (t < r.size()) column.push_back(r[t]);
    }
    if (column.empty()) return std::nullopt;
    return mean_of(column);
  };

  std::vector<Fig5Row> rows;
  for (std::size_t t = 0; t < generations; ++t) {
    rows.push_back({t, mean_at(sga, t), mean_at(qiga, t)});
  }
  return rows;
}

std::vector<Fig6Row> fig6_rows(const ExperimentData& data, const std::string& schema) {
  std::size_t generations = 0;
  for (const auto& r : data.sga) generations = std::max(generations, r.history.size());
  for (const auto& r : data.qiga) generations = std::max(generations, r.history.size());

  std::vector<Fig6Row> rows(generations);
  for (std::size_t t = 0; t < generations; ++t) {
    auto& row = rows[t];
    row.generation = t;

    std::vector<double> sga_observed;
    for (const auto& run : data.sga) {
      if (t >= run.history.size()) continue;
      const auto& g = run.history[t];
      const auto s = Schema::parse(schema, g.population.front().size());
      sga_observed.push_back(static_cast<double>(count_matches(g.population, s)));
    }
    if (!sga_observed.empty()) row.sga_observed_mean = mean_of(sga_observed);

    std::vector<double> expected, variance, observed;
    for (const auto& run : data.qiga) {
      if (t >= run.history.size()) continue;
      const auto& g = run.history[t];
      const auto s = Schema::parse(schema, g.state.chromosome_length());
      const auto stats = match_count_stats(g.state, s);
      expected.push_back(stats.expected);
      variance.push_back(stats.variance);
      observed.push_back(static_cast<double>(count_matches(g.observed.population, s)));
    }
    if (!expected.empty()) {
      row.qiga_expected_mean = mean_of(expected);
      row.qiga_variance_mean = mean_of(variance);
      row.qiga_observed_mean = mean_of(observed);
      const double sd = std::sqrt(*row.qiga_variance_mean);
      row.band_low = *row.qiga_expected_mean - sd;
      row.band_high = *row.qiga_expected_mean + sd;
    }
  }
  return rows;
}

double calibration_coverage(const std::vector<QigaRun>& runs, const std::string& schema,
                            double k) {
  std::size_t inside = 0, cells = 0;
  for (const auto& run : runs) {
    const auto s = Schema::parse(schema, run.history.front().state.chromosome_length());
    for (std::size_t t = 0; t < run.history.size(); ++t) {
      const auto& sampled_from = run.history[t == 0 ? 0 : t - 1].state;
      const auto stats = match_count_stats(sampled_from, s);
      const double observed =
          static_cast<double>(count_matches(run.history[t].observed.population, s));
      if (std::abs(observed - stats.expected) <= k * std::sqrt(stats.variance) + 1e-12) ++inside;
      ++cells;
    }
  }
  return cells == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(cells);
}

std::vector<Table2Row> table2_rows(const SplineFitness& f, std::size_t m, std::size_t max_order,
                                   std::size_t max_defining_length, std::size_t top_k) {
  const auto schemata = enumerate_schemata(m, max_order, max_defining_length);
  const auto refused = std::count_if(schemata.begin(), schemata.end(), [&](const Schema& s) {
    return m - s.order() > kMaxSchemaFreeBits;
  });
  if (refused > 0) {
    throw RefusalError(std::to_string(refused) + " of " + std::to_string(schemata.size()) +
                       " schemata match more than 2^" + std::to_string(kMaxSchemaFreeBits) +
                       " chromosomes");
  }

  std::vector<Table2Row> rows;
  rows.reserve(schemata.size());
  if (m <= kMaxExhaustiveBits) {
    const auto landscape = fitness_landscape(f, m);
    for (const auto& s : schemata) rows.push_back({s, schema_fitness(s, landscape)});
  } else {
    for (const auto& s : schemata) rows.push_back({s, schema_fitness(s, f, m)});
  }
  std::sort(rows.begin(), rows.end(), [](const Table2Row& a, const Table2Row& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.schema < b.schema;
  });
  if (rows.size() > top_k) rows.resize(top_k);
  return rows;
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  return fmt::format("{:.6g}", v);
}

void emit_fig5(std::ostream& out, const std::vector<Fig5Row>& rows) {
  out << "generation,sga_best_mean,qiga_best_mean\n";
  for (const auto& r : rows) {
    out << r.generation << ',' << cell(r.sga_best_mean) << ',' << cell(r.qiga_best_mean) << '\n';
  }
}

void emit_fig6(std::ostream& out, const std::vector<Fig6Row>& rows) {
  out << "generation,sga_observed_mean,qiga_expected_mean,qiga_variance_mean,"
         "qiga_observed_mean,band_low,band_high\n";
  for (const auto& r : rows) {
    out << r.generation << ',' << cell(r.sga_observed_mean) << ',' << cell(r.qiga_expected_mean)
        << ',' << cell(r.qiga_variance_mean) << ',' << cell(r.qiga_observed_mean) << ','
        << cell(r.band_low) << ',' << cell(r.band_high) << '\n';
  }
}

void emit_fig7(std::ostream& out, const QuantumChromosome& q, double lo, double hi) {
  const auto probs = sampling_distribution(q);
  out << "decoded_x,probability\n";
  for (std::size_t v = 0; v < probs.size(); ++v) {
    out << format_real(decode_value(v, q.size(), lo, hi)) << ',' << format_real(probs[v]) << '\n';
  }
}

void emit_table2(std::ostream& out, const std::vector<Table2Row>& rows) {
  out << "schema,fitness\n";
  for (const auto& r : rows) out << r.schema.to_string() << ',' << format_real(r.fitness) << '\n';
}

void emit_propagation_records(std::ostream& out, const std::vector<PropagationRecord>& records) {
  out << "generation,run,algorithm,schema,expected,variance,observed\n";
  for (const auto& r : records) {
    out << r.generation << ',' << r.run << ',' << r.algorithm << ',' << r.schema << ','
        << cell(r.expected) << ',' << cell(r.variance) << ',' << r.observed << '\n';
  }
}

void emit_sga_run(std::ostream& out, const SgaRun& run, const std::vector<std::string>& schemata) {
  out << "generation,best_fitness,mean_fitness,running_best,best_chromosome";
  for (const auto& s : schemata) out << ",observed_" << s;
  out << '\n';
  double running = -std::numeric_limits<double>::infinity();
  for (const auto& g : run.history) {
    running = std::max(running, g.best_fitness);
    out << g.generation << ',' << format_real(g.best_fitness) << ','
        << format_real(g.mean_fitness) << ',' << format_real(running) << ','
        << g.population[g.best_index].to_string();
    for (const auto& text : schemata) {
      out << ',' << count_matches(g.population, Schema::parse(text, g.population.front().size()));
    }
    out << '\n';
  }
}

void emit_qiga_run(std::ostream& out, const QigaRun& run,
                   const std::vector<std::string>& schemata) {
  out << "generation,best_fitness,mean_fitness,running_best,best_chromosome";
  for (const auto& s : schemata) out << ",observed_" << s << ",expected_" << s << ",variance_" << s;
  out << '\n';
  for (const auto& g : run.history) {
    const auto& p = g.observed;
    out << p.generation << ',' << format_real(p.best_fitness) << ','
        << format_real(p.mean_fitness) << ',' << format_real(g.best_so_far.fitness) << ','
        << p.population[p.best_index].to_string();
    for (const auto& text : schemata) {
      const auto s = Schema::parse(text, g.state.chromosome_length());
      const auto stats = match_count_stats(g.state, s);
      out << ',' << count_matches(p.population, s) << ',' << format_real(stats.expected) << ','
          << format_real(stats.variance);
    }
    out << '\n';
  }
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config) {
  if (auto errors = config.validate(); !errors.empty()) throw ConfigError(std::move(errors));
  const SplineFitness f = load_fitness(config);

  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir / "runs");

  const auto data = run_replications(config, f);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, auto&& body) {
    auto out = open_output(path);
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
    written.push_back(path);
  };

  write(dir / "fig5_fitness.csv",
        [&](std::ostream& out) { emit_fig5(out, fig5_rows(data, config.running_best)); });
  for (std::size_t i = 0; i < config.schemata.size(); ++i) {
    const auto& s = config.schemata[i];
    const auto name = i == 0 ? std::string("fig6_propagation.csv")
                             : "fig6_propagation_" + file_tag(s) + ".csv";
    write(dir / name, [&](std::ostream& out) { emit_fig6(out, fig6_rows(data, s)); });
  }
  write(dir / "propagation_records.csv", [&](std::ostream& out) {
    emit_propagation_records(out, propagation_records(data, config.schemata));
  });
  for (const auto& run : data.sga) {
    write(dir / "runs" / fmt::format("sga_run{:02}.csv", run.run),
          [&](std::ostream& out) { emit_sga_run(out, run, config.schemata); });
  }
  for (const auto& run : data.qiga) {
    write(dir / "runs" / fmt::format("qiga_run{:02}.csv", run.run),
          [&](std::ostream& out) { emit_qiga_run(out, run, config.schemata); });
  }
  write(dir / "metadata.txt", [&](std::ostream& out) {
    out << "algorithm=" << to_string(config.algorithm) << '\n'
        << "runs=" << config.replications << '\n'
        << "base_seed=" << config.base_seed << '\n'
        << "seed_rule=base_seed+run\n"
        << "knots=" << (config.knots_path ? config.knots_path->string() : "reference") << '\n'
        << "spline_bc=" << to_string(config.spline_bc) << '\n'
        << "fig5_series=" << (config.running_best ? "running_best" : "population_best") << '\n'
        << "aggregation=pointwise mean across runs per generation\n"
        << "qiga_state=after update; generation 0 is the initial superposition\n";
    out << "schemata=";
    for (std::size_t i = 0; i < config.schemata.size(); ++i) {
      out << (i ? "," : "") << config.schemata[i];
    }
    out << '\n';
    if (config.runs_sga()) {
      out << "sga.population_size=" << config.sga.population_size << '\n'
          << "sga.chromosome_length=" << config.sga.chromosome_length << '\n'
          << "sga.crossover_prob=" << config.sga.crossover_prob << '\n'
          << "sga.mutation_prob=" << config.sga.mutation_prob << '\n'
          << "sga.max_generations=" << config.sga.max_generations << '\n';
    }
    if (config.runs_qiga()) {
      out << "qiga.population_size=" << config.qiga.population_size << '\n'
          << "qiga.chromosome_length=" << config.qiga.chromosome_length << '\n'
          << "qiga.max_generations=" << config.qiga.max_generations << '\n'
          << "qiga.lookup_table="
          << (config.lookup_table_path ? config.lookup_table_path->string() : "standard") << '\n';
    }
  });
  return written;
}

}  // namespace qigalab
