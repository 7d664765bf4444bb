#include "ocs/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ocs/baselines.hpp"
#include "ocs/instance_io.hpp"
#include "ocs/reconfig.hpp"

namespace ocs {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<Count> read_vector(const json& entry, const char* key, std::size_t len) {
  if (!entry.contains(key)) return std::vector<Count>(len, 1);
  const json& v = entry[key];
  if (v.is_number_integer()) return std::vector<Count>(len, v.get<Count>());
  if (!v.is_array() || v.size() != len) {
    throw ParseError(std::string("grid field '") + key + "' must be an integer or an array of " +
                     std::to_string(len) + " integers");
  }
  std::vector<Count> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ParseError(std::string("grid field '") + key + "' must hold integers");
    out.push_back(x.get<Count>());
  }
  return out;
}

std::size_t read_size(const json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_number_integer() || entry[key].get<Count>() < 1) {
    throw ParseError(std::string("grid entry needs a positive integer '") + key + "'");
  }
  return entry[key].get<std::size_t>();
}

}  // namespace

BenchConfig parse_bench_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("bench config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "grid" && key != "seeds" && key != "algos" && key != "oracle_budget" &&
        key != "backend") {
      throw ParseError("unknown config field '" + key + "'");
    }
  }
  if (!doc.contains("grid") || !doc["grid"].is_array()) throw ParseError("config needs a 'grid' array");
  if (!doc.contains("seeds") || !doc["seeds"].is_array()) throw ParseError("config needs a 'seeds' array");
  if (!doc.contains("algos") || !doc["algos"].is_array()) throw ParseError("config needs an 'algos' array");

  BenchConfig cfg;
  for (const auto& entry : doc["grid"]) {
    if (!entry.is_object()) throw ParseError("grid entries must be objects");
    GridPoint p;
    p.m = read_size(entry, "m");
    p.n = read_size(entry, "n");
    p.r = read_vector(entry, "r", p.n);
    p.a_prime = read_vector(entry, "a_prime", p.m);
    p.b_prime = read_vector(entry, "b_prime", p.m);
    if (!entry.contains("churn") || !entry["churn"].is_number()) {
      throw ParseError("grid entry needs a numeric 'churn'");
    }
    try {
      p.churn = ChurnFraction::from_double(entry["churn"].get<double>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    cfg.grid.push_back(std::move(p));
  }
  for (const auto& s : doc["seeds"]) {
    if (!s.is_number_unsigned()) throw ParseError("seeds must be nonnegative integers");
    cfg.seeds.push_back(s.get<std::uint64_t>());
  }
  for (const auto& a : doc["algos"]) {
    if (!a.is_string()) throw ParseError("algos must be strings");
    const auto name = a.get<std::string>();
    if (name != "bimcf" && name != "greedy" && name != "oracle") {
      throw ParseError("unknown algo '" + name + "'");
    }
    cfg.algos.push_back(name);
  }
  if (doc.contains("oracle_budget")) {
    if (!doc["oracle_budget"].is_number_unsigned()) throw ParseError("oracle_budget must be a nonnegative integer");
    cfg.oracle_budget = doc["oracle_budget"].get<std::uint64_t>();
  }
  if (doc.contains("backend")) {
    try {
      cfg.backend = parse_backend(doc["backend"].get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
  }
  return cfg;
}

std::string BenchRecord::csv_row() const {
  std::ostringstream os;
  os << instance_id << ',' << algo << ',' << m << ',' << n << ',' << total_links << ','
     << rewires << ',' << fixed(rewire_ratio, 6) << ',' << fixed(solve_ms, 3) << ','
     << mcf_invocations << ',' << (feasible ? "true" : "false");
  return os.str();
}

namespace {

struct Job {
  std::size_t grid_index;
  std::uint64_t seed;
};

struct JobOutput {
  std::vector<BenchRecord> records;
  std::vector<std::string> log;
  std::size_t errors = 0;
  std::size_t feasibility_failures = 0;
  std::size_t order_violations = 0;
  std::size_t skipped = 0;
};

std::string instance_id(std::size_t g, const GridPoint& p, std::uint64_t seed) {
  return "g" + std::to_string(g) + "-m" + std::to_string(p.m) + "-n" + std::to_string(p.n) +
         "-churn" + json(p.churn.to_double()).dump() + "-seed" + std::to_string(seed);
}

JobOutput run_job(const BenchConfig& cfg, const Job& job) {
  JobOutput out;
  const GridPoint& p = cfg.grid[job.grid_index];
  const std::string id = instance_id(job.grid_index, p, job.seed);
  GeneratedInstance gen;
  try {
    gen = gen_instance(p.r, p.a_prime, p.b_prime, ChurnConfig{p.churn, job.seed});
  } catch (const std::exception& e) {
    out.log.push_back(id + ": generation failed: " + e.what());
    ++out.errors;
    return out;
  }
  const Instance& inst = gen.instance;
  const Count total_links = inst.target.c.total();

  std::map<std::string, Count> rewires;
  for (const auto& algo : cfg.algos) {
    SolveResult result;
    try {
      if (algo == "bimcf") {
        SolveOptions opts;
        opts.backend = cfg.backend;
        result = solve(inst, opts);
      } else if (algo == "greedy") {
        result = greedy_solve(inst, GreedyOptions{{}, cfg.backend});
      } else {
        if (total_links > kOracleMaxLinks) {
          out.log.push_back(id + ": oracle skipped, total_links=" + std::to_string(total_links) +
                            " exceeds " + std::to_string(kOracleMaxLinks));
          ++out.skipped;
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        auto oracle = oracle_min_rewires(inst, OracleOptions{cfg.oracle_budget});
        const auto stop = std::chrono::steady_clock::now();
        result.matching = std::move(oracle.best);
        result.rewires = oracle.min_rewires;
        result.solver_millis = std::chrono::duration<double, std::milli>(stop - start).count();
        result.algo = "oracle";
      }
    } catch (const std::exception& e) {
      out.log.push_back(id + ": " + algo + " failed: " + e.what());
      ++out.errors;
      continue;
    }

    // Independent re-check before a row may be emitted.
    const auto rep = is_feasible(result.matching, inst.phys, inst.target);
    if (!rep.ok() || result.rewires != rewire_count(inst.old_matching, result.matching)) {
      out.log.push_back(id + ": " + algo + " result rejected by verifier" +
                        (rep.ok() ? std::string(": rewire count mismatch")
                                  : ": " + rep.first()->describe()));
      ++out.feasibility_failures;
      continue;
    }
    rewires[algo] = result.rewires;
    BenchRecord rec;
    rec.instance_id = id;
    rec.algo = algo;
    rec.m = p.m;
    rec.n = p.n;
    rec.total_links = total_links;
    rec.rewires = result.rewires;
    rec.rewire_ratio =
        total_links == 0 ? 0.0 : static_cast<double>(result.rewires) / static_cast<double>(total_links);
    rec.solve_ms = result.solver_millis;
    rec.mcf_invocations = result.mcf_invocations;
    rec.feasible = true;
    out.records.push_back(std::move(rec));
  }

  const bool has_oracle = rewires.contains("oracle");
  for (const auto& [algo, value] : rewires) {
    if (has_oracle && value < rewires["oracle"]) {
      out.log.push_back(id + ": " + algo + " beats the oracle (" + std::to_string(value) + " < " +
                        std::to_string(rewires["oracle"]) + ")");
      ++out.order_violations;
    }
  }
  if (p.n == 2 && rewires.contains("bimcf") && rewires.contains("greedy") &&
      rewires["bimcf"] > rewires["greedy"]) {
    out.log.push_back(id + ": bimcf exceeds greedy at n=2 (" + std::to_string(rewires["bimcf"]) +
                      " > " + std::to_string(rewires["greedy"]) + ")");
    ++out.order_violations;
  }
  return out;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config, std::ostream& csv, std::ostream& errors) {
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    for (const auto seed : config.seeds) jobs.push_back({g, seed});
  }
  std::vector<JobOutput> outputs(jobs.size());
  const auto workers = static_cast<std::size_t>(std::max(1, config.jobs));
  if (workers == 1) {
    for (std::size_t t = 0; t < jobs.size(); ++t) outputs[t] = run_job(config, jobs[t]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, jobs.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < jobs.size(); t = next++) {
          outputs[t] = run_job(config, jobs[t]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Rows are emitted in job order regardless of the worker count.
  BenchReport report;
  csv << kCsvHeader << '\n';
  for (auto& out : outputs) {
    for (auto& rec : out.records) {
      csv << rec.csv_row() << '\n';
      report.records.push_back(std::move(rec));
    }
    for (const auto& line : out.log) errors << line << '\n';
    report.errors += out.errors;
    report.feasibility_failures += out.feasibility_failures;
    report.order_violations += out.order_violations;
    report.skipped += out.skipped;
  }

  csv << "# workload: synthetic churn instances (seeded generator " << kRngAlgorithm
      << "), not datacenter traces\n";
  csv << "# rewire_ratio = rewires / total_links; geomean floors solve_ms at 0.001\n";
  for (const auto& algo : config.algos) {
    BenchSummary s{algo};
    double log_sum = 0.0;
    double ratio_sum = 0.0;
    for (const auto& rec : report.records) {
      if (rec.algo != algo) continue;
      ++s.rows;
      log_sum += std::log(std::max(rec.solve_ms, 1e-3));
      ratio_sum += rec.rewire_ratio;
    }
    if (s.rows > 0) {
      s.geomean_solve_ms = std::exp(log_sum / static_cast<double>(s.rows));
      s.mean_rewire_ratio = ratio_sum / static_cast<double>(s.rows);
    }
    csv << "# summary algo=" << algo << " rows=" << s.rows
        << " geomean_solve_ms=" << fixed(s.geomean_solve_ms, 3)
        << " mean_rewire_ratio=" << fixed(s.mean_rewire_ratio, 6) << '\n';
    report.summaries.push_back(std::move(s));
  }
  csv << "# errors=" << report.errors << " rejected=" << report.feasibility_failures
      << " order_violations=" << report.order_violations << " skipped=" << report.skipped << '\n';
  return report;
}

}  // namespace ocs
