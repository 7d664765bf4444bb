#include "ocs/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ocs/baselines.hpp"
#include "ocs/bench.hpp"
#include "ocs/instance_io.hpp"
#include "ocs/reconfig.hpp"
#include "ocs/workload.hpp"

namespace ocs::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("error writing '" + path + "'");
}

std::vector<Count> parse_list(const std::string& text, const std::string& what) {
  std::vector<Count> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    Count v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument(what + ": '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  return out;
}

// Maps the library's error types onto the documented exit codes.
int report_error(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << '\n';
  return code;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    return report_error(err, kIoError, e.what());
  } catch (const ParseError& e) {
    return report_error(err, kParseError, e.what());
  } catch (const InvalidInstance& e) {
    return report_error(err, kInvalidInstance, e.what());
  } catch (const UnbalancedSpec& e) {
    return report_error(err, kInvalidInstance, e.what());
  } catch (const NotProportional& e) {
    return report_error(err, kNotProportional, e.what());
  } catch (const InfeasibleDecomposition& e) {
    return report_error(err, kInfeasibleDecomposition, e.what());
  } catch (const InfeasibleInstance& e) {
    return report_error(err, kInfeasibleDecomposition, e.what());
  } catch (const BudgetExceeded& e) {
    return report_error(err, kBudgetExceeded, e.what());
  } catch (const std::invalid_argument& e) {
    return report_error(err, kUsage, e.what());
  } catch (const std::exception& e) {
    return report_error(err, kInternal, e.what());
  }
}

}  // namespace

int cmd_validate(const std::string& instance_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = parse_instance(read_file(instance_path));
    const auto problems = validate_instance(inst);
    if (!problems.empty()) {
      for (const auto& p : problems) err << p << '\n';
      return report_error(err, kInvalidInstance, problems.front());
    }
    out << "VALID\n";
    return static_cast<int>(kOk);
  });
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = parse_instance(read_file(args.instance_path));
    const McfBackend backend = parse_backend(args.backend);
    std::ofstream dump;
    if (!args.dump_arcs_path.empty()) {
      dump.open(args.dump_arcs_path, std::ios::trunc);
      if (!dump) throw IoError("cannot open '" + args.dump_arcs_path + "' for writing");
    }

    SolveResult result;
    if (args.algo == "bimcf") {
      SolveOptions opts;
      opts.strict_proportional = args.strict;
      opts.backend = backend;
      opts.arc_dump = dump.is_open() ? &dump : nullptr;
      result = solve(inst, opts);
    } else if (args.algo == "greedy") {
      GreedyOptions opts;
      if (!args.order.empty()) {
        for (const Count k : parse_list(args.order, "--order")) opts.order.push_back(static_cast<int>(k));
      }
      opts.backend = backend;
      result = greedy_solve(inst, opts);
    } else if (args.algo == "oracle") {
      const auto start = std::chrono::steady_clock::now();
      auto oracle = oracle_min_rewires(inst, OracleOptions{args.budget});
      const auto stop = std::chrono::steady_clock::now();
      result.matching = std::move(oracle.best);
      result.rewires = oracle.min_rewires;
      result.solver_millis = std::chrono::duration<double, std::milli>(stop - start).count();
      result.algo = "oracle";
    } else {
      throw std::invalid_argument("unknown algo '" + args.algo + "' (expected bimcf|greedy|oracle)");
    }

    const auto rep = is_feasible(result.matching, inst.phys, inst.target);
    if (!rep.ok()) {
      throw InternalInvariantError(result.algo + " produced an infeasible matching: " +
                                   rep.first()->describe());
    }
    const std::string json = dump_result(result, true);
    if (args.out_path.empty()) {
      out << json << '\n';
    } else {
      write_file(args.out_path, json + "\n");
    }
    return static_cast<int>(kOk);
  });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Count> r = args.r.empty() ? std::vector<Count>(args.n, 1) : parse_list(args.r, "--r");
    std::vector<Count> a_prime =
        args.a_prime.empty() ? std::vector<Count>(args.m, 1) : parse_list(args.a_prime, "--a-prime");
    std::vector<Count> b_prime =
        args.b_prime.empty() ? std::vector<Count>(args.m, 1) : parse_list(args.b_prime, "--b-prime");
    if (r.size() != args.n || a_prime.size() != args.m || b_prime.size() != args.m) {
      throw UnbalancedSpec("--r needs n entries, --a-prime and --b-prime need m entries");
    }
    ChurnConfig cfg{ChurnFraction::parse(args.churn), args.seed};
    const GeneratedInstance gen = gen_instance(r, a_prime, b_prime, cfg);
    const std::string instance_json = dump_instance(gen.instance) + "\n";
    const std::string meta_json = dump_metadata(gen) + "\n";
    if (args.out_path.empty()) {
      out << instance_json;
    } else {
      write_file(args.out_path, instance_json);
    }
    std::string meta_path = args.meta_path;
    if (meta_path.empty() && !args.out_path.empty()) {
      meta_path = args.out_path;
      if (meta_path.size() > 5 && meta_path.ends_with(".json")) meta_path.resize(meta_path.size() - 5);
      meta_path += ".meta.json";
    }
    if (!meta_path.empty()) write_file(meta_path, meta_json);
    return static_cast<int>(kOk);
  });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    BenchConfig cfg = parse_bench_config(read_file(args.config_path));
    cfg.jobs = args.jobs;
    std::ofstream csv_file;
    std::ofstream log_file;
    if (!args.out_path.empty()) {
      csv_file.open(args.out_path, std::ios::trunc);
      if (!csv_file) throw IoError("cannot open '" + args.out_path + "' for writing");
    }
    if (!args.error_log_path.empty()) {
      log_file.open(args.error_log_path, std::ios::trunc);
      if (!log_file) throw IoError("cannot open '" + args.error_log_path + "' for writing");
    }
    std::ostream& csv = csv_file.is_open() ? csv_file : out;
    std::ostream& log = log_file.is_open() ? log_file : err;
    const BenchReport report = run_bench(cfg, csv, log);
    if (report.feasibility_failures > 0 || report.order_violations > 0) {
      throw InternalInvariantError("benchmark verifier rejected " +
                                   std::to_string(report.feasibility_failures) + " results and found " +
                                   std::to_string(report.order_violations) + " ordering violations");
    }
    if (report.errors > 0) {
      return report_error(err, kInfeasibleDecomposition,
                          std::to_string(report.errors) + " runs failed; see the error log");
    }
    return static_cast<int>(kOk);
  });
}

}  // namespace ocs::cli
