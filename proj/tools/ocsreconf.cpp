// ocsreconf: validate | gen | solve | bench

#include <iostream>

#include "CLI11.hpp"
#include "ocs/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = ocs::cli;
  CLI::App app{"OCS reconfiguration solver toolkit"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", validate_path, "Instance JSON")->required();

  cli::SolveArgs solve_args;
  bool no_strict = false;
  auto* solve = app.add_subcommand("solve", "Compute a new matching");
  solve->add_option("instance", solve_args.instance_path, "Instance JSON")->required();
  solve->add_option("--algo", solve_args.algo, "bimcf | greedy | oracle")
      ->check(CLI::IsMember({"bimcf", "greedy", "oracle"}));
  solve->add_flag("--no-strict", no_strict, "Attempt non-proportional topologies");
  solve->add_option("--order", solve_args.order, "Greedy OCS order, e.g. 1,0");
  solve->add_option("--backend", solve_args.backend, "ssp | cost-scaling")
      ->check(CLI::IsMember({"ssp", "cost-scaling"}));
  solve->add_option("--out", solve_args.out_path, "Result JSON path (default stdout)");
  solve->add_option("--budget", solve_args.budget, "Oracle node budget");
  solve->add_option("--dump-arcs", solve_args.dump_arcs_path,
                    "Write every flow network as `s d cap cost` lines");

  cli::GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  gen->add_option("--m", gen_args.m, "Switch count")->required();
  gen->add_option("--n", gen_args.n, "OCS count")->required();
  gen->add_option("--r", gen_args.r, "Per-OCS multipliers k1,k2,... (default all 1)");
  gen->add_option("--a-prime", gen_args.a_prime, "Per-switch downlink degrees (default all 1)");
  gen->add_option("--b-prime", gen_args.b_prime, "Per-switch uplink degrees (default all 1)");
  gen->add_option("--churn", gen_args.churn, "Fraction of links re-paired, in [0,1]");
  gen->add_option("--seed", gen_args.seed, "Generator seed");
  gen->add_option("--out", gen_args.out_path, "Instance path (default stdout)");
  gen->add_option("--meta", gen_args.meta_path, "Metadata path (default <out>.meta.json)");

  cli::BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a benchmark grid and emit CSV");
  bench->add_option("config", bench_args.config_path, "Bench config JSON")->required();
  bench->add_option("--out", bench_args.out_path, "CSV path (default stdout)");
  bench->add_option("--error-log", bench_args.error_log_path, "Failed-run log (default stderr)");
  bench->add_option("--jobs", bench_args.jobs, "Parallel instances")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  if (*validate) return cli::cmd_validate(validate_path, std::cout, std::cerr);
  if (*solve) {
    solve_args.strict = !no_strict;
    return cli::cmd_solve(solve_args, std::cout, std::cerr);
  }
  if (*gen) return cli::cmd_gen(gen_args, std::cout, std::cerr);
  return cli::cmd_bench(bench_args, std::cout, std::cerr);
}
