#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bppc/benchmark.hpp"
#include "bppc/generator.hpp"
#include "bppc/instance.hpp"
#include "bppc/oracle.hpp"
#include "bppc/search.hpp"
#include "bppc/set_covering.hpp"
#include "bppc/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // infeasible / inconclusive result
constexpr int kExitUsage = 2;    // bad flags or malformed input files

void add_search_options(CLI::App* cmd, bppc::SearchParams& params) {
  cmd->add_option("--n_shak", params.n_shak,
                  "shakes without improvement before giving up a bin count")
      ->capture_default_str();
  cmd->add_option("--n_ls", params.n_ls, "local search rounds per shake")
      ->capture_default_str();
  cmd->add_option("--n_sc", params.n_sc, "set covering every n_sc failed shakes")
      ->capture_default_str();
  cmd->add_option("--s_pool", params.s_pool, "initial column pool limit")
      ->capture_default_str();
  cmd->add_option("--t_limit", params.t_limit,
                  "set covering budget per call, seconds-equivalent")
      ->capture_default_str();
  cmd->add_option("--s_shak", params.s_shak, "items relocated per shake")
      ->capture_default_str();
  cmd->add_option("--omega_c", params.omega_c,
                  "conflict penalty weight (0 = instance capacity)")
      ->capture_default_str();
  cmd->add_option("--omega_w", params.omega_w, "overload penalty weight")
      ->capture_default_str();
  cmd->add_option(
         "--mode", params.mode,
         "simple = descent only, complete = all large neighborhoods")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, bppc::Mode>{
              {"simple", bppc::Mode::simple},
              {"complete", bppc::Mode::complete}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--seed", params.seed, "random seed")->capture_default_str();
  cmd->add_option("--wall_limit", params.wall_limit,
                  "wall clock cap in seconds (0 = off, breaks determinism)")
      ->capture_default_str();
  cmd->add_option("--ffd_order", params.ffd_order,
                  "weight order of the first fit construction")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, bppc::FfdOrder>{
              {"non_increasing", bppc::FfdOrder::non_increasing},
              {"non_decreasing", bppc::FfdOrder::non_decreasing}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--reduce_rule", params.reduce_rule,
                  "which bin the outer loop removes")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, bppc::ReduceRule>{
              {"min_load", bppc::ReduceRule::min_load},
              {"random", bppc::ReduceRule::random}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--assign_max_nodes", params.assign_max_nodes,
                  "assignment matrix size cap (0 = all bins)")
      ->capture_default_str();
  cmd->add_flag("--sc_partition", params.sc_partition,
                "solve set partitioning instead of covering");
}

// Flat key=value file, keys named after the solver parameters; a flag given
// on the command line wins over the file.
void apply_config_file(const CLI::App* cmd, bppc::SearchParams& params,
                       const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string()
                                      : s.substr(first, last - first + 1);
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError(
          "--config", path + ":" + std::to_string(line_no) +
                          ": expected key=value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const CLI::Option* flag = cmd->get_option_no_throw("--" + key);
    if (flag == nullptr)
      throw CLI::ValidationError("--config",
                                 path + ":" + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
    if (flag->count() > 0) continue;
    try {
      if (key == "n_shak")
        params.n_shak = std::stoi(value);
      else if (key == "n_ls")
        params.n_ls = std::stoi(value);
      else if (key == "n_sc")
        params.n_sc = std::stoi(value);
      else if (key == "s_pool")
        params.s_pool = std::stoll(value);
      else if (key == "t_limit")
        params.t_limit = std::stod(value);
      else if (key == "s_shak")
        params.s_shak = std::stoi(value);
      else if (key == "omega_c")
        params.omega_c = std::stoll(value);
      else if (key == "omega_w")
        params.omega_w = std::stoll(value);
      else if (key == "mode")
        params.mode = bppc::parse_mode(value);
      else if (key == "seed")
        params.seed = std::stoull(value);
      else if (key == "wall_limit")
        params.wall_limit = std::stod(value);
      else if (key == "ffd_order")
        params.ffd_order = value == "non_increasing"
                               ? bppc::FfdOrder::non_increasing
                               : value == "non_decreasing"
                                     ? bppc::FfdOrder::non_decreasing
                                     : throw std::invalid_argument(value);
      else if (key == "reduce_rule")
        params.reduce_rule =
            value == "min_load"
                ? bppc::ReduceRule::min_load
                : value == "random" ? bppc::ReduceRule::random
                                    : throw std::invalid_argument(value);
      else if (key == "assign_max_nodes")
        params.assign_max_nodes = std::stoi(value);
      else if (key == "sc_partition")
        params.sc_partition = value == "true" || value == "1";
      else
        throw CLI::ValidationError("--config",
                                   path + ":" + std::to_string(line_no) +
                                       ": '" + key +
                                       "' is not a solver parameter");
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--config", path + ":" +
                                                 std::to_string(line_no) +
                                                 ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw CLI::ValidationError("--config", path + ":" +
                                                 std::to_string(line_no) +
                                                 ": bad value for " + key);
    }
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_generate(const std::string& class_name, const std::string& graph_name,
                 int n, double density, std::uint64_t seed,
                 const std::string& name, std::string output) {
  bppc::GeneratorSpec spec;
  spec.class_kind = bppc::parse_class_kind(class_name);
  spec.graph_kind = bppc::parse_graph_kind(graph_name);
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  spec.name = name;
  const bppc::Instance inst = bppc::generate_instance(spec);
  if (output.empty()) output = inst.name + ".txt";
  write_text(output, bppc::write_instance(inst));
  std::cerr << inst.name << ": n=" << inst.n << " Q=" << inst.capacity
            << " density=" << inst.conflicts.density() << " -> "
            << (output == "-" ? "stdout" : output) << '\n';
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const bppc::SearchParams& params,
              std::string solution_path, const std::string& json_path,
              const std::string& pool_dump) {
  bppc::validate_params(params);
  const bppc::Instance inst = bppc::load_instance(instance_path);
  const bppc::RunResult result = bppc::run_ils(inst, params);
  const bppc::FeasibilityReport report =
      bppc::validate_solution(inst, result.best_partition);
  if (!report.ok) {
    std::cerr << "solver output failed validation:\n" << report.to_string();
    return kExitFailure;
  }
  if (solution_path.empty())
    solution_path =
        std::filesystem::path(instance_path).replace_extension(".sol").string();
  write_text(solution_path, bppc::write_partition_text(result.best_partition));
  write_text(json_path, bppc::run_result_json(result) + "\n");
  std::cerr << inst.name << ": " << result.bins
            << " bins (lower bound " << bppc::lower_bound(inst) << ") in "
            << result.elapsed << "s, solution -> " << solution_path << '\n';
  if (!pool_dump.empty()) {
    // Rebuild the final pool contents for inspection: the solved partition's
    // columns with their (zero) penalties.
    bppc::ColumnPool pool(static_cast<std::size_t>(params.s_pool));
    for (const auto& bin : result.best_partition) pool.add(bin, 0);
    std::ofstream out(pool_dump);
    if (!out) throw std::runtime_error("cannot write " + pool_dump);
    pool.dump(out);
  }
  return kExitOk;
}

int cmd_validate(const std::string& instance_path,
                 const std::string& solution_path) {
  const bppc::Instance inst = bppc::load_instance(instance_path);
  const auto partition = bppc::load_partition(solution_path);
  const bppc::FeasibilityReport report =
      bppc::validate_solution(inst, partition);
  if (report.ok) {
    std::cout << "feasible: " << partition.size() << " bins\n";
    return kExitOk;
  }
  std::cout << report.to_string();
  return kExitFailure;
}

int cmd_bench(std::vector<std::string> instance_paths, const std::string& dir,
              const bppc::SearchParams& params, int repeats, int jobs,
              const std::string& bks_path, const std::string& csv_path,
              bool summary) {
  bppc::validate_params(params);
  if (!dir.empty()) {
    std::vector<std::string> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        found.push_back(entry.path().string());
    std::sort(found.begin(), found.end());
    instance_paths.insert(instance_paths.end(), found.begin(), found.end());
  }
  if (instance_paths.empty())
    throw CLI::ValidationError("bench", "no instance files given");
  std::vector<bppc::Instance> instances;
  instances.reserve(instance_paths.size());
  for (const auto& path : instance_paths)
    instances.push_back(bppc::load_instance(path));

  std::map<std::string, int> bks;
  if (!bks_path.empty()) bks = bppc::load_bks_csv(bks_path);
  const auto rows = bppc::run_benchmark(instances, params, repeats,
                                        bks.empty() ? nullptr : &bks, jobs);
  if (csv_path == "-") {
    bppc::write_benchmark_csv(std::cout, rows);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    bppc::write_benchmark_csv(out, rows);
  }
  if (summary) {
    std::cerr << "\nby class and size:\n";
    bppc::write_group_table(
        std::cerr, bppc::group_rows(rows, bppc::GroupBy::class_and_size));
    std::cerr << "\nby class and density:\n";
    bppc::write_group_table(
        std::cerr, bppc::group_rows(rows, bppc::GroupBy::class_and_density));
  }
  return kExitOk;
}

int cmd_oracle(const std::string& instance_path, std::uint64_t budget) {
  const bppc::Instance inst = bppc::load_instance(instance_path);
  const auto best = bppc::exact_optimum_oracle(inst, budget);
  if (!best) {
    std::cout << "inconclusive: node budget exhausted\n";
    return kExitFailure;
  }
  std::cout << "optimum: " << *best << " bins\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bin packing with conflicts: generator, solver, validator"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "write a random instance");
  std::string gen_class = "uniform";
  std::string gen_graph = "arbitrary";
  int gen_n = 120;
  double gen_density = 0.3;
  std::uint64_t gen_seed = 1;
  std::string gen_name;
  std::string gen_output;
  generate->add_option("--class", gen_class, "triplet, uniform or largeweight")
      ->capture_default_str();
  generate->add_option("--graph", gen_graph, "arbitrary or interval")
      ->capture_default_str();
  generate->add_option("-n,--items", gen_n, "item count")
      ->capture_default_str();
  generate->add_option("-d,--density", gen_density, "conflict density in [0,1]")
      ->capture_default_str();
  generate->add_option("--seed", gen_seed, "random seed")
      ->capture_default_str();
  generate->add_option("--name", gen_name, "instance name (default: derived)");
  generate->add_option("-o,--output", gen_output,
                       "output file (default: <name>.txt, - = stdout)");

  auto* solve = app.add_subcommand("solve", "run the iterated local search");
  std::string solve_instance;
  std::string solve_output;
  std::string solve_json = "-";
  std::string solve_pool;
  std::string solve_config;
  bppc::SearchParams solve_params;
  solve->add_option("instance", solve_instance, "instance file")->required();
  solve->add_option("-o,--output", solve_output,
                    "solution file (default: instance with .sol)");
  solve->add_option("--json", solve_json, "run report file (- = stdout)")
      ->capture_default_str();
  solve->add_option("--dump_pool", solve_pool,
                    "write the final solution's columns to a pool file");
  solve->add_option("--config", solve_config,
                    "flat key=value file with solver parameters");
  add_search_options(solve, solve_params);

  auto* validate = app.add_subcommand("validate", "check a solution file");
  std::string val_instance;
  std::string val_solution;
  validate->add_option("instance", val_instance, "instance file")->required();
  validate->add_option("solution", val_solution, "solution file")->required();

  auto* bench = app.add_subcommand("bench", "solve a batch and tabulate");
  std::vector<std::string> bench_instances;
  std::string bench_dir;
  std::string bench_bks;
  std::string bench_csv = "-";
  int bench_repeats = 1;
  int bench_jobs = 1;
  bool bench_summary = false;
  std::string bench_config;
  bppc::SearchParams bench_params;
  bench->add_option("--config", bench_config,
                    "flat key=value file with solver parameters");
  bench->add_option("instances", bench_instances, "instance files");
  bench->add_option("--dir", bench_dir, "directory of .txt instances");
  bench->add_option("--repeats", bench_repeats,
                    "runs per instance (seeds seed, seed+1, ...)")
      ->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "parallel solver threads")
      ->capture_default_str();
  bench->add_option("--bks", bench_bks, "best known CSV (name,bins) for gaps");
  bench->add_option("--csv", bench_csv, "results CSV file (- = stdout)")
      ->capture_default_str();
  bench->add_flag("--summary", bench_summary,
                  "print grouped means to stderr");
  add_search_options(bench, bench_params);

  auto* oracle = app.add_subcommand("oracle", "exact optimum, small instances");
  std::string oracle_instance;
  std::uint64_t oracle_budget = 50'000'000;
  oracle->add_option("instance", oracle_instance, "instance file")->required();
  oracle->add_option("--budget", oracle_budget, "branch and bound node budget")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(gen_class, gen_graph, gen_n, gen_density, gen_seed,
                          gen_name, gen_output);
    if (solve->parsed()) {
      if (!solve_config.empty())
        apply_config_file(solve, solve_params, solve_config);
      return cmd_solve(solve_instance, solve_params, solve_output, solve_json,
                       solve_pool);
    }
    if (validate->parsed()) return cmd_validate(val_instance, val_solution);
    if (bench->parsed()) {
      if (!bench_config.empty())
        apply_config_file(bench, bench_params, bench_config);
      return cmd_bench(bench_instances, bench_dir, bench_params, bench_repeats,
                       bench_jobs, bench_bks, bench_csv, bench_summary);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_instance, oracle_budget);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const bppc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bppc::GenerateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
