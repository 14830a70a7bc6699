// Command-line front end. Talks to the library only through rbma.h.
//
// Exit codes: 0 success/feasible, 1 usage error, 2 data error,
// 3 solver error or infeasible assignment.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbma/rbma.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

struct InstanceDeleter {
  void operator()(rbma_instance* p) const { rbma_instance_free(p); }
};
struct SolutionDeleter {
  void operator()(rbma_solution* p) const { rbma_solution_free(p); }
};
struct ParamsDeleter {
  void operator()(rbma_params* p) const { rbma_params_free(p); }
};
using InstancePtr = std::unique_ptr<rbma_instance, InstanceDeleter>;
using SolutionPtr = std::unique_ptr<rbma_solution, SolutionDeleter>;
using ParamsPtr = std::unique_ptr<rbma_params, ParamsDeleter>;

int exit_code_for(rbma_status s) {
  switch (s) {
    case RBMA_OK: return kExitOk;
    case RBMA_ERR_INVALID_ARGUMENT: return kExitUsage;
    case RBMA_ERR_SHAPE:
    case RBMA_ERR_IO:
    case RBMA_ERR_PARSE:
    case RBMA_ERR_VERSION:
    case RBMA_ERR_DIMENSION: return kExitData;
    default: return kExitSolver;
  }
}

// Thrown to unwind out of a subcommand with a status already reported.
struct Failure {
  int code;
};

void check(rbma_status s, const std::string& context) {
  if (s == RBMA_OK) return;
  std::cerr << "error: " << context << ": " << rbma_status_name(s) << ": " << rbma_last_error()
            << '\n';
  throw Failure{exit_code_for(s)};
}

InstancePtr load_instance(const std::string& path) {
  rbma_instance* raw = nullptr;
  check(rbma_instance_from_history_file(path.c_str(), &raw), "reading history '" + path + "'");
  return InstancePtr(raw);
}

SolutionPtr solve(const rbma_instance* inst, rbma_method method, const rbma_config& cfg) {
  rbma_solution* raw = nullptr;
  check(rbma_solve(inst, method, &cfg, &raw), std::string("solving with ") + rbma_method_name(method));
  return SolutionPtr(raw);
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

struct SolverFlags {
  rbma_config cfg{};
  int hidden = 0;

  SolverFlags() { rbma_config_init(&cfg); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    cmd->add_option("--quantile", cfg.quantile, "Threshold quantile level in (0,1)")
        ->capture_default_str();
    cmd->add_option("--hidden", hidden, "Hidden units (0 = ceil(columns/2))")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha", cfg.alpha, "Connection/visible-bias learning rate")
        ->capture_default_str();
    cmd->add_option("--beta", cfg.beta, "Hidden-bias learning rate")->capture_default_str();
    cmd->add_option("--eta", cfg.eta, "Ratio penalty coefficient")->capture_default_str();
    cmd->add_option("--cd-k", cfg.cd_k, "Gibbs steps per CD estimate")->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "Epochs per outer iteration")->capture_default_str();
    cmd->add_option("--batch", cfg.batch, "Mini-batch size")->capture_default_str();
    cmd->add_option("--max-iters", cfg.max_outer_iters, "Outer iteration cap")
        ->capture_default_str();
  }

  const rbma_config& finish() {
    cfg.hidden_units = static_cast<uint32_t>(hidden);
    return cfg;
  }
};

int cmd_build(const std::string& history, const std::string& out) {
  auto inst = load_instance(history);
  check(rbma_instance_write_matrix(inst.get(), out.c_str()), "writing '" + out + "'");
  std::cout << "rows=" << rbma_instance_rows(inst.get()) << " cols=" << rbma_instance_cols(inst.get())
            << '\n';
  return kExitOk;
}

int cmd_solve(const std::string& history, const std::string& method_name, const std::string& out,
              const std::string& trace, const std::string& save_params, SolverFlags& flags) {
  rbma_method method;
  check(rbma_method_parse(method_name.c_str(), &method), "--method");
  const rbma_config& cfg = flags.finish();
  auto inst = load_instance(history);
  auto sol = solve(inst.get(), method, cfg);

  std::cout << "method=" << rbma_method_name(method) << " seed=" << cfg.seed
            << " rows=" << rbma_solution_rows(sol.get())
            << " objective=" << fmt_double(rbma_solution_objective(sol.get()))
            << " row_feasible=" << rbma_solution_row_feasible(sol.get())
            << " iterations=" << rbma_solution_iterations(sol.get())
            << " fallback_rows=" << rbma_solution_fallback_rows(sol.get()) << '\n';

  check(rbma_solution_write_assignment(sol.get(), inst.get(), out.c_str()),
        "writing assignment '" + out + "'");
  if (!trace.empty()) {
    check(rbma_solution_write_trace(sol.get(), trace.c_str()), "writing trace '" + trace + "'");
  }
  if (!save_params.empty()) {
    if (rbma_solution_has_params(sol.get())) {
      rbma_params* raw = nullptr;
      check(rbma_solution_params(sol.get(), &raw), "extracting parameters");
      ParamsPtr params(raw);
      check(rbma_params_save(params.get(), save_params.c_str()),
            "writing parameters '" + save_params + "'");
    } else {
      std::cerr << "note: no RBM was trained (input already row-feasible or non-rbmaa method); "
                   "parameters not written\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const std::string& history, const std::vector<std::string>& methods,
                const std::string& out, SolverFlags& flags) {
  std::vector<rbma_method> parsed;
  for (const auto& name : methods) {
    rbma_method m;
    check(rbma_method_parse(name.c_str(), &m), "--methods");
    parsed.push_back(m);
  }
  const rbma_config& cfg = flags.finish();
  auto inst = load_instance(history);
  auto greedy = solve(inst.get(), RBMA_METHOD_GREEDY, cfg);

  std::ostringstream csv;
  csv << "method,feasible,total_weight,agreement_with_greedy,runtime_ms,iterations,seed\n";
  for (rbma_method m : parsed) {
    auto sol = solve(inst.get(), m, cfg);
    double agree = 0.0;
    check(rbma_solution_agreement(sol.get(), greedy.get(), &agree), "agreement");
    csv << rbma_method_name(m) << ',' << (rbma_solution_row_feasible(sol.get()) ? "true" : "false")
        << ',' << fmt_double(rbma_solution_objective(sol.get())) << ',' << fmt_double(agree) << ','
        << fmt_double(rbma_solution_runtime_ms(sol.get())) << ','
        << rbma_solution_iterations(sol.get()) << ',' << cfg.seed << '\n';
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f || !(f << csv.str())) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kExitData;
  }
  std::cout << "seed=" << cfg.seed << " methods=" << parsed.size() << '\n';
  return kExitOk;
}

int cmd_gen(std::size_t rows, std::size_t cols, std::size_t per_row, double concentration,
            std::uint64_t seed, const std::string& out) {
  check(rbma_generate_synthetic(rows, cols, per_row, concentration, seed, out.c_str()),
        "generating synthetic history");
  std::cout << "seed=" << seed << " records=" << rows * per_row << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& assignment, const std::string& history, const std::string& mode) {
  auto inst = load_instance(history);
  int feasible = 0;
  char detail[512];
  check(rbma_validate_assignment_file(inst.get(), assignment.c_str(),
                                      mode == "perfect" ? RBMA_MODE_PERFECT : RBMA_MODE_ROW_ONLY,
                                      &feasible, detail, sizeof detail),
        "validating '" + assignment + "'");
  std::cout << (feasible ? "feasible" : "infeasible") << " (" << mode << "): " << detail << '\n';
  return feasible ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RBM-based many-to-one assignment toolkit"};
  app.require_subcommand(1);

  std::string history, out, method = "rbmaa", trace, save_params, assignment, mode = "row";
  std::vector<std::string> methods;

  auto* build = app.add_subcommand("build", "Count history records into a weight matrix");
  build->add_option("--history", history, "History CSV")->required();
  build->add_option("--out", out, "Output matrix CSV")->required();

  SolverFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an assignment instance");
  solve_cmd->add_option("--history", history, "History CSV")->required();
  solve_cmd->add_option("--method", method, "rbmaa | hungarian | greedy")
      ->check(CLI::IsMember({"rbmaa", "hungarian", "greedy", "brute_force"}))
      ->capture_default_str();
  solve_cmd->add_option("--out", out, "Output assignment CSV")->required();
  solve_cmd->add_option("--trace", trace, "Trace CSV (iter,rows_resolved,threshold)");
  solve_cmd->add_option("--save-params", save_params, "Write trained RBM parameters");
  solve_flags.attach(solve_cmd);

  SolverFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Run several methods and tabulate them");
  compare->add_option("--history", history, "History CSV")->required();
  compare->add_option("--methods", methods, "Comma-separated methods")
      ->delimiter(',')
      ->required();
  compare->add_option("--out", out, "Output report CSV")->required();
  compare_flags.attach(compare);

  std::size_t rows = 0, cols = 0, per_row = 0;
  double concentration = 1.0;
  std::uint64_t gen_seed = 42;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic history CSV");
  gen->add_option("--rows", rows, "Left elements")->required();
  gen->add_option("--cols", cols, "Right elements")->required();
  gen->add_option("--per-row", per_row, "Records per left element")->required();
  gen->add_option("--concentration", concentration, "Probability of the home column in (0,1]")
      ->required();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--out", out, "Output history CSV")->required();

  auto* validate = app.add_subcommand("validate", "Check an assignment CSV for feasibility");
  validate->add_option("--assignment", assignment, "Assignment CSV")->required();
  validate->add_option("--history", history, "History CSV defining the labels")->required();
  validate->add_option("--mode", mode, "row | perfect")
      ->check(CLI::IsMember({"row", "perfect"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(history, out);
    if (*solve_cmd) return cmd_solve(history, method, out, trace, save_params, solve_flags);
    if (*compare) return cmd_compare(history, methods, out, compare_flags);
    if (*gen) return cmd_gen(rows, cols, per_row, concentration, gen_seed, out);
    if (*validate) return cmd_validate(assignment, history, mode);
  } catch (const Failure& f) {
    return f.code;
  }
  std::cerr << app.help();
  return kExitUsage;
}
