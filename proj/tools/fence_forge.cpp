// fence-forge: check concurrent DSL programs under weak memory, synthesize
// fence placements, generate benchmark families, and run experiment grids.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ff/bench.hpp"
#include "ff/checker.hpp"
#include "ff/hitset.hpp"
#include "ff/memmodel.hpp"
#include "ff/parser.hpp"
#include "ff/repair.hpp"
#include "ff/unroll.hpp"

namespace {

constexpr int kExitSafe = 0;
constexpr int kExitUnsafe = 1;
constexpr int kExitUnrepairable = 2;
constexpr int kExitUsage = 3;
constexpr int kExitResource = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ff::Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Constraint file: a JSON array of clauses; each clause is an array of
// [sid1, sid2] pairs, at least one of which must stay ordered.
ff::OrderingConstraint load_constraint(const std::string& path, const ff::Program& p) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  if (!doc.is_array()) throw ff::Error("constraint file: expected a JSON array");
  ff::OrderingConstraint phi;
  for (const auto& clause : doc) {
    if (!clause.is_array() || clause.empty())
      throw ff::Error("constraint file: each clause must be a non-empty array");
    ff::PairSet pairs;
    for (const auto& pair : clause) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string())
        throw ff::Error("constraint file: each pair must be [sid1, sid2]");
      pairs.push_back({p.parse_sid(pair[0].get<std::string>()),
                       p.parse_sid(pair[1].get<std::string>())});
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    phi.clauses.push_back(std::move(pairs));
  }
  return phi;
}

ff::IncreasePolicy parse_increase(const std::string& text) {
  ff::IncreasePolicy policy;
  if (text == "double") return policy;
  if (text == "adaptive") {
    policy.kind = ff::IncreasePolicy::Kind::Adaptive;
    return policy;
  }
  if (text.rfind("add:", 0) == 0) {
    policy.kind = ff::IncreasePolicy::Kind::Additive;
    policy.step = static_cast<std::uint32_t>(std::stoul(text.substr(4)));
    if (policy.step == 0) throw ff::Error("additive step must be positive");
    return policy;
  }
  throw ff::Error("unknown increase strategy '" + text + "' (double, add:<d>, adaptive)");
}

int run_check(const std::string& file, const std::string& arch_text, int unwind,
              std::optional<std::uint32_t> k, const std::string& constraint_path,
              bool dump_trace, std::uint64_t max_nodes) {
  ff::Program p = ff::parse(read_file(file));
  ff::UnrolledProgram u = ff::unroll(p, unwind);
  ff::Arch arch = ff::parse_arch(arch_text);
  ff::OrderingConstraint phi;
  if (!constraint_path.empty()) phi = load_constraint(constraint_path, p);
  ff::CheckLimits limits;
  limits.node_budget = max_nodes;
  ff::CheckResult res = ff::check(u, arch, phi, k, ff::EvidenceMode::Raw, limits);

  // With --dump-trace, stdout carries only the event lines.
  std::ostream& info = dump_trace ? std::cerr : std::cout;
  switch (res.kind) {
    case ff::CheckResult::Kind::Safe:
      info << "SAFE (bound-limited: " << (res.evidence.bound_limited ? "yes" : "no")
           << ")\n";
      return kExitSafe;
    case ff::CheckResult::Kind::Unsafe:
    case ff::CheckResult::Kind::Unrepairable: {
      bool plain = res.kind == ff::CheckResult::Kind::Unsafe;
      info << (plain ? "UNSAFE" : "UNSAFE (unrepairable: no reordering involved)")
           << ": assertion '" << res.trace.violated << "' violated\n";
      info << "reordered pairs (" << res.trace.reordered.size() << "):";
      for (const ff::StatementPair& pr : res.trace.reordered)
        info << ' ' << p.pair_string(pr);
      info << "\n";
      if (dump_trace) std::cout << ff::format_trace(res.trace, u);
      return plain ? kExitUnsafe : kExitUnrepairable;
    }
  }
  return kExitUsage;
}

int run_repair(const std::string& file, const std::string& arch_text,
               const std::string& algo_text, std::uint32_t k1, const std::string& k2_text,
               const std::string& mhs_text, int unwind, const std::string& stats_path,
               const std::string& increase_text, int max_queries,
               std::uint64_t max_nodes) {
  ff::Program p = ff::parse(read_file(file));
  ff::UnrolledProgram u = ff::unroll(p, unwind);

  ff::RepairConfig cfg;
  cfg.algo = ff::parse_algo(algo_text);
  cfg.arch = ff::parse_arch(arch_text);
  if (cfg.arch == ff::Arch::SC)
    throw ff::Error("repair targets a weak architecture; use tso or pso");
  cfg.k1 = k1;
  if (k2_text != "auto") cfg.k2 = static_cast<std::uint32_t>(std::stoul(k2_text));
  if (mhs_text == "minimum")
    cfg.mhs = ff::MhsMode::Minimum;
  else if (mhs_text == "minimal")
    cfg.mhs = ff::MhsMode::Minimal;
  else if (!mhs_text.empty())
    throw ff::Error("--mhs expects minimum or minimal");
  cfg.increase = parse_increase(increase_text);
  cfg.max_queries = max_queries;
  cfg.limits.node_budget = max_nodes;

  ff::RepairResult res = ff::repair(u, cfg);

  std::cout << "status: " << ff::to_string(res.status) << "\n";
  std::cout << "solution (" << res.solution.size() << " pair"
            << (res.solution.size() == 1 ? "" : "s") << "):";
  for (const ff::StatementPair& pr : res.solution) std::cout << ' ' << p.pair_string(pr);
  std::cout << "\n";
  if (!res.solution.empty()) {
    std::cout << "fences:";
    for (const ff::StatementRef& ref : ff::fence_locations(res.solution))
      std::cout << " after " << p.sid_string(ref);
    std::cout << "\n";
  }
  std::cout << "queries: " << res.stats.queries
            << "  counterexamples: " << res.stats.counterexamples
            << "  max-cex-reorderings: " << res.stats.max_cex_reorderings
            << "  early-terminated: " << (res.stats.early_terminated ? "yes" : "no")
            << "\n";
  if (!res.stats.queries_by_bound.empty()) {
    std::cout << "queries by bound:";
    for (auto [k, q] : res.stats.queries_by_bound) std::cout << " k=" << k << ":" << q;
    std::cout << "\n";
  }

  if (!stats_path.empty()) {
    ff::RunRecord r;
    auto stem = [](const std::string& path) {
      auto slash = path.find_last_of('/');
      std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
      auto dot = name.find_last_of('.');
      return dot == std::string::npos ? name : name.substr(0, dot);
    };
    r.benchmark = stem(file);
    r.algo = cfg.algo;
    r.arch = cfg.arch;
    r.k1 = cfg.k1;
    r.n = 0;
    r.queries = res.stats.queries;
    r.counterexamples = res.stats.counterexamples;
    r.solution_size = static_cast<int>(res.solution.size());
    std::string joined;
    for (const ff::StatementPair& pr : res.solution) {
      if (!joined.empty()) joined += ";";
      joined += p.pair_string(pr);
    }
    r.solution_pairs = joined;
    r.time_ms = res.stats.wall_ms;
    r.early_terminated = res.stats.early_terminated;
    r.status = ff::to_string(res.status);
    std::ofstream out(stats_path, std::ios::binary);
    if (!out) throw ff::Error("cannot write '" + stats_path + "'");
    out << ff::records_to_csv({r});
  }
  return res.status == ff::RepairStatus::Unrepairable ? kExitUnrepairable : kExitSafe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reorder-bounded model checking and fence insertion for TSO/PSO"};
  app.require_subcommand(1);

  // check
  auto* check_cmd = app.add_subcommand("check", "explore a program under a memory model");
  std::string check_file, check_arch, check_constraint;
  int check_unwind = 2;
  std::int64_t check_k = -1;
  bool dump_trace = false;
  std::uint64_t max_nodes = ff::CheckLimits{}.node_budget;
  check_cmd->add_option("file", check_file, "DSL program")->required();
  check_cmd->add_option("--arch", check_arch, "tso|pso|sc")->required();
  check_cmd->add_option("--unwind", check_unwind, "loop unwinding bound (default 2)");
  check_cmd->add_option("--k", check_k, "reorder bound (default unbounded)");
  check_cmd->add_option("--constraint", check_constraint, "ordering constraint JSON");
  check_cmd->add_flag("--dump-trace", dump_trace,
                      "print the counterexample events to stdout");
  check_cmd->add_option("--max-nodes", max_nodes, "exploration node budget");

  // repair
  auto* repair_cmd = app.add_subcommand("repair", "synthesize a fence placement");
  std::string rep_file, rep_arch, rep_algo, rep_k2 = "auto", rep_mhs, rep_stats;
  std::string rep_increase = "double";
  std::uint32_t rep_k1 = 1;
  int rep_unwind = 2;
  int rep_max_queries = 10000;
  repair_cmd->add_option("file", rep_file, "DSL program")->required();
  repair_cmd->add_option("--arch", rep_arch, "tso|pso")->required();
  repair_cmd->add_option("--algo", rep_algo, "te|fi|robmc|robmc-et")->required();
  repair_cmd->add_option("--k1", rep_k1, "starting reorder bound (default 1)");
  repair_cmd->add_option("--k2", rep_k2, "bound ceiling, N or auto (default auto)");
  repair_cmd->add_option("--mhs", rep_mhs, "minimum|minimal");
  repair_cmd->add_option("--unwind", rep_unwind, "loop unwinding bound (default 2)");
  repair_cmd->add_option("--stats", rep_stats, "write a CSV record here");
  repair_cmd->add_option("--increase", rep_increase, "double|add:<d>|adaptive");
  repair_cmd->add_option("--max-queries", rep_max_queries, "query cap");
  repair_cmd->add_option("--max-nodes", max_nodes, "exploration node budget");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "emit a benchmark family member");
  std::string gen_core;
  int gen_n = 0;
  gen_cmd->add_option("--core", gen_core, "sb|mp|double|peterson")->required();
  gen_cmd->add_option("--n", gen_n, "interference blocks per thread (default 0)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment grid");
  std::string grid_path, bench_stats;
  int jobs = 1, timeout_s = 60;
  bench_cmd->add_option("--grid", grid_path, "grid description (TOML subset)")->required();
  bench_cmd->add_option("--stats", bench_stats, "CSV output path")->required();
  bench_cmd->add_option("--jobs", jobs, "parallel cells (default 1)");
  bench_cmd->add_option("--timeout", timeout_s, "per-cell seconds (default 60)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (check_cmd->parsed()) {
      std::optional<std::uint32_t> k;
      if (check_k >= 0) k = static_cast<std::uint32_t>(check_k);
      return run_check(check_file, check_arch, check_unwind, k, check_constraint,
                       dump_trace, max_nodes);
    }
    if (repair_cmd->parsed())
      return run_repair(rep_file, rep_arch, rep_algo, rep_k1, rep_k2, rep_mhs,
                        rep_unwind, rep_stats, rep_increase, rep_max_queries, max_nodes);
    if (gen_cmd->parsed()) {
      std::cout << ff::generate({ff::parse_core(gen_core), gen_n, ff::Arch::TSO});
      return kExitSafe;
    }
    if (bench_cmd->parsed()) {
      std::vector<ff::GridCell> grid = ff::load_grid(read_file(grid_path));
      ff::BenchOptions opts;
      opts.jobs = jobs;
      opts.cell_timeout = std::chrono::seconds(timeout_s);
      std::vector<ff::RunRecord> records = ff::run_experiment(grid, opts);
      std::ofstream out(bench_stats, std::ios::binary);
      if (!out) throw ff::Error("cannot write '" + bench_stats + "'");
      out << ff::records_to_csv(records);
      std::cerr << records.size() << " cells -> " << bench_stats << "\n";
      return kExitSafe;
    }
  } catch (const ff::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ff::TimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ff::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ff::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
