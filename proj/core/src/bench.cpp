#include "ff/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <thread>

#include "ff/parser.hpp"

namespace ff {

const char* to_string(Core c) {
  switch (c) {
    case Core::SB: return "sb";
    case Core::MP: return "mp";
    case Core::Double: return "double";
    case Core::Peterson: return "peterson";
  }
  return "?";
}

Core parse_core(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "sb") return Core::SB;
  if (lower == "mp") return Core::MP;
  if (lower == "double") return Core::Double;
  if (lower == "peterson") return Core::Peterson;
  throw Error("unknown core '" + std::string(text) + "'");
}

namespace {

struct CoreText {
  std::vector<std::string> decls;
  std::vector<std::string> body1;  // statements of thread t1, unindented
  std::vector<std::string> body2;
  std::string final_cond;
};

CoreText core_text(Core core) {
  switch (core) {
    case Core::SB:
      return {{"x", "y"},
              {"store x = 1;", "load r1 = y;"},
              {"store y = 1;", "load r2 = x;"},
              "r1 == 1 || r2 == 1"};
    case Core::MP:
      return {{"x", "y"},
              {"store x = 1;", "store y = 1;"},
              {"load r1 = y;", "load r2 = x;"},
              "r1 != 1 || r2 == 1"};
    case Core::Double:
      return {{"x", "y", "w", "z"},
              {"store z = 1;", "load p1 = w;", "store x = 1;", "load r1 = y;"},
              {"store w = 1;", "load p2 = z;", "store y = 1;", "load r2 = x;"},
              "(r1 == 1 || r2 == 1) && p1 + p2 >= 0"};
    case Core::Peterson:
      return {{"flag1", "flag2", "turn", "count"},
              {"store flag1 = 1;", "store turn = 2;", "load f = flag2;",
               "load tn = turn;",
               "while (f == 1 && tn == 2) {", "  load f = flag2;",
               "  load tn = turn;", "}",
               "load c = count;", "c1 = c + 1;", "store count = c1;",
               "store flag1 = 0;"},
              {"store flag2 = 1;", "store turn = 1;", "load f = flag1;",
               "load tn = turn;",
               "while (f == 1 && tn == 1) {", "  load f = flag1;",
               "  load tn = turn;", "}",
               "load c = count;", "c1 = c + 1;", "store count = c1;",
               "store flag2 = 0;"},
              "count == 2"};
  }
  throw Error("unknown core");
}

}  // namespace

std::string generate(const ParamSpec& spec) {
  if (spec.n < 0) throw Error("padding parameter must be non-negative");
  CoreText core = core_text(spec.core);
  std::ostringstream os;
  for (int i = 1; i <= spec.n; ++i)
    os << "shared x" << i << " = 0;\nshared y" << i << " = 0;\n";
  if (spec.n > 0) os << "shared s1acc = 0;\nshared s2acc = 0;\n";
  for (const std::string& g : core.decls) os << "shared " << g << " = 0;\n";

  auto emit_thread = [&](const char* name, const std::vector<std::string>& body,
                         const char* own, const char* other, const char* acc) {
    os << "\nthread " << name << " {\n";
    for (int i = 1; i <= spec.n; ++i) {
      os << "  store " << own << i << " = 1;\n";
      os << "  load t = " << other << i << ";\n";
      os << "  load u = " << acc << ";\n";
      os << "  store " << acc << " = u + t;\n";
    }
    for (const std::string& line : body) os << "  " << line << "\n";
    os << "}\n";
  };
  emit_thread("t1", core.body1, "x", "y", "s1acc");
  emit_thread("t2", core.body2, "y", "x", "s2acc");

  os << "\nfinal {\n  assert(";
  if (spec.n > 0) {
    // Keep the conjunction canonical: a top-level disjunction needs parens.
    bool wrap = core.final_cond.find("||") != std::string::npos &&
                core.final_cond.find("&&") == std::string::npos;
    if (wrap)
      os << "(" << core.final_cond << ")";
    else
      os << core.final_cond;
    os << " && s1acc + s2acc >= 0";
  } else {
    os << core.final_cond;
  }
  os << ");\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

RunRecord run_cell(const GridCell& cell, const BenchOptions& opts) {
  RunRecord r;
  r.benchmark = cell.benchmark;
  r.algo = cell.cfg.algo;
  r.arch = cell.spec.arch;
  r.k1 = cell.cfg.k1;
  r.n = cell.spec.n;
  auto start = std::chrono::steady_clock::now();
  try {
    Program prog = parse(generate(cell.spec));
    UnrolledProgram u = unroll(prog, cell.unwind);
    RepairConfig cfg = cell.cfg;
    cfg.arch = cell.spec.arch;
    cfg.limits.node_budget = opts.node_budget;
    cfg.limits.deadline = start + opts.cell_timeout;
    RepairResult res = repair(u, cfg);
    r.queries = res.stats.queries;
    r.counterexamples = res.stats.counterexamples;
    r.solution_size = static_cast<int>(res.solution.size());
    std::string joined;
    for (const StatementPair& p : res.solution) {
      if (!joined.empty()) joined += ";";
      joined += prog.pair_string(p);
    }
    r.solution_pairs = std::move(joined);
    r.early_terminated = res.stats.early_terminated;
    r.status = to_string(res.status);
    r.time_ms = res.stats.wall_ms;
  } catch (const TimeoutError&) {
    r.status = "timeout";
    r.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  } catch (const Error&) {
    r.status = "error";
    r.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  }
  return r;
}

}  // namespace

std::vector<RunRecord> run_experiment(const std::vector<GridCell>& grid,
                                      const BenchOptions& opts) {
  std::vector<RunRecord> records(grid.size());
  if (grid.empty()) return records;
  int jobs = std::max(1, opts.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) break;
      records[i] = run_cell(grid[i], opts);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return records;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os << "benchmark,algo,arch,k1,n,queries,cex,solution_size,solution_pairs,"
        "time_ms,early_term,status\n";
  for (const RunRecord& r : records) {
    os << r.benchmark << ',' << to_string(r.algo) << ',' << to_string(r.arch) << ','
       << r.k1 << ',' << r.n << ',' << r.queries << ',' << r.counterexamples << ','
       << r.solution_size << ',' << r.solution_pairs << ',' << r.time_ms << ','
       << (r.early_terminated ? 1 : 0) << ',' << r.status << '\n';
  }
  return os.str();
}

}  // namespace ff
