#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "ff/memmodel.hpp"
#include "ff/repair.hpp"

namespace ff {

/// Program family: a two-thread litmus core preceded by n interference blocks
/// per thread. The blocks only touch their own globals (x1..xn / y1..yn plus
/// one accumulator per thread), so their reorderings never break the core
/// assertion; they exist to inflate the set of reorderable pairs.
enum class Core { SB, MP, Double, Peterson };

const char* to_string(Core c);
/// Accepts "sb", "mp", "double", "peterson"; throws Error otherwise.
Core parse_core(std::string_view text);

struct ParamSpec {
  Core core = Core::SB;
  int n = 0;  // interference blocks per thread
  Arch arch = Arch::TSO;
};

/// Emits the DSL source for a family member. Pure: byte-identical output for
/// equal specs. n = 0 is exactly the bare core program.
std::string generate(const ParamSpec& spec);

struct GridCell {
  std::string benchmark;  // e.g. "sb-n4"
  ParamSpec spec;
  RepairConfig cfg;       // unwind baked into the cell
  int unwind = 2;
};

struct RunRecord {
  std::string benchmark;
  Algo algo = Algo::FI;
  Arch arch = Arch::TSO;
  std::uint32_t k1 = 0;
  int n = 0;
  int queries = 0;
  int counterexamples = 0;
  int solution_size = 0;
  std::string solution_pairs;  // ";"-joined "sid1~sid2"
  std::int64_t time_ms = 0;
  bool early_terminated = false;
  std::string status;  // repaired | already_safe | unrepairable | timeout | error
};

struct BenchOptions {
  int jobs = 1;
  std::chrono::seconds cell_timeout{60};
  std::uint64_t node_budget = CheckLimits{}.node_budget;
};

/// Runs every cell (optionally in parallel) with a per-cell timeout. A cell
/// that times out is recorded with status "timeout" and never aborts the
/// grid. Record order equals grid order regardless of completion order.
std::vector<RunRecord> run_experiment(const std::vector<GridCell>& grid,
                                      const BenchOptions& opts = {});

/// Exact column order:
/// benchmark,algo,arch,k1,n,queries,cex,solution_size,solution_pairs,time_ms,early_term,status
std::string records_to_csv(const std::vector<RunRecord>& records);

/// Loads a grid description (TOML subset, see docs/README) into cells.
std::vector<GridCell> load_grid(const std::string& toml_text);

}  // namespace ff
