#include <doctest.h>

#include <sstream>

#include "ff/bench.hpp"
#include "ff/parser.hpp"
#include "fixtures.hpp"

using namespace ff;

namespace {

const char* kSbZero =
    "shared x = 0;\n"
    "shared y = 0;\n"
    "\n"
    "thread t1 {\n"
    "  store x = 1;\n"
    "  load r1 = y;\n"
    "}\n"
    "\n"
    "thread t2 {\n"
    "  store y = 1;\n"
    "  load r2 = x;\n"
    "}\n"
    "\n"
    "final {\n"
    "  assert(r1 == 1 || r2 == 1);\n"
    "}\n";

std::string strip_time_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::string col;
    std::istringstream ls(line);
    while (std::getline(ls, col, ',')) cols.push_back(col);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i == 9) continue;  // time_ms
      out += cols[i];
      out += i + 1 == cols.size() ? "" : ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("the bare store-buffer program is emitted verbatim") {
  CHECK(generate({Core::SB, 0, Arch::TSO}) == kSbZero);
  CHECK(generate({Core::SB, 0, Arch::PSO}) == kSbZero);  // arch does not matter
}

TEST_CASE("generation is pure and canonical") {
  for (Core core : {Core::SB, Core::MP, Core::Double, Core::Peterson})
    for (int n : {0, 1, 4}) {
      ParamSpec spec{core, n, Arch::TSO};
      std::string once = generate(spec);
      CHECK(once == generate(spec));
      // The emitted text is already in the renderer's canonical form.
      CHECK(render(parse(once)) == once);
    }
  CHECK_THROWS_AS(generate({Core::SB, -1, Arch::TSO}), Error);
}

TEST_CASE("interference blocks precede the core and keep their shape") {
  Program p = fixtures::family(Core::SB, 2);
  REQUIRE(p.threads.size() == 2);
  // 4 statements per block, 2 blocks, then the 2-statement core.
  CHECK(p.threads[0].by_ordinal.size() == 10);
  CHECK(p.statement(p.parse_sid("t1.1")).kind == StmtKind::Store);
  CHECK(p.statement(p.parse_sid("t1.2")).kind == StmtKind::Load);
  CHECK(p.statement(p.parse_sid("t1.9")).kind == StmtKind::Store);
  CHECK(p.global_names.front() == "x1");
  CHECK(p.global_index("s1acc") >= 0);
  CHECK(p.global_index("s2acc") >= 0);
}

TEST_CASE("the two-core program carries innocent and culprit pairs") {
  Program p = fixtures::family(Core::Double, 0);
  UnrolledProgram u = unroll(p, 1);
  PairSet pairs = enumerate_pairs(u, Arch::TSO);
  CHECK(pairs.size() == 6);
  for (const char* name : {"t1.1~t1.2", "t1.1~t1.4", "t1.3~t1.4"}) {
    StatementRef a = p.parse_sid(std::string(name).substr(0, 4));
    StatementRef b = p.parse_sid(std::string(name).substr(5));
    CHECK(std::binary_search(pairs.begin(), pairs.end(), StatementPair{a, b}));
  }
}

TEST_CASE("experiment grid runs every cell and keeps grid order") {
  std::vector<GridCell> grid;
  for (int n = 0; n <= 4; ++n)
    for (Algo algo : {Algo::FI, Algo::ROBMC_ET}) {
      GridCell cell;
      cell.benchmark = std::string(to_string(Core::SB)) + "-n" + std::to_string(n);
      cell.spec = {Core::SB, n, Arch::TSO};
      cell.cfg.algo = algo;
      cell.cfg.arch = Arch::TSO;
      cell.cfg.k1 = 1;
      cell.unwind = 1;
      grid.push_back(cell);
    }
  BenchOptions opts;
  opts.cell_timeout = std::chrono::seconds(120);
  std::vector<RunRecord> records = run_experiment(grid, opts);
  REQUIRE(records.size() == 10);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CAPTURE(i);
    CHECK(records[i].benchmark == grid[i].benchmark);
    CHECK(records[i].status == "repaired");
    CHECK(records[i].solution_size == 2);
  }
  // The repair never depends on the padding.
  for (const RunRecord& r : records)
    CHECK(r.solution_pairs.find('~') != std::string::npos);

  CHECK(run_experiment({}, opts).empty());
}

TEST_CASE("experiment records are deterministic apart from wall time") {
  std::string grid_text = R"(
    [defaults]
    arch = "tso"
    unwind = 1

    [[cell]]
    core = "sb"
    n = [0, 2]
    algo = ["fi", "robmc-et"]
  )";
  std::vector<GridCell> grid = load_grid(grid_text);
  REQUIRE(grid.size() == 4);
  BenchOptions opts;
  opts.jobs = 2;
  std::string a = records_to_csv(run_experiment(grid, opts));
  std::string b = records_to_csv(run_experiment(grid, opts));
  CHECK(strip_time_column(a) == strip_time_column(b));
}

TEST_CASE("csv format is stable") {
  RunRecord r;
  r.benchmark = "sb-n1";
  r.algo = Algo::ROBMC_ET;
  r.arch = Arch::TSO;
  r.k1 = 1;
  r.n = 1;
  r.queries = 3;
  r.counterexamples = 2;
  r.solution_size = 2;
  r.solution_pairs = "t1.5~t1.6;t2.5~t2.6";
  r.time_ms = 17;
  r.early_terminated = true;
  r.status = "repaired";
  CHECK(records_to_csv({r}) ==
        "benchmark,algo,arch,k1,n,queries,cex,solution_size,solution_pairs,"
        "time_ms,early_term,status\n"
        "sb-n1,robmc-et,tso,1,1,3,2,2,t1.5~t1.6;t2.5~t2.6,17,1,repaired\n");
  CHECK(records_to_csv({}) ==
        "benchmark,algo,arch,k1,n,queries,cex,solution_size,solution_pairs,"
        "time_ms,early_term,status\n");
}

TEST_CASE("grid files merge defaults and expand lists") {
  std::string text = R"(
    # two families
    [defaults]
    arch = "pso"
    k1 = 2
    mhs = "minimum"

    [[cell]]
    core = "mp"
    n = [0, 1]
    algo = ["fi"]

    [[cell]]
    core = "double"
    arch = "tso"
    algo = ["robmc", "robmc-et"]
    k1 = [1, 5]
    k2 = "auto"
  )";
  std::vector<GridCell> cells = load_grid(text);
  REQUIRE(cells.size() == 2 + 4);
  CHECK(cells[0].benchmark == "mp-n0");
  CHECK(cells[0].spec.arch == Arch::PSO);
  CHECK(cells[0].cfg.k1 == 2);
  CHECK(cells[1].benchmark == "mp-n1");
  CHECK(cells[2].spec.core == Core::Double);
  CHECK(cells[2].spec.arch == Arch::TSO);
  CHECK(cells[2].cfg.algo == Algo::ROBMC);
  CHECK(cells[2].cfg.k1 == 1);
  CHECK(cells[3].cfg.k1 == 5);
  CHECK(cells[4].cfg.algo == Algo::ROBMC_ET);
  CHECK(!cells[2].cfg.k2.has_value());  // auto

  CHECK_THROWS_AS(load_grid("[[cell]]\nn = [0]"), Error);      // missing core
  CHECK_THROWS_AS(load_grid("core = \"sb\""), Error);          // outside a table
  CHECK_THROWS_AS(load_grid("[[cell]]\ncore = sb"), Error);    // unquoted string
  CHECK_THROWS_AS(load_grid("[bogus]\nx = 1"), Error);
}

TEST_CASE("cells that exceed their deadline are recorded, not fatal") {
  GridCell slow;
  slow.benchmark = "peterson-n4";
  slow.spec = {Core::Peterson, 4, Arch::PSO};
  slow.cfg.algo = Algo::FI;
  slow.cfg.arch = Arch::PSO;
  slow.unwind = 2;
  GridCell fast;
  fast.benchmark = "sb-n0";
  fast.spec = {Core::SB, 0, Arch::TSO};
  fast.cfg.algo = Algo::FI;
  fast.cfg.arch = Arch::TSO;
  fast.unwind = 1;
  BenchOptions opts;
  opts.cell_timeout = std::chrono::seconds(0);
  std::vector<RunRecord> records = run_experiment({slow, fast}, opts);
  REQUIRE(records.size() == 2);
  CHECK(records[0].status == "timeout");
  CHECK(records[1].status == "timeout");

  BenchOptions generous;
  generous.cell_timeout = std::chrono::seconds(60);
  CHECK(run_experiment({fast}, generous)[0].status == "repaired");
}
