#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ff/bench.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* binary() { return std::getenv("FENCE_FORGE_BIN"); }

RunResult run(const std::string& args) {
  std::string cmd = std::string(binary()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "fence_forge_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path path = scratch() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("cli: generation matches the library byte for byte") {
  if (!binary()) return;  // only meaningful under ctest
  RunResult res = run("gen --core sb --n 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out == ff::generate({ff::Core::SB, 2, ff::Arch::TSO}));
}

TEST_CASE("cli: check exit codes distinguish verdicts") {
  if (!binary()) return;
  fs::path sb = write_file("sb.dsl", ff::generate({ff::Core::SB, 0, ff::Arch::TSO}));
  CHECK(run("check " + sb.string() + " --arch tso").exit_code == 1);
  CHECK(run("check " + sb.string() + " --arch sc").exit_code == 0);
  CHECK(run("check " + sb.string() + " --arch tso --k 0").exit_code == 0);

  fs::path lost = write_file("lost.dsl", fixtures::kLostUpdate);
  CHECK(run("check " + lost.string() + " --arch tso").exit_code == 2);

  fs::path broken = write_file("broken.dsl", "thread t { store }");
  CHECK(run("check " + broken.string() + " --arch tso").exit_code == 3);

  CHECK(run("check " + sb.string() + " --arch tso --max-nodes 2").exit_code == 4);
  CHECK(run("check " + sb.string()).exit_code == 3);  // --arch is required
  CHECK(run("frobnicate").exit_code == 3);
}

TEST_CASE("cli: ordering constraints make the litmus core safe") {
  if (!binary()) return;
  fs::path sb = write_file("sb2.dsl", ff::generate({ff::Core::SB, 0, ff::Arch::TSO}));
  fs::path phi = write_file("phi.json",
                            R"([[["t1.1","t1.2"]],[["t2.1","t2.2"]]])");
  RunResult safe = run("check " + sb.string() + " --arch tso --constraint " + phi.string());
  CHECK(safe.exit_code == 0);
  CHECK(safe.out.find("SAFE") == 0);

  fs::path half = write_file("half.json", R"([[["t1.1","t1.2"]]])");
  CHECK(run("check " + sb.string() + " --arch tso --constraint " + half.string())
            .exit_code == 1);

  fs::path junk = write_file("junk.json", R"([[["t1.9","t1.2"]]])");
  CHECK(run("check " + sb.string() + " --arch tso --constraint " + junk.string())
            .exit_code == 3);
}

TEST_CASE("cli: trace dumps are bare event lines") {
  if (!binary()) return;
  fs::path mp = write_file("mp.dsl", ff::generate({ff::Core::MP, 0, ff::Arch::TSO}));
  RunResult res = run("check " + mp.string() + " --arch pso --k 1 --dump-trace");
  CHECK(res.exit_code == 1);
  REQUIRE(!res.out.empty());
  CHECK(res.out.rfind("0\t", 0) == 0);
  for (char c : res.out)
    if (c == '\n') break;
  std::istringstream lines(res.out);
  std::string line;
  while (std::getline(lines, line))
    CHECK(std::count(line.begin(), line.end(), '\t') == 5);
}

TEST_CASE("cli: repair reports the solution and writes stats") {
  if (!binary()) return;
  fs::path dbl = write_file("double.dsl", ff::generate({ff::Core::Double, 0, ff::Arch::TSO}));
  fs::path csv = scratch() / "repair.csv";
  RunResult res = run("repair " + dbl.string() +
                      " --arch tso --algo robmc-et --k1 1 --mhs minimum --stats " +
                      csv.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("status: repaired") != std::string::npos);
  CHECK(res.out.find("t1.3~t1.4") != std::string::npos);
  CHECK(res.out.find("t2.3~t2.4") != std::string::npos);
  CHECK(res.out.find("after t1.3") != std::string::npos);

  std::ifstream in(csv);
  REQUIRE(in);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header ==
        "benchmark,algo,arch,k1,n,queries,cex,solution_size,solution_pairs,"
        "time_ms,early_term,status");
  CHECK(row.rfind("double,robmc-et,tso,1,0,", 0) == 0);
  CHECK(row.find("t1.3~t1.4;t2.3~t2.4") != std::string::npos);

  fs::path lost = write_file("lost2.dsl", fixtures::kLostUpdate);
  RunResult bad = run("repair " + lost.string() + " --arch tso --algo fi");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("unrepairable") != std::string::npos);
}

TEST_CASE("cli: bench writes one record per grid cell") {
  if (!binary()) return;
  fs::path grid = write_file("grid.toml",
                             "[defaults]\n"
                             "arch = \"tso\"\n"
                             "unwind = 1\n"
                             "[[cell]]\n"
                             "core = \"sb\"\n"
                             "n = [0, 1]\n"
                             "algo = [\"fi\", \"robmc-et\"]\n");
  fs::path csv = scratch() / "bench.csv";
  RunResult res = run("bench --grid " + grid.string() + " --stats " + csv.string() +
                      " --timeout 60");
  CHECK(res.exit_code == 0);
  std::ifstream in(csv);
  REQUIRE(in);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 5);  // header + 4 cells
}
