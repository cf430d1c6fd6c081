#include <doctest.h>

#include <algorithm>

#include "ff/repair.hpp"
#include "ff/parser.hpp"
#include "fixtures.hpp"

using namespace ff;

namespace {

RepairConfig cfg_for(Algo algo, Arch arch, std::uint32_t k1 = 1) {
  RepairConfig cfg;
  cfg.algo = algo;
  cfg.arch = arch;
  cfg.k1 = k1;
  cfg.mhs = MhsMode::Minimum;
  return cfg;
}

// Banning the solution must make the program safe independently of any bound.
void check_sound(const UnrolledProgram& u, Arch arch, const RepairResult& res) {
  REQUIRE(res.status != RepairStatus::Unrepairable);
  CheckResult final_check =
      check(u, arch, OrderingConstraint::all_of(res.solution), std::nullopt);
  CHECK(final_check.kind == CheckResult::Kind::Safe);
  CHECK(!final_check.evidence.bound_limited);
}

}  // namespace

TEST_CASE("trace enumeration repairs the store-buffer core") {
  Program p = fixtures::family(Core::SB, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairConfig cfg = cfg_for(Algo::TE, Arch::TSO);
  RepairResult res = repair_te(u, cfg);
  CHECK(res.status == RepairStatus::Repaired);
  CHECK(res.solution ==
        PairSet{fixtures::pr(p, "t1.1", "t1.2"), fixtures::pr(p, "t2.1", "t2.2")});
  check_sound(u, Arch::TSO, res);
  CHECK(res.stats.queries == res.stats.counterexamples + 1);

  // The default minimal-mode extraction lands on the same two culprits here.
  RepairConfig minimal = cfg_for(Algo::TE, Arch::TSO);
  minimal.mhs.reset();
  CHECK(repair_te(u, minimal).solution.size() == 2);
}

TEST_CASE("an already-safe program needs exactly one query") {
  Program p = parse(fixtures::kFencedSb);
  UnrolledProgram u = unroll(p, 1);
  for (Algo algo : {Algo::TE, Algo::FI, Algo::ROBMC_ET}) {
    RepairResult res = repair(u, cfg_for(algo, Arch::TSO));
    CAPTURE(to_string(algo));
    CHECK(res.status == RepairStatus::AlreadySafe);
    CHECK(res.solution.empty());
    CHECK(res.stats.queries == 1);
    CHECK(res.stats.counterexamples == 0);
  }
  // Without the evidence check the bound still walks up to its ceiling,
  // one safe query per level: k = 1, then k = 2 = all pairs.
  RepairResult plain = repair_robmc(u, cfg_for(Algo::ROBMC, Arch::TSO));
  CHECK(plain.status == RepairStatus::AlreadySafe);
  CHECK(plain.stats.queries == 2);
}

TEST_CASE("assertion failures without reordering cannot be repaired") {
  Program p = parse(fixtures::kLostUpdate);
  UnrolledProgram u = unroll(p, 1);
  for (Algo algo : {Algo::TE, Algo::FI, Algo::ROBMC, Algo::ROBMC_ET}) {
    RepairResult res = repair(u, cfg_for(algo, Arch::TSO));
    CAPTURE(to_string(algo));
    CHECK(res.status == RepairStatus::Unrepairable);
    CHECK(res.solution.empty());
  }
}

TEST_CASE("accelerated insertion finds the two-core culprits exactly") {
  Program p = fixtures::family(Core::Double, 0);
  UnrolledProgram u = unroll(p, 1);
  PairSet culprits = {fixtures::pr(p, "t1.3", "t1.4"), fixtures::pr(p, "t2.3", "t2.4")};

  RepairResult fi = repair_fi(u, cfg_for(Algo::FI, Arch::TSO));
  CHECK(fi.status == RepairStatus::Repaired);
  CHECK(fi.solution == culprits);
  check_sound(u, Arch::TSO, fi);

  RepairResult robmc = repair_robmc(u, cfg_for(Algo::ROBMC, Arch::TSO));
  CHECK(robmc.solution == culprits);
  // Bounded to one reordering per query, every counterexample is minimal.
  CHECK(robmc.stats.max_cex_reorderings == 1);

  RepairResult et = repair_robmc_et(u, cfg_for(Algo::ROBMC_ET, Arch::TSO));
  CHECK(et.solution == culprits);
  CHECK(et.stats.max_cex_reorderings == 1);
  CHECK(et.stats.early_terminated);
  REQUIRE(et.stats.queries_by_bound.size() == 1);  // never left the first bound
  CHECK(et.stats.queries_by_bound[0].first == 1);

  // The safety evidence behind the early exit, checked directly.
  CheckResult safe = check(u, Arch::TSO, OrderingConstraint::all_of(culprits), 1,
                           EvidenceMode::Precise);
  REQUIRE(safe.kind == CheckResult::Kind::Safe);
  CHECK(!safe.evidence.bound_limited);
}

TEST_CASE("write-write culprit under PSO") {
  Program p = fixtures::family(Core::MP, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairResult res = repair_fi(u, cfg_for(Algo::FI, Arch::PSO));
  CHECK(res.status == RepairStatus::Repaired);
  CHECK(res.solution == PairSet{fixtures::pr(p, "t1.1", "t1.2")});
  check_sound(u, Arch::PSO, res);
}

TEST_CASE("bounded search agrees with the unbounded pipeline") {
  Program p = fixtures::family(Core::SB, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairResult fi = repair_fi(u, cfg_for(Algo::FI, Arch::TSO));
  RepairResult robmc = repair_robmc(u, cfg_for(Algo::ROBMC, Arch::TSO));
  CHECK(robmc.solution == fi.solution);

  // With the bound pinned at the pair count it can never bite, so the query
  // sequence collapses to the accelerated loop.
  std::uint32_t all = static_cast<std::uint32_t>(enumerate_pairs(u, Arch::TSO).size());
  RepairConfig pinned = cfg_for(Algo::ROBMC, Arch::TSO, all);
  pinned.k2 = all;
  RepairResult same = repair_robmc(u, pinned);
  CHECK(same.solution == fi.solution);
  CHECK(same.stats.queries == fi.stats.queries);

  RepairConfig pinned_et = cfg_for(Algo::ROBMC_ET, Arch::TSO, all);
  pinned_et.k2 = all;
  RepairResult same_et = repair_robmc_et(u, pinned_et);
  CHECK(same_et.solution == fi.solution);
  CHECK(same_et.stats.queries == fi.stats.queries);
}

TEST_CASE("early termination never queries more than plain bounded search") {
  for (Core core : {Core::SB, Core::Double}) {
    Program p = fixtures::family(core, 0);
    UnrolledProgram u = unroll(p, 1);
    RepairResult et = repair_robmc_et(u, cfg_for(Algo::ROBMC_ET, Arch::TSO));
    RepairResult plain = repair_robmc(u, cfg_for(Algo::ROBMC, Arch::TSO));
    CAPTURE(to_string(core));
    CHECK(et.solution == plain.solution);
    CHECK(et.stats.queries <= plain.stats.queries);
  }
}

TEST_CASE("interference blocks leave the solution alone but cost queries") {
  Program p = fixtures::family(Core::SB, 6);
  UnrolledProgram u = unroll(p, 1);
  PairSet culprits = {fixtures::pr(p, "t1.25", "t1.26"), fixtures::pr(p, "t2.25", "t2.26")};

  RepairResult et = repair_robmc_et(u, cfg_for(Algo::ROBMC_ET, Arch::TSO));
  CHECK(et.solution == culprits);
  CHECK(et.stats.early_terminated);

  RepairResult fi = repair_fi(u, cfg_for(Algo::FI, Arch::TSO));
  CHECK(fi.solution == culprits);
  CHECK(fi.stats.queries >= et.stats.queries);
}

TEST_CASE("busy-wait mutual exclusion is repairable") {
  Program p = fixtures::family(Core::Peterson, 0);
  UnrolledProgram u = unroll(p, 2);
  RepairResult res = repair_fi(u, cfg_for(Algo::FI, Arch::TSO));
  CHECK(res.status == RepairStatus::Repaired);
  CHECK(!res.solution.empty());
  check_sound(u, Arch::TSO, res);

  RepairResult et = repair_robmc_et(u, cfg_for(Algo::ROBMC_ET, Arch::TSO));
  CHECK(et.solution.size() == res.solution.size());
  check_sound(u, Arch::TSO, et);
}

TEST_CASE("solution sizes agree across all four algorithms") {
  struct Case {
    Core core;
    int n;
    Arch arch;
  };
  // Trace enumeration degrades steeply with interference, so the matrix that
  // includes it stays at one block of padding.
  for (const Case& c : {Case{Core::SB, 0, Arch::TSO}, Case{Core::SB, 1, Arch::TSO},
                        Case{Core::MP, 0, Arch::PSO}, Case{Core::Double, 0, Arch::TSO},
                        Case{Core::Peterson, 0, Arch::TSO}}) {
    Program p = fixtures::family(c.core, c.n);
    UnrolledProgram u = unroll(p, 2);
    std::vector<std::size_t> sizes;
    for (Algo algo : {Algo::TE, Algo::FI, Algo::ROBMC, Algo::ROBMC_ET}) {
      RepairResult res = repair(u, cfg_for(algo, c.arch));
      CAPTURE(to_string(c.core));
      CAPTURE(to_string(algo));
      REQUIRE(res.status == RepairStatus::Repaired);
      check_sound(u, c.arch, res);
      sizes.push_back(res.solution.size());
    }
    CHECK(std::all_of(sizes.begin(), sizes.end(),
                      [&](std::size_t s) { return s == sizes.front(); }));
  }
}

TEST_CASE("bound growth schedules") {
  CHECK(increase_strategy(1) == 2);
  CHECK(increase_strategy(2) == 4);
  CHECK(increase_strategy(5) == 10);

  IncreasePolicy add;
  add.kind = IncreasePolicy::Kind::Additive;
  add.step = 1;
  CHECK(next_bound(add, 3, 0) == 4);

  IncreasePolicy adaptive;
  adaptive.kind = IncreasePolicy::Kind::Adaptive;
  CHECK(next_bound(adaptive, 2, 2) == 8);   // two safe queries in a row: jump
  CHECK(next_bound(adaptive, 2, 1) == 3);   // fresh counterexample: creep
  CHECK(next_bound({}, 7, 0) == 14);
}

TEST_CASE("additive growth reaches the same repair") {
  Program p = fixtures::family(Core::Double, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairConfig cfg = cfg_for(Algo::ROBMC, Arch::TSO);
  cfg.increase.kind = IncreasePolicy::Kind::Additive;
  RepairResult res = repair_robmc(u, cfg);
  CHECK(res.solution ==
        PairSet{fixtures::pr(p, "t1.3", "t1.4"), fixtures::pr(p, "t2.3", "t2.4")});
}

TEST_CASE("query caps guard against runaway loops") {
  Program p = fixtures::family(Core::Double, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairConfig cfg = cfg_for(Algo::FI, Arch::TSO);
  cfg.max_queries = 1;
  CHECK_THROWS_AS(repair_fi(u, cfg), ResourceError);
}

TEST_CASE("bad bound configurations are rejected") {
  Program p = fixtures::family(Core::SB, 0);
  UnrolledProgram u = unroll(p, 1);
  RepairConfig cfg = cfg_for(Algo::ROBMC, Arch::TSO, 5);
  cfg.k2 = 2;
  CHECK_THROWS_AS(repair_robmc(u, cfg), Error);
  RepairConfig zero = cfg_for(Algo::ROBMC, Arch::TSO, 0);
  CHECK_THROWS_AS(repair_robmc(u, zero), Error);
}

TEST_CASE("programs without reorderable pairs are already safe") {
  Program p = fixtures::family(Core::MP, 0);
  UnrolledProgram u = unroll(p, 1);
  REQUIRE(enumerate_pairs(u, Arch::TSO).empty());
  RepairResult res = repair_robmc_et(u, cfg_for(Algo::ROBMC_ET, Arch::TSO));
  CHECK(res.status == RepairStatus::AlreadySafe);
  CHECK(res.stats.queries == 1);
}

TEST_CASE("fence placement derives from pair heads") {
  Program p = fixtures::family(Core::Double, 0);
  PairSet sol = {fixtures::pr(p, "t1.3", "t1.4"), fixtures::pr(p, "t2.3", "t2.4")};
  auto spots = fence_locations(sol);
  REQUIRE(spots.size() == 2);
  CHECK(p.sid_string(spots[0]) == "t1.3");
  CHECK(p.sid_string(spots[1]) == "t2.3");
  // Two pairs sharing a head fold into one fence.
  PairSet shared_head = {fixtures::pr(p, "t1.1", "t1.2"), fixtures::pr(p, "t1.1", "t1.4")};
  CHECK(fence_locations(shared_head).size() == 1);
}
