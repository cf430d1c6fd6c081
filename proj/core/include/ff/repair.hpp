#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ff/checker.hpp"
#include "ff/hitset.hpp"
#include "ff/memmodel.hpp"
#include "ff/unroll.hpp"

namespace ff {

enum class Algo { TE, FI, ROBMC, ROBMC_ET };

const char* to_string(Algo a);
/// Accepts "te", "fi", "robmc", "robmc-et"; throws Error otherwise.
Algo parse_algo(std::string_view text);

/// Doubles the reorder bound; the default growth schedule.
std::uint32_t increase_strategy(std::uint32_t k);

/// Pluggable bound growth.
///   Double:   k -> 2k.
///   Additive: k -> k + step.
///   Adaptive: k -> k * factor once `safe_streak` consecutive SAFE queries
///             have been seen, k + step otherwise.
struct IncreasePolicy {
  enum class Kind { Double, Additive, Adaptive };
  Kind kind = Kind::Double;
  std::uint32_t step = 1;
  std::uint32_t factor = 4;
  int safe_streak = 2;
};

std::uint32_t next_bound(const IncreasePolicy& policy, std::uint32_t k,
                         int consecutive_safe_queries);

struct RepairConfig {
  Algo algo = Algo::FI;
  Arch arch = Arch::TSO;
  std::uint32_t k1 = 1;               // ROBMC variants: starting bound
  std::optional<std::uint32_t> k2;    // nullopt = all reorderable pairs
  std::optional<MhsMode> mhs;         // default: Minimum (TE: Minimal)
  IncreasePolicy increase;
  int max_queries = 10000;            // guardrail; exceeding it is an error
  CheckLimits limits;
};

enum class RepairStatus { Repaired, AlreadySafe, Unrepairable };

const char* to_string(RepairStatus s);

struct RepairStats {
  int queries = 0;
  int counterexamples = 0;
  std::vector<std::pair<std::uint32_t, int>> queries_by_bound;  // ROBMC variants
  std::int64_t wall_ms = 0;
  std::uint32_t max_cex_reorderings = 0;
  bool early_terminated = false;
};

struct RepairResult {
  PairSet solution;
  RepairStatus status = RepairStatus::AlreadySafe;
  RepairStats stats;
};

/// Banning every pair in `solution` makes the program safe (status Repaired),
/// no counterexample existed at all (AlreadySafe), or an execution violates
/// an assertion without any reordering (Unrepairable; no fence can help).
RepairResult repair(const UnrolledProgram& u, const RepairConfig& cfg);

// The individual algorithms. `repair` dispatches on cfg.algo.
RepairResult repair_te(const UnrolledProgram& u, const RepairConfig& cfg);
RepairResult repair_fi(const UnrolledProgram& u, const RepairConfig& cfg);
RepairResult repair_robmc(const UnrolledProgram& u, const RepairConfig& cfg);
RepairResult repair_robmc_et(const UnrolledProgram& u, const RepairConfig& cfg);

/// Fence placement derived from a solution: one fence immediately after the
/// first statement of each pair (deduplicated, canonical order).
std::vector<StatementRef> fence_locations(const PairSet& solution);

}  // namespace ff
