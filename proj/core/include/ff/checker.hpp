#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ff/ast.hpp"
#include "ff/memmodel.hpp"
#include "ff/unroll.hpp"

namespace ff {

/// One entry of the global memory order: a read taking its value, or a
/// buffered write hitting memory.
struct Event {
  int tid = -1;
  int iid = -1;
  int global = -1;
  AccessType type = AccessType::Read;
  int seq = -1;
};

/// An assertion-violating execution.
struct Trace {
  std::vector<Event> events;
  PairSet reordered;      // tracked during exploration; equals
                          // get_reordered_pairs(events) by construction
  std::string violated;   // failing assertion: a sid string, or "final"
};

/// Accompanies a SAFE verdict: whether the reorder bound, rather than the
/// ordering constraint, is what limited exploration.
struct SafetyEvidence {
  bool bound_limited = false;
};

/// Conjunction of clauses; each clause requires at least one of its pairs to
/// stay unreordered in every admitted execution. A plain ordering constraint
/// "s1 before s2" is a singleton clause. No clauses = no constraint.
struct OrderingConstraint {
  std::vector<PairSet> clauses;

  static OrderingConstraint none() { return {}; }
  /// One singleton clause per pair: every listed reordering is banned.
  static OrderingConstraint all_of(const PairSet& pairs);
  bool conjunctive() const;
};

struct CheckResult {
  enum class Kind { Safe, Unsafe, Unrepairable };
  Kind kind = Kind::Safe;
  SafetyEvidence evidence;  // Safe only
  Trace trace;              // Unsafe / Unrepairable

  bool safe() const { return kind == Kind::Safe; }
};

/// How bound_limited is established on a SAFE verdict under a finite bound.
///   Raw:     true iff some branch was cut by the bound alone. Cheap;
///            may report true even when a larger bound stays safe.
///   Precise: on a raw hit, re-explores without the bound under the same
///            constraint, so the flag is true iff the bound actually hides
///            a counterexample.
enum class EvidenceMode { Raw, Precise };

struct CheckLimits {
  std::uint64_t node_budget = 2'000'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Explores every execution of `u` under architecture `a` admitted by `phi`
/// and by the reorder bound (nullopt = unbounded; counts distinct reordered
/// statement pairs per execution).
///
/// Returns the first counterexample in a fixed exploration order
/// (thread-index-ascending instruction steps, then buffer flushes), SAFE with
/// evidence, or Unrepairable when the first counterexample found contains no
/// reordering at all. Requires phi's pairs to lie within enumerate_pairs(u, a).
///
/// Throws EvalError on arithmetic overflow, ResourceError past the node
/// budget, TimeoutError past the deadline. Never silently degrades to SAFE.
CheckResult check(const UnrolledProgram& u, Arch a, const OrderingConstraint& phi,
                  std::optional<std::uint32_t> reorder_bound,
                  EvidenceMode evidence = EvidenceMode::Raw,
                  const CheckLimits& limits = {});

/// Statement pairs whose instructions appear inverted relative to program
/// order in `events`, for same-thread instructions touching different
/// globals (a read forwarded from the thread's own buffered store of the
/// same variable respects program order and does not count).
/// Throws Error on an event naming an unknown instruction.
PairSet get_reordered_pairs(std::span<const Event> events, const UnrolledProgram& u);

/// One event per line: "seq tid iid sid var type", tab-separated.
std::string format_trace(const Trace& t, const UnrolledProgram& u);

/// Shared-memory valuations reachable at full termination (all threads done,
/// all buffers drained). Assertions do not stop exploration here; assumes do.
/// Exploration support for cross-checking against reference interleavers.
std::set<std::vector<Value>> enumerate_final_memory(const UnrolledProgram& u, Arch a,
                                                    const CheckLimits& limits = {});

}  // namespace ff
