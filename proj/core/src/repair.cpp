#include "ff/repair.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

namespace ff {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::TE: return "te";
    case Algo::FI: return "fi";
    case Algo::ROBMC: return "robmc";
    case Algo::ROBMC_ET: return "robmc-et";
  }
  return "?";
}

Algo parse_algo(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "te") return Algo::TE;
  if (lower == "fi") return Algo::FI;
  if (lower == "robmc") return Algo::ROBMC;
  if (lower == "robmc-et" || lower == "robmc_et") return Algo::ROBMC_ET;
  throw Error("unknown algorithm '" + std::string(text) + "'");
}

const char* to_string(RepairStatus s) {
  switch (s) {
    case RepairStatus::Repaired: return "repaired";
    case RepairStatus::AlreadySafe: return "already_safe";
    case RepairStatus::Unrepairable: return "unrepairable";
  }
  return "?";
}

std::uint32_t increase_strategy(std::uint32_t k) { return 2 * k; }

std::uint32_t next_bound(const IncreasePolicy& policy, std::uint32_t k,
                         int consecutive_safe_queries) {
  switch (policy.kind) {
    case IncreasePolicy::Kind::Double:
      return increase_strategy(k);
    case IncreasePolicy::Kind::Additive:
      return k + policy.step;
    case IncreasePolicy::Kind::Adaptive:
      return consecutive_safe_queries >= policy.safe_streak ? k * policy.factor
                                                            : k + policy.step;
  }
  return increase_strategy(k);
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void note_cex(RepairStats& stats, const Trace& t) {
  ++stats.counterexamples;
  stats.max_cex_reorderings =
      std::max(stats.max_cex_reorderings, static_cast<std::uint32_t>(t.reordered.size()));
}

void bump_query_cap(const RepairConfig& cfg, const RepairStats& stats) {
  if (stats.queries >= cfg.max_queries)
    throw ResourceError("repair exceeded the query cap (" +
                        std::to_string(cfg.max_queries) + ")");
}

MhsMode mode_for(const RepairConfig& cfg, Algo algo) {
  if (cfg.mhs) return *cfg.mhs;
  return algo == Algo::TE ? MhsMode::Minimal : MhsMode::Minimum;
}

}  // namespace

RepairResult repair_te(const UnrolledProgram& u, const RepairConfig& cfg) {
  Timer timer;
  RepairResult out;
  OrderingConstraint phi;
  while (true) {
    bump_query_cap(cfg, out.stats);
    CheckResult res = check(u, cfg.arch, phi, std::nullopt, EvidenceMode::Raw, cfg.limits);
    ++out.stats.queries;
    if (res.safe()) {
      out.solution = compute_minimal_solution(phi, mode_for(cfg, Algo::TE));
      out.status = out.stats.counterexamples == 0 ? RepairStatus::AlreadySafe
                                                  : RepairStatus::Repaired;
      break;
    }
    note_cex(out.stats, res.trace);
    if (res.kind == CheckResult::Kind::Unrepairable) {
      out.solution.clear();
      out.status = RepairStatus::Unrepairable;
      break;
    }
    // Ban at least one reordering of this trace; which one stays open until
    // the final solution is extracted.
    phi.clauses.push_back(res.trace.reordered);
  }
  out.stats.wall_ms = timer.ms();
  return out;
}

RepairResult repair_fi(const UnrolledProgram& u, const RepairConfig& cfg) {
  Timer timer;
  RepairResult out;
  Collection collected;
  while (true) {
    bump_query_cap(cfg, out.stats);
    CheckResult res = check(u, cfg.arch, OrderingConstraint::all_of(out.solution),
                            std::nullopt, EvidenceMode::Raw, cfg.limits);
    ++out.stats.queries;
    if (res.safe()) {
      out.status = out.stats.counterexamples == 0 ? RepairStatus::AlreadySafe
                                                  : RepairStatus::Repaired;
      break;
    }
    note_cex(out.stats, res.trace);
    if (res.kind == CheckResult::Kind::Unrepairable) {
      out.solution.clear();
      out.status = RepairStatus::Unrepairable;
      break;
    }
    collected.sets.push_back(res.trace.reordered);
    out.solution = mode_for(cfg, Algo::FI) == MhsMode::Minimum
                       ? minimum_hitting_set(collected)
                       : minimal_hitting_set(collected);
  }
  out.stats.wall_ms = timer.ms();
  return out;
}

namespace {

RepairResult robmc_common(const UnrolledProgram& u, const RepairConfig& cfg,
                          bool early_termination) {
  Timer timer;
  RepairResult out;
  if (cfg.k1 < 1) throw Error("k1 must be at least 1");
  std::uint32_t pair_count =
      static_cast<std::uint32_t>(enumerate_pairs(u, cfg.arch).size());
  // The sound default upper bound: no execution reorders more pairs than
  // exist. Clamped below by k1 so the loop runs at least once even on
  // programs with nothing to reorder.
  std::uint32_t k2 = cfg.k2 ? *cfg.k2 : std::max(cfg.k1, pair_count);
  if (cfg.k1 > k2) throw Error("k1 exceeds k2");

  Collection collected;
  MhsMode mode = mode_for(cfg, Algo::ROBMC);
  int consecutive_safe = 0;
  bool terminate = false;
  std::uint32_t k = cfg.k1;
  while (k <= k2 && !terminate) {
    int queries_at_bound = 0;
    while (true) {
      bump_query_cap(cfg, out.stats);
      CheckResult res =
          check(u, cfg.arch, OrderingConstraint::all_of(out.solution), k,
                early_termination ? EvidenceMode::Precise : EvidenceMode::Raw,
                cfg.limits);
      ++out.stats.queries;
      ++queries_at_bound;
      if (res.safe()) {
        ++consecutive_safe;
        if (early_termination && !res.evidence.bound_limited) {
          // Safe independently of the bound: raising it cannot surface new
          // counterexamples.
          terminate = true;
          out.stats.early_terminated = true;
        }
        break;
      }
      consecutive_safe = 0;
      note_cex(out.stats, res.trace);
      if (res.kind == CheckResult::Kind::Unrepairable) {
        out.solution.clear();
        out.status = RepairStatus::Unrepairable;
        out.stats.queries_by_bound.emplace_back(k, queries_at_bound);
        out.stats.wall_ms = timer.ms();
        return out;
      }
      collected.sets.push_back(res.trace.reordered);
      out.solution = mode == MhsMode::Minimum ? minimum_hitting_set(collected)
                                              : minimal_hitting_set(collected);
    }
    out.stats.queries_by_bound.emplace_back(k, queries_at_bound);
    if (!terminate) k = next_bound(cfg.increase, k, consecutive_safe);
  }
  out.status = out.stats.counterexamples == 0 ? RepairStatus::AlreadySafe
                                              : RepairStatus::Repaired;
  out.stats.wall_ms = timer.ms();
  return out;
}

}  // namespace

RepairResult repair_robmc(const UnrolledProgram& u, const RepairConfig& cfg) {
  return robmc_common(u, cfg, false);
}

RepairResult repair_robmc_et(const UnrolledProgram& u, const RepairConfig& cfg) {
  return robmc_common(u, cfg, true);
}

RepairResult repair(const UnrolledProgram& u, const RepairConfig& cfg) {
  switch (cfg.algo) {
    case Algo::TE: return repair_te(u, cfg);
    case Algo::FI: return repair_fi(u, cfg);
    case Algo::ROBMC: return repair_robmc(u, cfg);
    case Algo::ROBMC_ET: return repair_robmc_et(u, cfg);
  }
  throw Error("unknown algorithm");
}

std::vector<StatementRef> fence_locations(const PairSet& solution) {
  std::vector<StatementRef> out;
  for (const StatementPair& p : solution) out.push_back(p.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ff
