#include "ff/hitset.hpp"

#include <algorithm>

namespace ff {

namespace {

// Internal id-based view: universe sorted canonically, sets as sorted id lists.
struct Instance {
  std::vector<StatementPair> universe;
  std::vector<std::vector<int>> sets;

  explicit Instance(const Collection& c) {
    for (const PairSet& s : c.sets) {
      if (s.empty()) throw Error("hitting-set collection contains an empty set");
      universe.insert(universe.end(), s.begin(), s.end());
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    for (const PairSet& s : c.sets) {
      std::vector<int> ids;
      for (const StatementPair& p : s)
        ids.push_back(static_cast<int>(
            std::lower_bound(universe.begin(), universe.end(), p) - universe.begin()));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      sets.push_back(std::move(ids));
    }
  }
};

std::vector<int> unhit_sets(const Instance& inst, const std::vector<char>& chosen) {
  std::vector<int> out;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    bool hit = false;
    for (int id : inst.sets[i])
      if (chosen[static_cast<std::size_t>(id)]) {
        hit = true;
        break;
      }
    if (!hit) out.push_back(static_cast<int>(i));
  }
  return out;
}

// Lower bound: size of a greedily-built family of pairwise-disjoint unhit sets.
int disjoint_bound(const Instance& inst, const std::vector<int>& unhit) {
  std::vector<char> used(inst.universe.size(), 0);
  int bound = 0;
  for (int si : unhit) {
    bool disjoint = true;
    for (int id : inst.sets[static_cast<std::size_t>(si)])
      if (used[static_cast<std::size_t>(id)]) {
        disjoint = false;
        break;
      }
    if (disjoint) {
      ++bound;
      for (int id : inst.sets[static_cast<std::size_t>(si)])
        used[static_cast<std::size_t>(id)] = 1;
    }
  }
  return bound;
}

// Does a hitting set of at most `budget` further elements exist, drawing only
// from ids >= min_id on top of `chosen`?
bool completable(const Instance& inst, std::vector<char>& chosen, int budget, int min_id) {
  std::vector<int> unhit = unhit_sets(inst, chosen);
  if (unhit.empty()) return true;
  if (budget <= 0) return false;
  if (disjoint_bound(inst, unhit) > budget) return false;
  // Branch on the smallest unhit set restricted to the allowed pool.
  const std::vector<int>* branch = nullptr;
  std::size_t best_size = static_cast<std::size_t>(-1);
  for (int si : unhit) {
    std::size_t usable = 0;
    for (int id : inst.sets[static_cast<std::size_t>(si)])
      if (id >= min_id) ++usable;
    if (usable == 0) return false;  // set can never be hit from the pool
    if (usable < best_size) {
      best_size = usable;
      branch = &inst.sets[static_cast<std::size_t>(si)];
    }
  }
  for (int id : *branch) {
    if (id < min_id) continue;
    chosen[static_cast<std::size_t>(id)] = 1;
    bool ok = completable(inst, chosen, budget - 1, min_id);
    chosen[static_cast<std::size_t>(id)] = 0;
    if (ok) return true;
  }
  return false;
}

int optimum_size(const Instance& inst) {
  int lo = 0;
  int hi = static_cast<int>(inst.universe.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    std::vector<char> chosen(inst.universe.size(), 0);
    if (completable(inst, chosen, mid, 0))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

PairSet greedy_then_prune(const Instance& inst) {
  std::vector<char> chosen(inst.universe.size(), 0);
  std::vector<int> unhit = unhit_sets(inst, chosen);
  while (!unhit.empty()) {
    std::vector<int> count(inst.universe.size(), 0);
    for (int si : unhit)
      for (int id : inst.sets[static_cast<std::size_t>(si)])
        ++count[static_cast<std::size_t>(id)];
    int best = -1;
    for (std::size_t id = 0; id < count.size(); ++id)
      if (count[id] > 0 && (best < 0 || count[id] > count[static_cast<std::size_t>(best)]))
        best = static_cast<int>(id);  // ties keep the smaller id
    chosen[static_cast<std::size_t>(best)] = 1;
    unhit = unhit_sets(inst, chosen);
  }
  // Prune to minimality in canonical order.
  for (std::size_t id = 0; id < chosen.size(); ++id) {
    if (!chosen[id]) continue;
    chosen[id] = 0;
    if (!unhit_sets(inst, chosen).empty()) chosen[id] = 1;
  }
  PairSet out;
  for (std::size_t id = 0; id < chosen.size(); ++id)
    if (chosen[id]) out.push_back(inst.universe[id]);
  return out;
}

}  // namespace

PairSet minimum_hitting_set(const Collection& c) {
  if (c.sets.empty()) return {};
  Instance inst(c);
  int k = optimum_size(inst);
  // Lexicographic refinement: commit the smallest id whose inclusion still
  // completes within the optimum, then continue to its right.
  std::vector<char> chosen(inst.universe.size(), 0);
  PairSet out;
  int remaining = k;
  int next_id = 0;
  while (remaining > 0) {
    for (int id = next_id; id < static_cast<int>(inst.universe.size()); ++id) {
      chosen[static_cast<std::size_t>(id)] = 1;
      if (completable(inst, chosen, remaining - 1, id + 1)) {
        out.push_back(inst.universe[static_cast<std::size_t>(id)]);
        --remaining;
        next_id = id + 1;
        break;
      }
      chosen[static_cast<std::size_t>(id)] = 0;
    }
    if (unhit_sets(inst, chosen).empty()) break;
  }
  return out;
}

PairSet minimal_hitting_set(const Collection& c) {
  if (c.sets.empty()) return {};
  Instance inst(c);
  return greedy_then_prune(inst);
}

PairSet compute_minimal_solution(const OrderingConstraint& phi, MhsMode mode) {
  Collection c;
  c.sets = phi.clauses;
  return mode == MhsMode::Minimum ? minimum_hitting_set(c) : minimal_hitting_set(c);
}

}  // namespace ff
