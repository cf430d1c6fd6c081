#include "ff/checker.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <sstream>
#include <unordered_map>

namespace ff {

namespace {

// ---------------------------------------------------------------------------
// Machine state

struct BufEntry {
  int global;
  Value value;
  int iid;
};

// Store buffers: one FIFO per thread under TSO (queue index 0), one FIFO per
// (thread, global) under PSO, none under SC. Queues are laid out flat as
// thread * queues_per_thread + queue.
struct State {
  std::vector<int> pc;                       // per thread
  std::vector<Value> locals;                 // all threads, offset-indexed
  std::vector<Value> mem;
  std::vector<std::vector<BufEntry>> queues;
  std::vector<std::uint32_t> pairs;          // sorted ids of reordered pairs
};

std::uint64_t pack_pair(const StatementPair& p) {
  auto pack_ref = [](StatementRef r) {
    return (static_cast<std::uint64_t>(r.tid) << 20) |
           static_cast<std::uint64_t>(r.ordinal);
  };
  return (pack_ref(p.first) << 32) | pack_ref(p.second);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Fingerprint {
  std::uint64_t a;
  std::uint64_t b;
};

Fingerprint fingerprint(const std::string& bytes) {
  std::uint64_t a = 0xcbf29ce484222325ull;
  std::uint64_t b = 0x100000001b3ull ^ 0x9e3779b97f4a7c15ull;
  std::size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) {
    std::uint64_t chunk;
    std::memcpy(&chunk, bytes.data() + i, 8);
    a = mix64(a ^ chunk);
    b = mix64(b + chunk);
  }
  std::uint64_t tail = 0;
  for (std::size_t j = i; j < bytes.size(); ++j)
    tail = (tail << 8) | static_cast<unsigned char>(bytes[j]);
  a = mix64(a ^ tail ^ bytes.size());
  b = mix64(b + tail + bytes.size());
  if (a == 0 && b == 0) a = 1;
  return {a, b};
}

// Open-addressing fingerprint set. States are deduplicated by a 128-bit
// fingerprint of their canonical serialization; each entry remembers whether
// the subtree below it was ever cut by the reorder bound.
class Memo {
 public:
  Memo() { resize(1u << 14); }

  bool find(Fingerprint fp, bool* k_pruned) const {
    std::size_t mask = a_.size() - 1;
    std::size_t i = static_cast<std::size_t>(fp.a) & mask;
    while (a_[i] != 0 || b_[i] != 0) {
      if (a_[i] == fp.a && b_[i] == fp.b) {
        *k_pruned = flags_[i] != 0;
        return true;
      }
      i = (i + 1) & mask;
    }
    return false;
  }

  void insert(Fingerprint fp, bool k_pruned) {
    if (count_ * 10 >= a_.size() * 6) grow();
    insert_raw(fp, k_pruned);
    ++count_;
  }

  std::size_t size() const { return count_; }

 private:
  void insert_raw(Fingerprint fp, bool k_pruned) {
    std::size_t mask = a_.size() - 1;
    std::size_t i = static_cast<std::size_t>(fp.a) & mask;
    while (a_[i] != 0 || b_[i] != 0) i = (i + 1) & mask;
    a_[i] = fp.a;
    b_[i] = fp.b;
    flags_[i] = k_pruned ? 1 : 0;
  }

  void grow() {
    std::vector<std::uint64_t> oa = std::move(a_), ob = std::move(b_);
    std::vector<std::uint8_t> of = std::move(flags_);
    resize(oa.size() * 2);
    for (std::size_t i = 0; i < oa.size(); ++i)
      if (oa[i] != 0 || ob[i] != 0) insert_raw({oa[i], ob[i]}, of[i] != 0);
  }

  void resize(std::size_t n) {
    a_.assign(n, 0);
    b_.assign(n, 0);
    flags_.assign(n, 0);
  }

  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
  std::vector<std::uint8_t> flags_;
  std::size_t count_ = 0;
};

void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void append_value(std::string& out, Value v) {
  std::uint64_t u = static_cast<std::uint64_t>(v);
  append_varint(out, (u << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

enum class Step { Ok, PrunedPhi, PrunedK, Violation };

// ---------------------------------------------------------------------------
// Explorer: depth-first search over scheduler choices with memoized verdicts.
//
// Scheduling points are loads, stores, fences and buffer flushes; purely
// thread-local instructions (assignments, branches, asserts, assumes) run
// eagerly after each step, which neither adds nor removes observable
// behaviours because they touch no shared location.

class Explorer {
 public:
  Explorer(const UnrolledProgram& u, Arch arch, const OrderingConstraint& phi,
           std::optional<std::uint32_t> bound, const CheckLimits& limits,
           bool collect_finals)
      : u_(u),
        p_(*u.program),
        arch_(arch),
        limits_(limits),
        collect_finals_(collect_finals) {
    universe_ = enumerate_pairs(u, arch);
    for (std::size_t i = 0; i < universe_.size(); ++i)
      pair_id_.emplace(pack_pair(universe_[i]), static_cast<std::uint32_t>(i));

    for (const PairSet& clause : phi.clauses) {
      if (clause.empty()) throw Error("ordering constraint clause is empty");
      std::vector<std::uint32_t> ids;
      for (const StatementPair& pr : clause) {
        auto it = pair_id_.find(pack_pair(pr));
        if (it == pair_id_.end())
          throw Error("constraint pair " + p_.pair_string(pr) +
                      " is not reorderable under " + to_string(arch));
        ids.push_back(it->second);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      clauses_.push_back(std::move(ids));
    }
    conjunctive_ = true;
    banned_.assign(universe_.size(), 0);
    for (const auto& ids : clauses_) {
      if (ids.size() == 1)
        banned_[ids[0]] = 1;
      else
        conjunctive_ = false;
    }
    if (!conjunctive_) {
      for (const auto& ids : clauses_)
        clause_universe_.insert(clause_universe_.end(), ids.begin(), ids.end());
      std::sort(clause_universe_.begin(), clause_universe_.end());
      clause_universe_.erase(
          std::unique(clause_universe_.begin(), clause_universe_.end()),
          clause_universe_.end());
    }

    // A bound at or above the whole pair universe can never cut anything.
    if (bound && *bound < universe_.size()) bound_ = bound;

    queues_per_thread_ = arch == Arch::SC ? 0
                         : arch == Arch::TSO ? 1
                                             : static_cast<int>(p_.global_names.size());
    local_offset_.resize(p_.threads.size() + 1, 0);
    for (std::size_t t = 0; t < p_.threads.size(); ++t)
      local_offset_[t + 1] = local_offset_[t] + static_cast<int>(p_.threads[t].locals.size());
  }

  void check_deadline() const {
    if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline)
      throw TimeoutError("exploration deadline expired");
  }

  // Returns true when a violating execution was found (trace() holds it).
  bool run() {
    check_deadline();
    State init;
    init.pc.assign(p_.threads.size(), 0);
    init.locals.assign(static_cast<std::size_t>(local_offset_.back()), 0);
    init.mem = p_.global_init;
    init.queues.assign(p_.threads.size() * static_cast<std::size_t>(queues_per_thread_), {});
    if (normalize_all(init) == Step::Violation) return true;
    return explore(init);
  }

  const Trace& trace() const { return trace_; }
  bool bound_pruned() const { return raw_k_prune_; }
  std::set<std::vector<Value>>& finals() { return finals_; }

 private:
  // --- thread-local helpers ---
  std::span<Value> locals_of(State& s, int tid) {
    return {s.locals.data() + local_offset_[static_cast<std::size_t>(tid)],
            static_cast<std::size_t>(local_offset_[static_cast<std::size_t>(tid) + 1] -
                                     local_offset_[static_cast<std::size_t>(tid)])};
  }

  std::vector<BufEntry>& queue(State& s, int tid, int q) {
    return s.queues[static_cast<std::size_t>(tid) * static_cast<std::size_t>(queues_per_thread_) +
                    static_cast<std::size_t>(q)];
  }

  bool buffers_empty(const State& s, int tid) const {
    for (int q = 0; q < queues_per_thread_; ++q)
      if (!s.queues[static_cast<std::size_t>(tid) * static_cast<std::size_t>(queues_per_thread_) +
                    static_cast<std::size_t>(q)]
               .empty())
        return false;
    return true;
  }

  bool thread_done(const State& s, int tid) const {
    return s.pc[static_cast<std::size_t>(tid)] >=
           static_cast<int>(u_.code[static_cast<std::size_t>(tid)].size());
  }

  // Runs pending local instructions of thread `tid`, then zeroes locals that
  // are dead at the resulting pc. Leaves pc on a load, store, fence, a failed
  // assume, or end.
  //
  // A failed assume parks the thread: it never proceeds, so no execution
  // through it reaches the final assertion, but other threads keep running
  // (their own assertion failures stay observable) and the parked thread's
  // buffered writes still flush. Assume conditions read only thread locals,
  // so a parked thread stays parked.
  Step normalize(State& s, int tid) {
    const auto& code = u_.code[static_cast<std::size_t>(tid)];
    int& pc = s.pc[static_cast<std::size_t>(tid)];
    auto locals = locals_of(s, tid);
    while (pc < static_cast<int>(code.size())) {
      const Instr& in = code[static_cast<std::size_t>(pc)];
      if (in.op == OpCode::LocalAssign) {
        locals[static_cast<std::size_t>(in.local)] = eval_expr(*in.expr, locals);
        ++pc;
      } else if (in.op == OpCode::Branch) {
        pc = eval_cond(*in.cond, locals) ? pc + 1 : in.target;
      } else if (in.op == OpCode::Goto) {
        pc = in.target;
      } else if (in.op == OpCode::Assert) {
        if (!collect_finals_ && !eval_cond(*in.cond, locals)) {
          capture_violation(s, p_.sid_string(in.sid));
          return Step::Violation;
        }
        ++pc;
      } else if (in.op == OpCode::Assume) {
        bool v = eval_cond(*in.cond, locals);
        if (in.negate) v = !v;
        if (!v) break;  // parked
        ++pc;
      } else {
        break;
      }
    }
    std::uint64_t live = u_.live_locals[static_cast<std::size_t>(tid)][static_cast<std::size_t>(pc)];
    for (std::size_t i = 0; i < locals.size(); ++i)
      if (!(live >> i & 1)) locals[i] = 0;
    return Step::Ok;
  }

  Step normalize_all(State& s) {
    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      Step r = normalize(s, static_cast<int>(t));
      if (r != Step::Ok) return r;
    }
    return Step::Ok;
  }

  // --- reordered-pair admission ---
  Step admit(State& s, const std::vector<std::uint32_t>& fresh) {
    if (fresh.empty()) return Step::Ok;
    std::vector<std::uint32_t> merged;
    merged.reserve(s.pairs.size() + fresh.size());
    std::set_union(s.pairs.begin(), s.pairs.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged));
    if (merged.size() == s.pairs.size()) return Step::Ok;  // nothing new
    if (conjunctive_) {
      for (std::uint32_t id : fresh)
        if (banned_[id]) return Step::PrunedPhi;
    } else {
      // A clause is violated once every one of its pairs has been reordered.
      for (const auto& clause : clauses_) {
        if (std::includes(merged.begin(), merged.end(), clause.begin(), clause.end()))
          return Step::PrunedPhi;
      }
    }
    if (bound_ && merged.size() > *bound_) return Step::PrunedK;
    s.pairs = std::move(merged);
    return Step::Ok;
  }

  void detect_against_buffers(State& s, int tid, const Instr& in,
                              std::vector<std::uint32_t>& out, int max_iid) {
    for (int q = 0; q < queues_per_thread_; ++q) {
      for (const BufEntry& e : queue(s, tid, q)) {
        if (e.global == in.global) continue;
        if (max_iid >= 0 && e.iid >= max_iid) continue;  // only older stores
        const Instr& store_in = u_.instr(e.iid);
        auto it = pair_id_.find(pack_pair({store_in.sid, in.sid}));
        // Every buffered store is an older same-thread write to another
        // global, so the pair is reorderable by construction.
        assert(it != pair_id_.end());
        if (it != pair_id_.end()) out.push_back(it->second);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  void emit_event(int tid, int iid, int global, AccessType type) {
    events_.push_back({tid, iid, global, type, static_cast<int>(events_.size())});
  }

  // --- scheduler steps ---
  Step apply_issue(State& s, int tid) {
    const auto& code = u_.code[static_cast<std::size_t>(tid)];
    const Instr& in = code[static_cast<std::size_t>(s.pc[static_cast<std::size_t>(tid)])];
    auto locals = locals_of(s, tid);
    switch (in.op) {
      case OpCode::Fence:
        ++s.pc[static_cast<std::size_t>(tid)];
        break;
      case OpCode::Store: {
        Value v = eval_expr(*in.expr, locals);
        if (arch_ == Arch::SC) {
          s.mem[static_cast<std::size_t>(in.global)] = v;
          emit_event(tid, in.iid, in.global, AccessType::Write);
        } else {
          int q = arch_ == Arch::TSO ? 0 : in.global;
          auto& buf = queue(s, tid, q);
          if (u_.privately_read(tid, in.global)) {
            // Only the newest pending value of a privately-read global is
            // observable (forwarding); older entries and the memory cell are
            // overwritten before any read, so canonicalize them to zero.
            for (auto it = buf.rbegin(); it != buf.rend(); ++it)
              if (it->global == in.global) {
                it->value = 0;
                break;
              }
            s.mem[static_cast<std::size_t>(in.global)] = 0;
          }
          buf.push_back({in.global, v, in.iid});
        }
        ++s.pc[static_cast<std::size_t>(tid)];
        break;
      }
      case OpCode::Load: {
        const BufEntry* fwd = nullptr;
        if (arch_ == Arch::TSO) {
          auto& buf = queue(s, tid, 0);
          for (auto it = buf.rbegin(); it != buf.rend(); ++it)
            if (it->global == in.global) {
              fwd = &*it;
              break;
            }
        } else if (arch_ == Arch::PSO) {
          auto& buf = queue(s, tid, in.global);
          if (!buf.empty()) fwd = &buf.back();
        }
        Value v = fwd ? fwd->value : s.mem[static_cast<std::size_t>(in.global)];
        if (arch_ != Arch::SC) {
          // A read overtaking the thread's own buffered writes to other
          // globals realizes a write-read reordering for each of them.
          scratch_ids_.clear();
          detect_against_buffers(s, tid, in, scratch_ids_, -1);
          Step r = admit(s, scratch_ids_);
          if (r != Step::Ok) return r;
        }
        locals_of(s, tid)[static_cast<std::size_t>(in.local)] = v;
        emit_event(tid, in.iid, in.global, AccessType::Read);
        ++s.pc[static_cast<std::size_t>(tid)];
        break;
      }
      default:
        throw Error("internal: unexpected instruction at a scheduling point");
    }
    return normalize(s, tid);
  }

  Step apply_flush(State& s, int tid, int q) {
    auto& buf = queue(s, tid, q);
    BufEntry e = buf.front();
    buf.erase(buf.begin());
    if (arch_ == Arch::PSO) {
      // Flushing past an older buffered write to a different global is a
      // write-write reordering. Under TSO the single FIFO makes it impossible.
      const Instr& in = u_.instr(e.iid);
      scratch_ids_.clear();
      detect_against_buffers(s, tid, in, scratch_ids_, e.iid);
      Step r = admit(s, scratch_ids_);
      if (r != Step::Ok) return r;
    }
    s.mem[static_cast<std::size_t>(e.global)] = e.value;
    if (u_.privately_read(tid, e.global)) {
      bool still_pending = false;
      for (int qq = 0; qq < queues_per_thread_ && !still_pending; ++qq)
        for (const BufEntry& rest : queue(s, tid, qq))
          if (rest.global == e.global) {
            still_pending = true;
            break;
          }
      if (still_pending) s.mem[static_cast<std::size_t>(e.global)] = 0;
    }
    emit_event(tid, e.iid, e.global, AccessType::Write);
    return Step::Ok;
  }

  // --- terminal handling ---
  bool terminal(const State& s) const {
    for (std::size_t t = 0; t < p_.threads.size(); ++t)
      if (!thread_done(s, static_cast<int>(t)) || !buffers_empty(s, static_cast<int>(t)))
        return false;
    return true;
  }

  // Final assertion over drained memory and terminal locals.
  bool handle_terminal(State& s) {
    if (collect_finals_) {
      finals_.insert(s.mem);
      return false;
    }
    if (!p_.final_assert) return false;
    std::vector<std::vector<Value>> by_thread;
    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      auto span = locals_of(s, static_cast<int>(t));
      by_thread.emplace_back(span.begin(), span.end());
    }
    FinalEnv env{std::span<const Value>(s.mem), &by_thread};
    if (eval_final(*p_.final_assert, env)) return false;
    capture_violation(s, "final");
    return true;
  }

  void capture_violation(const State& s, std::string which) {
    trace_.events = events_;
    trace_.reordered.clear();
    for (std::uint32_t id : s.pairs) trace_.reordered.push_back(universe_[id]);
    trace_.violated = std::move(which);
  }

  const std::string& serialize(const State& s) {
    key_.clear();
    for (int pc : s.pc) append_varint(key_, static_cast<std::uint64_t>(pc));
    for (const auto& buf : s.queues) {
      append_varint(key_, buf.size());
      for (const BufEntry& e : buf) {
        append_varint(key_, static_cast<std::uint64_t>(e.global));
        append_value(key_, e.value);
        append_varint(key_, static_cast<std::uint64_t>(e.iid));
      }
    }
    for (Value v : s.locals) append_value(key_, v);
    for (Value v : s.mem) append_value(key_, v);
    if (bound_) {
      // Admission depends on exactly which pairs have been reordered.
      for (std::uint32_t id : s.pairs) append_varint(key_, id);
    } else if (!conjunctive_) {
      // Only progress toward fully-reordered clauses matters.
      for (std::uint32_t id : s.pairs)
        if (std::binary_search(clause_universe_.begin(), clause_universe_.end(), id))
          append_varint(key_, id);
    }
    return key_;
  }

  bool explore(State& s) {
    if (++expanded_ > limits_.node_budget)
      throw ResourceError("exploration exceeded the node budget (" +
                          std::to_string(limits_.node_budget) + " nodes)");
    if ((expanded_ & 0xFF) == 1) check_deadline();

    if (terminal(s)) return handle_terminal(s);

    Fingerprint fp = fingerprint(serialize(s));
    bool memo_prune = false;
    if (memo_.find(fp, &memo_prune)) {
      raw_k_prune_ = raw_k_prune_ || memo_prune;
      return false;
    }

    bool saved = raw_k_prune_;
    raw_k_prune_ = false;

    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      int tid = static_cast<int>(t);
      if (thread_done(s, tid)) continue;
      const Instr& in = u_.code[t][static_cast<std::size_t>(s.pc[t])];
      if (in.op == OpCode::Assume) continue;  // parked on a failed assume
      if (in.op == OpCode::Fence && !buffers_empty(s, tid)) continue;
      std::size_t mark = events_.size();
      State child = s;
      Step r = apply_issue(child, tid);
      if (r == Step::Violation) return true;
      if (r == Step::Ok && explore(child)) return true;
      if (r == Step::PrunedK) raw_k_prune_ = true;
      events_.resize(mark);
    }

    // Flush choices: threads in index order; within a thread, the queue whose
    // head was issued first flushes first.
    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      int tid = static_cast<int>(t);
      std::vector<std::pair<int, int>> order;
      for (int q = 0; q < queues_per_thread_; ++q) {
        const auto& buf = queue(s, tid, q);
        if (!buf.empty()) order.emplace_back(buf.front().iid, q);
      }
      std::sort(order.begin(), order.end());
      for (auto [head_iid, q] : order) {
        (void)head_iid;
        std::size_t mark = events_.size();
        State child = s;
        Step r = apply_flush(child, tid, q);
        if (r == Step::Violation) return true;
        if (r == Step::Ok && explore(child)) return true;
        if (r == Step::PrunedK) raw_k_prune_ = true;
        events_.resize(mark);
      }
    }

    bool subtree_pruned = raw_k_prune_;
    raw_k_prune_ = subtree_pruned || saved;
    memo_.insert(fp, subtree_pruned);
    return false;
  }

  const UnrolledProgram& u_;
  const Program& p_;
  Arch arch_;
  CheckLimits limits_;
  bool collect_finals_;

  PairSet universe_;
  std::unordered_map<std::uint64_t, std::uint32_t> pair_id_;
  std::vector<std::vector<std::uint32_t>> clauses_;
  std::vector<std::uint8_t> banned_;
  std::vector<std::uint32_t> clause_universe_;
  bool conjunctive_ = true;
  std::optional<std::uint32_t> bound_;
  int queues_per_thread_ = 0;
  std::vector<int> local_offset_;

  Memo memo_;
  std::vector<Event> events_;
  std::vector<std::uint32_t> scratch_ids_;
  std::string key_;
  Trace trace_;
  bool raw_k_prune_ = false;
  std::uint64_t expanded_ = 0;
  std::set<std::vector<Value>> finals_;
};

}  // namespace

// ---------------------------------------------------------------------------

OrderingConstraint OrderingConstraint::all_of(const PairSet& pairs) {
  OrderingConstraint phi;
  for (const StatementPair& p : pairs) phi.clauses.push_back({p});
  return phi;
}

bool OrderingConstraint::conjunctive() const {
  for (const auto& c : clauses)
    if (c.size() != 1) return false;
  return true;
}

CheckResult check(const UnrolledProgram& u, Arch a, const OrderingConstraint& phi,
                  std::optional<std::uint32_t> reorder_bound, EvidenceMode evidence,
                  const CheckLimits& limits) {
  Explorer ex(u, a, phi, reorder_bound, limits, false);
  CheckResult res;
  if (ex.run()) {
    res.trace = ex.trace();
    // Cross-check tracked pairs against an independent recomputation from the
    // event sequence; a mismatch would mean the stepper lost a reordering.
    PairSet recomputed = get_reordered_pairs(res.trace.events, u);
    if (recomputed != res.trace.reordered)
      throw Error("internal: tracked reordered pairs disagree with the trace");
    res.kind = res.trace.reordered.empty() ? CheckResult::Kind::Unrepairable
                                           : CheckResult::Kind::Unsafe;
    return res;
  }
  res.kind = CheckResult::Kind::Safe;
  bool raw = ex.bound_pruned();
  if (raw && evidence == EvidenceMode::Precise) {
    // The bound pruned something; decide whether it actually hides a
    // counterexample by re-exploring without it under the same constraint.
    Explorer unbounded(u, a, phi, std::nullopt, limits, false);
    res.evidence.bound_limited = unbounded.run();
  } else {
    res.evidence.bound_limited = raw;
  }
  return res;
}

PairSet get_reordered_pairs(std::span<const Event> events, const UnrolledProgram& u) {
  PairSet out;
  int total = u.total_instructions();
  for (const Event& e : events)
    if (e.iid < 0 || e.iid >= total)
      throw Error("trace names unknown instruction " + std::to_string(e.iid));
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Event& later = events[i];
      const Event& earlier = events[j];
      if (later.tid != earlier.tid) continue;
      if (later.global == earlier.global) continue;  // forwarding respects order
      const Instr& li = u.instr(later.iid);
      const Instr& ei = u.instr(earlier.iid);
      if (li.po_index < ei.po_index) out.push_back({li.sid, ei.sid});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_trace(const Trace& t, const UnrolledProgram& u) {
  std::ostringstream os;
  const Program& p = *u.program;
  for (const Event& e : t.events) {
    os << e.seq << '\t' << e.tid << '\t' << e.iid << '\t'
       << p.sid_string(u.instr(e.iid).sid) << '\t'
       << p.global_names[static_cast<std::size_t>(e.global)] << '\t'
       << (e.type == AccessType::Read ? "read" : "write") << '\n';
  }
  return os.str();
}

std::set<std::vector<Value>> enumerate_final_memory(const UnrolledProgram& u, Arch a,
                                                    const CheckLimits& limits) {
  Explorer ex(u, a, OrderingConstraint::none(), std::nullopt, limits, true);
  ex.run();
  return std::move(ex.finals());
}

}  // namespace ff
