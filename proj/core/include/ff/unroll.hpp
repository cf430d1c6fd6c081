#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ff/ast.hpp"

namespace ff {

enum class OpCode { Load, Store, LocalAssign, Fence, Assert, Assume, Branch, Goto };

/// One dynamic instance of a program statement. po_index is the position in
/// the owning thread's unrolled sequence: within a thread, instruction I1
/// precedes I2 in program order iff I1.po_index < I2.po_index.
struct Instr {
  OpCode op;
  int iid = -1;
  int tid = -1;
  int po_index = -1;
  StatementRef sid;
  int local = -1;
  int global = -1;
  const Expr* expr = nullptr;
  const Cond* cond = nullptr;
  int target = -1;     // Branch: jump when cond is false; Goto: unconditional
  bool negate = false; // evaluate !cond (loop-exit assumes reuse the guard)
};

/// Loop-free per-thread instruction sequences. While bodies are replicated up
/// to the unwind bound (iterations beyond it are cut by an assume on the
/// negated guard); If statements become forward branches resolved at run time.
struct UnrolledProgram {
  const Program* program = nullptr;
  int unwind = 1;
  std::vector<std::vector<Instr>> code;            // per thread
  std::vector<std::pair<int, int>> instr_index;    // iid -> (tid, po_index)

  // Per-thread, per-pc bitmask of locals whose value may still be read on
  // some path from pc (index code[t].size() = thread exit, where only locals
  // named by the final assertion survive).
  std::vector<std::vector<std::uint64_t>> live_locals;

  // loaded_by[g] = bitmask of threads containing a load of global g.
  std::vector<std::uint32_t> loaded_by;

  const Instr& instr(int iid) const {
    auto [tid, po] = instr_index.at(static_cast<std::size_t>(iid));
    return code[tid][po];
  }
  int total_instructions() const { return static_cast<int>(instr_index.size()); }

  /// True when no thread other than `tid` ever loads global g. Buffered
  /// stores to such a global are only ever observed through forwarding or
  /// after later flushes overwrite them, which the checker exploits to
  /// canonicalize shadowed buffer entries.
  bool privately_read(int tid, int g) const {
    return (loaded_by[g] & ~(1u << tid)) == 0;
  }
};

/// Unwinds every loop `unwind` times (unwind >= 1) and flattens each thread
/// to a forward-branching instruction sequence.
UnrolledProgram unroll(const Program& p, int unwind);

}  // namespace ff
