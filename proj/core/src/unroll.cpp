#include "ff/unroll.hpp"

namespace ff {

namespace {

struct Emitter {
  std::vector<Instr>& code;
  int tid;
  int unwind;

  int emit(Instr in) {
    in.tid = tid;
    in.po_index = static_cast<int>(code.size());
    code.push_back(in);
    return in.po_index;
  }

  void emit_block(const std::vector<Statement>& stmts) {
    for (const Statement& s : stmts) emit_stmt(s);
  }

  void emit_stmt(const Statement& s) {
    switch (s.kind) {
      case StmtKind::Load:
        emit({OpCode::Load, -1, -1, -1, s.sid, s.local, s.global, nullptr, nullptr, -1});
        break;
      case StmtKind::Store:
        emit({OpCode::Store, -1, -1, -1, s.sid, -1, s.global, s.expr.get(), nullptr, -1});
        break;
      case StmtKind::LocalAssign:
        emit({OpCode::LocalAssign, -1, -1, -1, s.sid, s.local, -1, s.expr.get(), nullptr, -1});
        break;
      case StmtKind::Fence:
        emit({OpCode::Fence, -1, -1, -1, s.sid, -1, -1, nullptr, nullptr, -1});
        break;
      case StmtKind::Assert:
        emit({OpCode::Assert, -1, -1, -1, s.sid, -1, -1, nullptr, s.cond.get(), -1});
        break;
      case StmtKind::Assume:
        emit({OpCode::Assume, -1, -1, -1, s.sid, -1, -1, nullptr, s.cond.get(), -1});
        break;
      case StmtKind::If: {
        int br = emit({OpCode::Branch, -1, -1, -1, s.sid, -1, -1, nullptr, s.cond.get(), -1});
        emit_block(s.then_block);
        if (s.else_block.empty()) {
          code[static_cast<std::size_t>(br)].target = static_cast<int>(code.size());
        } else {
          int skip = emit({OpCode::Goto, -1, -1, -1, s.sid, -1, -1, nullptr, nullptr, -1});
          code[static_cast<std::size_t>(br)].target = static_cast<int>(code.size());
          emit_block(s.else_block);
          code[static_cast<std::size_t>(skip)].target = static_cast<int>(code.size());
        }
        break;
      }
      case StmtKind::While: {
        // Bounded replication: each round exits forward when the guard fails;
        // a path still inside the loop after the last round is cut by
        // assuming the guard is false.
        std::vector<int> exits;
        for (int round = 0; round < unwind; ++round) {
          exits.push_back(
              emit({OpCode::Branch, -1, -1, -1, s.sid, -1, -1, nullptr, s.cond.get(), -1}));
          emit_block(s.then_block);
        }
        Instr cut{OpCode::Assume, -1, -1, -1, s.sid, -1, -1, nullptr, s.cond.get(), -1};
        cut.negate = true;
        emit(cut);
        int end = static_cast<int>(code.size());
        for (int b : exits) code[static_cast<std::size_t>(b)].target = end;
        break;
      }
    }
  }
};

void collect_expr_uses(const Expr& e, std::uint64_t& mask) {
  if (e.kind == ExprKind::LocalRef) mask |= 1ull << e.local;
  if (e.lhs) collect_expr_uses(*e.lhs, mask);
  if (e.rhs) collect_expr_uses(*e.rhs, mask);
}

void collect_cond_uses(const Cond& c, std::uint64_t& mask) {
  if (c.cmp_lhs) collect_expr_uses(*c.cmp_lhs, mask);
  if (c.cmp_rhs) collect_expr_uses(*c.cmp_rhs, mask);
  if (c.lhs) collect_cond_uses(*c.lhs, mask);
  if (c.rhs) collect_cond_uses(*c.rhs, mask);
}

void collect_final_locals(const Cond& c, int tid, std::uint64_t& mask) {
  if (c.kind == CondKind::Compare) {
    auto walk = [&](const Expr& e, auto&& self) -> void {
      if (e.kind == ExprKind::ThreadLocalRef && e.tid == tid) mask |= 1ull << e.local;
      if (e.lhs) self(*e.lhs, self);
      if (e.rhs) self(*e.rhs, self);
    };
    if (c.cmp_lhs) walk(*c.cmp_lhs, walk);
    if (c.cmp_rhs) walk(*c.cmp_rhs, walk);
  }
  if (c.lhs) collect_final_locals(*c.lhs, tid, mask);
  if (c.rhs) collect_final_locals(*c.rhs, tid, mask);
}

}  // namespace

UnrolledProgram unroll(const Program& p, int unwind) {
  if (unwind < 1) throw Error("unwind bound must be at least 1");
  UnrolledProgram u;
  u.program = &p;
  u.unwind = unwind;
  u.code.resize(p.threads.size());
  for (const Thread& t : p.threads) {
    Emitter em{u.code[static_cast<std::size_t>(t.tid)], t.tid, unwind};
    em.emit_block(t.body);
  }

  int iid = 0;
  for (auto& thread_code : u.code)
    for (Instr& in : thread_code) {
      in.iid = iid++;
      u.instr_index.emplace_back(in.tid, in.po_index);
    }

  u.loaded_by.assign(p.global_names.size(), 0);
  for (const auto& thread_code : u.code)
    for (const Instr& in : thread_code)
      if (in.op == OpCode::Load)
        u.loaded_by[static_cast<std::size_t>(in.global)] |= 1u << in.tid;

  // Backward liveness over each thread's forward-branching code: live_locals
  // lets the checker zero locals whose value can no longer be read, which
  // collapses otherwise-distinct states.
  u.live_locals.resize(p.threads.size());
  for (const Thread& t : p.threads) {
    const auto& thread_code = u.code[static_cast<std::size_t>(t.tid)];
    auto& live = u.live_locals[static_cast<std::size_t>(t.tid)];
    live.assign(thread_code.size() + 1, 0);
    std::uint64_t final_mask = 0;
    if (p.final_assert) collect_final_locals(*p.final_assert, t.tid, final_mask);
    live[thread_code.size()] = final_mask;
    for (int i = static_cast<int>(thread_code.size()) - 1; i >= 0; --i) {
      const Instr& in = thread_code[static_cast<std::size_t>(i)];
      std::uint64_t succ = 0;
      if (in.op == OpCode::Goto) {
        succ = live[static_cast<std::size_t>(in.target)];
      } else if (in.op == OpCode::Branch) {
        succ = live[static_cast<std::size_t>(i) + 1] |
               live[static_cast<std::size_t>(in.target)];
      } else {
        succ = live[static_cast<std::size_t>(i) + 1];
      }
      std::uint64_t defs = 0;
      if (in.op == OpCode::Load || in.op == OpCode::LocalAssign) defs |= 1ull << in.local;
      std::uint64_t uses = 0;
      if (in.expr) collect_expr_uses(*in.expr, uses);
      if (in.cond) collect_cond_uses(*in.cond, uses);
      live[static_cast<std::size_t>(i)] = (succ & ~defs) | uses;
    }
  }
  return u;
}

}  // namespace ff
