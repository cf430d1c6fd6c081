#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ff {

using Value = std::int64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lexical or semantic problem in DSL source, with a 1-based position.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Signed 64-bit arithmetic overflowed while executing a program.
struct EvalError : Error {
  using Error::Error;
};

/// Exploration exceeded its node budget.
struct ResourceError : Error {
  using Error::Error;
};

/// A deadline expired mid-run.
struct TimeoutError : Error {
  using Error::Error;
};

/// Statement identity: owning thread index plus the statement's 1-based
/// pre-order position within the thread body. Printed as "<thread>.<ordinal>".
struct StatementRef {
  int tid = -1;
  int ordinal = 0;
  friend auto operator<=>(const StatementRef&, const StatementRef&) = default;
};

/// Ordered same-thread statement pair; `first` is program-order-earlier.
/// Pairs sort by (tid, first ordinal, second ordinal).
struct StatementPair {
  StatementRef first;
  StatementRef second;
  friend auto operator<=>(const StatementPair&, const StatementPair&) = default;
};

using PairSet = std::vector<StatementPair>;  // sorted, unique

enum class AccessType { Read, Write };

// ---------------------------------------------------------------------------
// Expressions and conditions

enum class ExprKind { Literal, LocalRef, GlobalRef, ThreadLocalRef, Add, Sub, Mul, Neg };

struct Expr {
  ExprKind kind;
  Value literal = 0;
  int local = -1;   // LocalRef / ThreadLocalRef: local slot
  int global = -1;  // GlobalRef: global index
  int tid = -1;     // ThreadLocalRef: owning thread
  std::unique_ptr<Expr> lhs;  // binary ops; Neg operand
  std::unique_ptr<Expr> rhs;
};

enum class CmpKind { Eq, Ne, Lt, Le, Gt, Ge };
enum class CondKind { Compare, And, Or, Not };

struct Cond {
  CondKind kind;
  CmpKind cmp = CmpKind::Eq;
  std::unique_ptr<Expr> cmp_lhs;
  std::unique_ptr<Expr> cmp_rhs;
  std::unique_ptr<Cond> lhs;  // And/Or; Not operand
  std::unique_ptr<Cond> rhs;
};

// ---------------------------------------------------------------------------
// Statements, threads, programs

enum class StmtKind { Load, Store, LocalAssign, Fence, Assert, Assume, If, While };

struct Statement {
  StmtKind kind;
  StatementRef sid;
  int line = 0;
  int local = -1;   // Load / LocalAssign target slot
  int global = -1;  // Load source / Store target
  std::unique_ptr<Expr> expr;  // Store / LocalAssign value
  std::unique_ptr<Cond> cond;  // Assert / Assume / If / While
  std::vector<Statement> then_block;  // If branch; While body
  std::vector<Statement> else_block;

  bool has_access() const { return kind == StmtKind::Load || kind == StmtKind::Store; }
  AccessType access_type() const {
    return kind == StmtKind::Load ? AccessType::Read : AccessType::Write;
  }
};

struct Thread {
  int tid = -1;
  std::string name;
  std::vector<Statement> body;
  std::vector<std::string> locals;          // slot -> name
  std::vector<const Statement*> by_ordinal; // ordinal-1 -> statement (pre-order)

  int local_slot(std::string_view name) const;  // -1 when absent
};

/// A parsed, validated program. Immutable after construction; may be shared
/// read-only across threads.
struct Program {
  std::vector<std::string> global_names;
  std::vector<Value> global_init;
  std::vector<Thread> threads;
  std::unique_ptr<Cond> final_assert;  // may be null

  int global_index(std::string_view name) const;  // -1 when absent
  int thread_index(std::string_view name) const;  // -1 when absent
  const Statement& statement(StatementRef ref) const;

  std::string sid_string(StatementRef ref) const;
  std::string pair_string(const StatementPair& p) const;  // "sid1~sid2"
  /// Parses "<thread>.<ordinal>"; throws Error on unknown thread or ordinal.
  StatementRef parse_sid(std::string_view text) const;
};

/// Walks `stmts` in pre-order (the sid numbering order), recursing into blocks.
void for_each_statement(const std::vector<Statement>& stmts,
                        const std::function<void(const Statement&)>& fn);

/// Renders a program back to canonical DSL text. parse(render(p)) is
/// structurally identical to p.
std::string render(const Program& p);

// ---------------------------------------------------------------------------
// Evaluation (overflow-checked; throws EvalError)

Value eval_expr(const Expr& e, std::span<const Value> locals);
bool eval_cond(const Cond& c, std::span<const Value> locals);

/// Environment for the post-join final assertion: shared memory plus every
/// thread's local valuation.
struct FinalEnv {
  std::span<const Value> memory;
  const std::vector<std::vector<Value>>* locals_by_thread;
};

bool eval_final(const Cond& c, const FinalEnv& env);

}  // namespace ff
