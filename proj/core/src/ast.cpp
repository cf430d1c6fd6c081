#include "ff/ast.hpp"

#include <sstream>

namespace ff {

int Thread::local_slot(std::string_view name) const {
  for (std::size_t i = 0; i < locals.size(); ++i)
    if (locals[i] == name) return static_cast<int>(i);
  return -1;
}

int Program::global_index(std::string_view name) const {
  for (std::size_t i = 0; i < global_names.size(); ++i)
    if (global_names[i] == name) return static_cast<int>(i);
  return -1;
}

int Program::thread_index(std::string_view name) const {
  for (std::size_t i = 0; i < threads.size(); ++i)
    if (threads[i].name == name) return static_cast<int>(i);
  return -1;
}

const Statement& Program::statement(StatementRef ref) const {
  const Thread& t = threads.at(static_cast<std::size_t>(ref.tid));
  return *t.by_ordinal.at(static_cast<std::size_t>(ref.ordinal - 1));
}

std::string Program::sid_string(StatementRef ref) const {
  return threads.at(static_cast<std::size_t>(ref.tid)).name + "." +
         std::to_string(ref.ordinal);
}

std::string Program::pair_string(const StatementPair& p) const {
  return sid_string(p.first) + "~" + sid_string(p.second);
}

StatementRef Program::parse_sid(std::string_view text) const {
  auto dot = text.find('.');
  if (dot == std::string_view::npos)
    throw Error("malformed statement id '" + std::string(text) + "'");
  int tid = thread_index(text.substr(0, dot));
  if (tid < 0)
    throw Error("unknown thread in statement id '" + std::string(text) + "'");
  int ordinal = 0;
  auto digits = text.substr(dot + 1);
  if (digits.empty()) throw Error("malformed statement id '" + std::string(text) + "'");
  for (char ch : digits) {
    if (ch < '0' || ch > '9')
      throw Error("malformed statement id '" + std::string(text) + "'");
    ordinal = ordinal * 10 + (ch - '0');
    if (ordinal > 1'000'000) throw Error("statement ordinal out of range");
  }
  if (ordinal < 1 ||
      ordinal > static_cast<int>(threads[static_cast<std::size_t>(tid)].by_ordinal.size()))
    throw Error("no statement '" + std::string(text) + "'");
  return {tid, ordinal};
}

void for_each_statement(const std::vector<Statement>& stmts,
                        const std::function<void(const Statement&)>& fn) {
  for (const Statement& s : stmts) {
    fn(s);
    for_each_statement(s.then_block, fn);
    for_each_statement(s.else_block, fn);
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Expression precedence: Mul over Add/Sub over atoms; Neg binds tightest.
int expr_prec(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
      return 2;
    default:
      return 3;
  }
}

void render_expr(std::ostream& os, const Expr& e, const Program& p, int parent_prec) {
  int prec = expr_prec(e.kind);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (e.kind) {
    case ExprKind::Literal:
      os << e.literal;
      break;
    case ExprKind::LocalRef:
      // Slot names resolve through the thread that owns the expression; the
      // parser stores the spelled name in Program lookups, so reconstruct via
      // the owning thread recorded on the node.
      os << p.threads[static_cast<std::size_t>(e.tid)].locals[static_cast<std::size_t>(e.local)];
      break;
    case ExprKind::GlobalRef:
      os << p.global_names[static_cast<std::size_t>(e.global)];
      break;
    case ExprKind::ThreadLocalRef:
      os << p.threads[static_cast<std::size_t>(e.tid)].name << '.'
         << p.threads[static_cast<std::size_t>(e.tid)].locals[static_cast<std::size_t>(e.local)];
      break;
    case ExprKind::Neg:
      os << '-';
      render_expr(os, *e.lhs, p, 3);
      break;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: {
      render_expr(os, *e.lhs, p, prec);
      os << (e.kind == ExprKind::Add ? " + " : e.kind == ExprKind::Sub ? " - " : " * ");
      // Right operand needs one more level so "a - (b - c)" keeps its parens.
      render_expr(os, *e.rhs, p, prec + 1);
      break;
    }
  }
  if (parens) os << ')';
}

const char* cmp_text(CmpKind k) {
  switch (k) {
    case CmpKind::Eq: return "==";
    case CmpKind::Ne: return "!=";
    case CmpKind::Lt: return "<";
    case CmpKind::Le: return "<=";
    case CmpKind::Gt: return ">";
    case CmpKind::Ge: return ">=";
  }
  return "?";
}

int cond_prec(CondKind k) {
  switch (k) {
    case CondKind::Or: return 1;
    case CondKind::And: return 2;
    default: return 3;
  }
}

void render_cond(std::ostream& os, const Cond& c, const Program& p, int parent_prec) {
  int prec = cond_prec(c.kind);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (c.kind) {
    case CondKind::Compare:
      render_expr(os, *c.cmp_lhs, p, 0);
      os << ' ' << cmp_text(c.cmp) << ' ';
      render_expr(os, *c.cmp_rhs, p, 0);
      break;
    case CondKind::And:
    case CondKind::Or:
      render_cond(os, *c.lhs, p, prec);
      os << (c.kind == CondKind::And ? " && " : " || ");
      render_cond(os, *c.rhs, p, prec + 1);
      break;
    case CondKind::Not:
      os << '!';
      if (c.lhs->kind == CondKind::Compare) {
        os << '(';
        render_cond(os, *c.lhs, p, 0);
        os << ')';
      } else {
        render_cond(os, *c.lhs, p, 3);
      }
      break;
  }
  if (parens) os << ')';
}

void render_block(std::ostream& os, const std::vector<Statement>& stmts,
                  const Program& p, const Thread& t, int indent);

void render_stmt(std::ostream& os, const Statement& s, const Program& p,
                 const Thread& t, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  os << pad;
  switch (s.kind) {
    case StmtKind::Load:
      os << "load " << t.locals[static_cast<std::size_t>(s.local)] << " = "
         << p.global_names[static_cast<std::size_t>(s.global)] << ";\n";
      break;
    case StmtKind::Store:
      os << "store " << p.global_names[static_cast<std::size_t>(s.global)] << " = ";
      render_expr(os, *s.expr, p, 0);
      os << ";\n";
      break;
    case StmtKind::LocalAssign:
      os << t.locals[static_cast<std::size_t>(s.local)] << " = ";
      render_expr(os, *s.expr, p, 0);
      os << ";\n";
      break;
    case StmtKind::Fence:
      os << "fence;\n";
      break;
    case StmtKind::Assert:
      os << "assert(";
      render_cond(os, *s.cond, p, 0);
      os << ");\n";
      break;
    case StmtKind::Assume:
      os << "assume(";
      render_cond(os, *s.cond, p, 0);
      os << ");\n";
      break;
    case StmtKind::If:
      os << "if (";
      render_cond(os, *s.cond, p, 0);
      os << ") {\n";
      render_block(os, s.then_block, p, t, indent + 2);
      os << pad << "}";
      if (!s.else_block.empty()) {
        os << " else {\n";
        render_block(os, s.else_block, p, t, indent + 2);
        os << pad << "}";
      }
      os << "\n";
      break;
    case StmtKind::While:
      os << "while (";
      render_cond(os, *s.cond, p, 0);
      os << ") {\n";
      render_block(os, s.then_block, p, t, indent + 2);
      os << pad << "}\n";
      break;
  }
}

void render_block(std::ostream& os, const std::vector<Statement>& stmts,
                  const Program& p, const Thread& t, int indent) {
  for (const Statement& s : stmts) render_stmt(os, s, p, t, indent);
}

}  // namespace

std::string render(const Program& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.global_names.size(); ++i)
    os << "shared " << p.global_names[i] << " = " << p.global_init[i] << ";\n";
  for (const Thread& t : p.threads) {
    os << "\nthread " << t.name << " {\n";
    render_block(os, t.body, p, t, 2);
    os << "}\n";
  }
  if (p.final_assert) {
    os << "\nfinal {\n  assert(";
    render_cond(os, *p.final_assert, p, 0);
    os << ");\n}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Value checked_add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError("integer overflow in '+'");
  return r;
}
Value checked_sub(Value a, Value b) {
  Value r;
  if (__builtin_sub_overflow(a, b, &r)) throw EvalError("integer overflow in '-'");
  return r;
}
Value checked_mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError("integer overflow in '*'");
  return r;
}

Value eval_general(const Expr& e, std::span<const Value> locals, const FinalEnv* env) {
  switch (e.kind) {
    case ExprKind::Literal:
      return e.literal;
    case ExprKind::LocalRef:
      return locals[static_cast<std::size_t>(e.local)];
    case ExprKind::GlobalRef:
      if (!env) throw Error("global reference outside the final assertion");
      return env->memory[static_cast<std::size_t>(e.global)];
    case ExprKind::ThreadLocalRef:
      if (!env) throw Error("qualified reference outside the final assertion");
      return (*env->locals_by_thread)[static_cast<std::size_t>(e.tid)]
                                     [static_cast<std::size_t>(e.local)];
    case ExprKind::Add:
      return checked_add(eval_general(*e.lhs, locals, env),
                         eval_general(*e.rhs, locals, env));
    case ExprKind::Sub:
      return checked_sub(eval_general(*e.lhs, locals, env),
                         eval_general(*e.rhs, locals, env));
    case ExprKind::Mul:
      return checked_mul(eval_general(*e.lhs, locals, env),
                         eval_general(*e.rhs, locals, env));
    case ExprKind::Neg:
      return checked_sub(0, eval_general(*e.lhs, locals, env));
  }
  throw Error("corrupt expression node");
}

bool eval_cond_general(const Cond& c, std::span<const Value> locals, const FinalEnv* env) {
  switch (c.kind) {
    case CondKind::Compare: {
      Value a = eval_general(*c.cmp_lhs, locals, env);
      Value b = eval_general(*c.cmp_rhs, locals, env);
      switch (c.cmp) {
        case CmpKind::Eq: return a == b;
        case CmpKind::Ne: return a != b;
        case CmpKind::Lt: return a < b;
        case CmpKind::Le: return a <= b;
        case CmpKind::Gt: return a > b;
        case CmpKind::Ge: return a >= b;
      }
      break;
    }
    case CondKind::And:
      return eval_cond_general(*c.lhs, locals, env) &&
             eval_cond_general(*c.rhs, locals, env);
    case CondKind::Or:
      return eval_cond_general(*c.lhs, locals, env) ||
             eval_cond_general(*c.rhs, locals, env);
    case CondKind::Not:
      return !eval_cond_general(*c.lhs, locals, env);
  }
  throw Error("corrupt condition node");
}

}  // namespace

Value eval_expr(const Expr& e, std::span<const Value> locals) {
  return eval_general(e, locals, nullptr);
}

bool eval_cond(const Cond& c, std::span<const Value> locals) {
  return eval_cond_general(c, locals, nullptr);
}

bool eval_final(const Cond& c, const FinalEnv& env) {
  return eval_cond_general(c, {}, &env);
}

}  // namespace ff
