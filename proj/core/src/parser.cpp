#include "ff/parser.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace ff {

namespace {

enum class Tok {
  Ident, Int,
  KwShared, KwThread, KwLoad, KwStore, KwFence, KwAssert, KwAssume,
  KwIf, KwElse, KwWhile, KwFinal,
  LBrace, RBrace, LParen, RParen, Semi, Assign, Dot,
  Plus, Minus, Star, Bang,
  EqEq, NotEq, Lt, Le, Gt, Ge, AndAnd, OrOr,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Value ival = 0;
  int line = 0;  // 0 = synthetic token
  int col = 0;
};

const std::unordered_map<std::string, Tok>& keywords() {
  static const std::unordered_map<std::string, Tok> kw = {
      {"shared", Tok::KwShared}, {"thread", Tok::KwThread}, {"load", Tok::KwLoad},
      {"store", Tok::KwStore},   {"fence", Tok::KwFence},   {"assert", Tok::KwAssert},
      {"assume", Tok::KwAssume}, {"if", Tok::KwIf},         {"else", Tok::KwElse},
      {"while", Tok::KwWhile},   {"final", Tok::KwFinal},
  };
  return kw;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, Value v = 0) {
    out.push_back({k, std::move(text), v, line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int start_col = col;
    auto two = [&](char next) { return i + 1 < src.size() && src[i + 1] == next; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word(src.substr(i, j - i));
      auto it = keywords().find(word);
      out.push_back({it == keywords().end() ? Tok::Ident : it->second, word, 0, line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      unsigned long long v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        v = v * 10 + static_cast<unsigned long long>(src[j] - '0');
        if (v > static_cast<unsigned long long>(std::numeric_limits<Value>::max()))
          throw ParseError("integer literal out of range", line, start_col);
        ++j;
      }
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)),
                     static_cast<Value>(v), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); break;
      case '}': push(Tok::RBrace, "}"); break;
      case '(': push(Tok::LParen, "("); break;
      case ')': push(Tok::RParen, ")"); break;
      case ';': push(Tok::Semi, ";"); break;
      case '.': push(Tok::Dot, "."); break;
      case '+': push(Tok::Plus, "+"); break;
      case '-': push(Tok::Minus, "-"); break;
      case '*': push(Tok::Star, "*"); break;
      case '=':
        if (two('=')) { push(Tok::EqEq, "=="); ++i; ++col; }
        else push(Tok::Assign, "=");
        break;
      case '!':
        if (two('=')) { push(Tok::NotEq, "!="); ++i; ++col; }
        else push(Tok::Bang, "!");
        break;
      case '<':
        if (two('=')) { push(Tok::Le, "<="); ++i; ++col; }
        else push(Tok::Lt, "<");
        break;
      case '>':
        if (two('=')) { push(Tok::Ge, ">="); ++i; ++col; }
        else push(Tok::Gt, ">");
        break;
      case '&':
        if (two('&')) { push(Tok::AndAnd, "&&"); ++i; ++col; }
        else throw ParseError("stray '&'", line, col);
        break;
      case '|':
        if (two('|')) { push(Tok::OrOr, "||"); ++i; ++col; }
        else throw ParseError("stray '|'", line, col);
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

constexpr int kMaxLocalsPerThread = 64;
constexpr int kMaxThreads = 32;

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Program run() {
    Program p;
    while (at(Tok::KwShared)) parse_decl(p);
    while (at(Tok::KwThread)) parse_thread(p);
    if (at(Tok::KwFinal)) parse_final(p);
    expect(Tok::End, "declaration, thread, or end of input");
    assign_sids(p);
    return p;
  }

 private:
  // --- token plumbing ---
  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw err(std::string("expected ") + what);
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw err(msg); }
  ParseError err(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    return ParseError(msg + ", got " + got, t.line, t.col);
  }
  ParseError err_at(const Token& t, const std::string& msg) const {
    return ParseError(msg, t.line, t.col);
  }

  // --- declarations ---
  void parse_decl(Program& p) {
    take();  // shared
    Token name = expect(Tok::Ident, "shared variable name");
    if (p.global_index(name.text) >= 0)
      throw err_at(name, "duplicate shared variable '" + name.text + "'");
    expect(Tok::Assign, "'='");
    bool neg = false;
    if (at(Tok::Minus)) { take(); neg = true; }
    Token v = expect(Tok::Int, "integer");
    expect(Tok::Semi, "';'");
    p.global_names.push_back(name.text);
    p.global_init.push_back(neg ? -v.ival : v.ival);
  }

  void parse_thread(Program& p) {
    take();  // thread
    Token name = expect(Tok::Ident, "thread name");
    if (p.thread_index(name.text) >= 0)
      throw err_at(name, "duplicate thread '" + name.text + "'");
    if (p.global_index(name.text) >= 0)
      throw err_at(name, "thread '" + name.text + "' collides with a shared variable");
    if (static_cast<int>(p.threads.size()) >= kMaxThreads)
      throw err_at(name, "too many threads");
    Thread t;
    t.tid = static_cast<int>(p.threads.size());
    t.name = name.text;
    p.threads.push_back(std::move(t));
    Thread& thr = p.threads.back();
    cur_ = &thr;
    prog_ = &p;
    assigned_.clear();
    read_at_.clear();
    expect(Tok::LBrace, "'{'");
    thr.body = parse_block_body();
    for (std::size_t slot = 0; slot < thr.locals.size(); ++slot) {
      if (slot < read_at_.size() && read_at_[slot].line != 0 &&
          (slot >= assigned_.size() || !assigned_[slot]))
        throw err_at(read_at_[slot],
                     "variable '" + thr.locals[slot] + "' is never assigned in thread '" +
                         thr.name + "'");
    }
    cur_ = nullptr;
  }

  std::vector<Statement> parse_block_body() {
    std::vector<Statement> body;
    while (!at(Tok::RBrace)) body.push_back(parse_stmt());
    take();  // }
    return body;
  }

  Statement parse_stmt() {
    const Token& t = peek();
    Statement s;
    s.line = t.line;
    switch (t.kind) {
      case Tok::KwLoad: {
        take();
        Token local = expect(Tok::Ident, "local variable");
        expect(Tok::Assign, "'='");
        Token global = expect(Tok::Ident, "shared variable");
        expect(Tok::Semi, "';'");
        s.kind = StmtKind::Load;
        s.local = local_slot_for_write(local);
        s.global = global_id(global);
        return s;
      }
      case Tok::KwStore: {
        take();
        Token global = expect(Tok::Ident, "shared variable");
        expect(Tok::Assign, "'='");
        s.kind = StmtKind::Store;
        s.global = global_id(global);
        s.expr = parse_expr();
        expect(Tok::Semi, "';'");
        return s;
      }
      case Tok::KwFence:
        take();
        expect(Tok::Semi, "';'");
        s.kind = StmtKind::Fence;
        return s;
      case Tok::KwAssert:
      case Tok::KwAssume: {
        bool is_assert = t.kind == Tok::KwAssert;
        take();
        expect(Tok::LParen, "'('");
        s.kind = is_assert ? StmtKind::Assert : StmtKind::Assume;
        s.cond = parse_cond();
        expect(Tok::RParen, "')'");
        expect(Tok::Semi, "';'");
        return s;
      }
      case Tok::KwIf: {
        take();
        expect(Tok::LParen, "'('");
        s.kind = StmtKind::If;
        s.cond = parse_cond();
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        s.then_block = parse_block_body();
        if (at(Tok::KwElse)) {
          take();
          expect(Tok::LBrace, "'{'");
          s.else_block = parse_block_body();
        }
        return s;
      }
      case Tok::KwWhile: {
        take();
        expect(Tok::LParen, "'('");
        s.kind = StmtKind::While;
        s.cond = parse_cond();
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        s.then_block = parse_block_body();
        return s;
      }
      case Tok::Ident: {
        Token local = take();
        expect(Tok::Assign, "'='");
        s.kind = StmtKind::LocalAssign;
        s.local = local_slot_for_write(local);
        s.expr = parse_expr();
        expect(Tok::Semi, "';'");
        return s;
      }
      default:
        fail("expected a statement");
    }
  }

  int global_id(const Token& name) {
    int g = prog_->global_index(name.text);
    if (g < 0) throw err_at(name, "unknown shared variable '" + name.text + "'");
    return g;
  }

  int local_slot_for_write(const Token& name) {
    int slot = local_slot(name);
    if (static_cast<std::size_t>(slot) >= assigned_.size())
      assigned_.resize(static_cast<std::size_t>(slot) + 1, false);
    assigned_[static_cast<std::size_t>(slot)] = true;
    return slot;
  }

  int local_slot_for_read(const Token& name) {
    int slot = local_slot(name);
    if (static_cast<std::size_t>(slot) >= read_at_.size())
      read_at_.resize(static_cast<std::size_t>(slot) + 1, Token{});
    if (read_at_[static_cast<std::size_t>(slot)].line == 0)
      read_at_[static_cast<std::size_t>(slot)] = name;
    return slot;
  }

  int local_slot(const Token& name) {
    if (prog_->global_index(name.text) >= 0)
      throw err_at(name, "shared variable '" + name.text +
                             "' cannot be used here; load it into a local first");
    if (prog_->thread_index(name.text) >= 0)
      throw err_at(name, "'" + name.text + "' names a thread");
    int slot = cur_->local_slot(name.text);
    if (slot < 0) {
      if (static_cast<int>(cur_->locals.size()) >= kMaxLocalsPerThread)
        throw err_at(name, "too many locals in thread '" + cur_->name + "'");
      slot = static_cast<int>(cur_->locals.size());
      cur_->locals.push_back(name.text);
    }
    return slot;
  }

  // --- expressions (body context: locals and constants only) ---
  std::unique_ptr<Expr> parse_expr() {
    auto lhs = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool add = take().kind == Tok::Plus;
      auto node = std::make_unique<Expr>();
      node->kind = add ? ExprKind::Add : ExprKind::Sub;
      node->lhs = std::move(lhs);
      node->rhs = parse_term();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<Expr> parse_term() {
    auto lhs = parse_atom();
    while (at(Tok::Star)) {
      take();
      auto node = std::make_unique<Expr>();
      node->kind = ExprKind::Mul;
      node->lhs = std::move(lhs);
      node->rhs = parse_atom();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<Expr> parse_atom() {
    if (at(Tok::Minus)) {
      take();
      auto node = std::make_unique<Expr>();
      node->kind = ExprKind::Neg;
      node->lhs = parse_atom();
      return node;
    }
    if (at(Tok::Int)) {
      Token v = take();
      auto node = std::make_unique<Expr>();
      node->kind = ExprKind::Literal;
      node->literal = v.ival;
      return node;
    }
    if (at(Tok::LParen)) {
      take();
      auto node = parse_expr();
      expect(Tok::RParen, "')'");
      return node;
    }
    if (at(Tok::Ident)) {
      Token name = take();
      return make_var_ref(name);
    }
    fail("expected an expression");
  }

  std::unique_ptr<Expr> make_var_ref(const Token& name) {
    auto node = std::make_unique<Expr>();
    if (final_ctx_) {
      // Final assertions see shared variables, qualified thread locals, and
      // unqualified locals when the name occurs in exactly one thread.
      if (at(Tok::Dot)) {
        take();
        int tid = prog_->thread_index(name.text);
        if (tid < 0) throw err_at(name, "unknown thread '" + name.text + "'");
        Token local = expect(Tok::Ident, "local variable");
        int slot = prog_->threads[static_cast<std::size_t>(tid)].local_slot(local.text);
        if (slot < 0)
          throw err_at(local, "thread '" + name.text + "' has no local '" + local.text + "'");
        node->kind = ExprKind::ThreadLocalRef;
        node->tid = tid;
        node->local = slot;
        return node;
      }
      int g = prog_->global_index(name.text);
      if (g >= 0) {
        node->kind = ExprKind::GlobalRef;
        node->global = g;
        return node;
      }
      int found_tid = -1, found_slot = -1;
      for (const Thread& t : prog_->threads) {
        int slot = t.local_slot(name.text);
        if (slot >= 0) {
          if (found_tid >= 0)
            throw err_at(name, "ambiguous reference '" + name.text +
                                   "'; qualify it as <thread>." + name.text);
          found_tid = t.tid;
          found_slot = slot;
        }
      }
      if (found_tid < 0) throw err_at(name, "unknown variable '" + name.text + "'");
      node->kind = ExprKind::ThreadLocalRef;
      node->tid = found_tid;
      node->local = found_slot;
      return node;
    }
    node->kind = ExprKind::LocalRef;
    node->local = local_slot_for_read(name);
    node->tid = cur_->tid;
    return node;
  }

  // --- conditions ---
  std::unique_ptr<Cond> parse_cond() { return parse_or(); }

  std::unique_ptr<Cond> parse_or() {
    auto lhs = parse_and();
    while (at(Tok::OrOr)) {
      take();
      auto node = std::make_unique<Cond>();
      node->kind = CondKind::Or;
      node->lhs = std::move(lhs);
      node->rhs = parse_and();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<Cond> parse_and() {
    auto lhs = parse_not();
    while (at(Tok::AndAnd)) {
      take();
      auto node = std::make_unique<Cond>();
      node->kind = CondKind::And;
      node->lhs = std::move(lhs);
      node->rhs = parse_not();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<Cond> parse_not() {
    if (at(Tok::Bang)) {
      take();
      auto node = std::make_unique<Cond>();
      node->kind = CondKind::Not;
      node->lhs = parse_not();
      return node;
    }
    return parse_cond_primary();
  }

  // '(' is ambiguous: it may open a nested condition or a parenthesized
  // arithmetic operand. Try the condition reading first and fall back.
  std::unique_ptr<Cond> parse_cond_primary() {
    if (at(Tok::LParen)) {
      std::size_t mark = pos_;
      take();
      try {
        auto inner = parse_or();
        expect(Tok::RParen, "')'");
        return inner;
      } catch (const ParseError&) {
        pos_ = mark;
      }
    }
    auto node = std::make_unique<Cond>();
    node->kind = CondKind::Compare;
    node->cmp_lhs = parse_expr();
    switch (peek().kind) {
      case Tok::EqEq: node->cmp = CmpKind::Eq; break;
      case Tok::NotEq: node->cmp = CmpKind::Ne; break;
      case Tok::Lt: node->cmp = CmpKind::Lt; break;
      case Tok::Le: node->cmp = CmpKind::Le; break;
      case Tok::Gt: node->cmp = CmpKind::Gt; break;
      case Tok::Ge: node->cmp = CmpKind::Ge; break;
      default: fail("expected a comparison operator");
    }
    take();
    node->cmp_rhs = parse_expr();
    return node;
  }

  // --- final section ---
  void parse_final(Program& p) {
    take();  // final
    expect(Tok::LBrace, "'{'");
    expect(Tok::KwAssert, "'assert'");
    expect(Tok::LParen, "'('");
    prog_ = &p;
    final_ctx_ = true;
    p.final_assert = parse_cond();
    final_ctx_ = false;
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    expect(Tok::RBrace, "'}'");
  }

  // --- sid numbering: pre-order within each thread, 1-based ---
  static void number_block(std::vector<Statement>& stmts, Thread& t, int& next) {
    for (Statement& s : stmts) {
      s.sid = {t.tid, next++};
      t.by_ordinal.push_back(&s);
      number_block(s.then_block, t, next);
      number_block(s.else_block, t, next);
    }
  }

  static void assign_sids(Program& p) {
    for (Thread& t : p.threads) {
      t.by_ordinal.clear();
      int next = 1;
      number_block(t.body, t, next);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program* prog_ = nullptr;
  Thread* cur_ = nullptr;
  bool final_ctx_ = false;
  std::vector<bool> assigned_;
  std::vector<Token> read_at_;
};

}  // namespace

Program parse(std::string_view source) { return Parser(source).run(); }

}  // namespace ff
