#include <doctest.h>

#include "ff/parser.hpp"
#include "fixtures.hpp"

using namespace ff;

namespace {

int access_statements(const Program& p) {
  int n = 0;
  for (const Thread& t : p.threads)
    for_each_statement(t.body, [&](const Statement& s) {
      if (s.has_access()) ++n;
    });
  return n;
}

}  // namespace

TEST_CASE("store-buffer litmus parses with four global accesses") {
  Program p = fixtures::family(Core::SB, 0);
  CHECK(p.threads.size() == 2);
  CHECK(p.global_names.size() == 2);
  CHECK(access_statements(p) == 4);
  REQUIRE(p.final_assert);
  CHECK(p.sid_string({0, 1}) == "t1.1");
  CHECK(p.sid_string({1, 2}) == "t2.2");
}

TEST_CASE("a program may declare shared state and no threads") {
  Program p = parse("shared x = 3;");
  CHECK(p.threads.empty());
  CHECK(p.global_init.at(0) == 3);
}

TEST_CASE("a statement may touch at most one shared variable") {
  const char* two_globals = R"(
    shared s1 = 0;
    shared y0 = 0;
    thread t1 {
      s1 = s1 + y0;
    }
  )";
  CHECK_THROWS_AS(parse(two_globals), ParseError);

  const char* global_in_store_rhs = R"(
    shared a = 0;
    shared b = 0;
    thread t1 {
      store a = b + 1;
    }
  )";
  CHECK_THROWS_AS(parse(global_in_store_rhs), ParseError);

  const char* global_in_guard = R"(
    shared a = 0;
    thread t1 {
      if (a == 0) {
        fence;
      }
    }
  )";
  CHECK_THROWS_AS(parse(global_in_guard), ParseError);
}

TEST_CASE("duplicate and unknown names are rejected") {
  CHECK_THROWS_AS(parse("shared x = 0;\nshared x = 1;"), ParseError);
  CHECK_THROWS_AS(parse("shared x = 0;\nthread a { fence; }\nthread a { fence; }"),
                  ParseError);
  CHECK_THROWS_AS(parse("thread t { load r = nope; }"), ParseError);
  CHECK_THROWS_AS(parse("shared x = 0;\nthread t { store y = 1; }"), ParseError);
  // Read of a local that is never assigned anywhere in the thread.
  CHECK_THROWS_AS(parse("shared x = 0;\nthread t { store x = r + 1; }"), ParseError);
  // A local may not shadow a shared variable.
  CHECK_THROWS_AS(parse("shared x = 0;\nthread t { x = 1; }"), ParseError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("shared x = 0;\nthread t {\n  store x 1;\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
}

TEST_CASE("final assertion resolves globals and thread locals") {
  const char* src = R"(
    shared g = 0;
    thread t1 { load r1 = g; }
    thread t2 { load r2 = g; }
    final { assert(g == 0 && t1.r1 == 0 && r2 >= 0); }
  )";
  Program p = parse(src);  // r2 is unambiguous, g is shared, t1.r1 qualified
  REQUIRE(p.final_assert);

  const char* ambiguous = R"(
    shared g = 0;
    thread t1 { load r = g; }
    thread t2 { load r = g; }
    final { assert(r == 0); }
  )";
  CHECK_THROWS_AS(parse(ambiguous), ParseError);
}

TEST_CASE("render-parse round trip is stable") {
  auto stable = [](const Program& p) {
    std::string once = render(p);
    Program again = parse(once);
    CHECK(render(again) == once);
    CHECK(again.threads.size() == p.threads.size());
    for (std::size_t t = 0; t < p.threads.size(); ++t)
      CHECK(again.threads[t].by_ordinal.size() == p.threads[t].by_ordinal.size());
  };
  stable(fixtures::family(Core::SB, 0));
  stable(fixtures::family(Core::MP, 2));
  stable(fixtures::family(Core::Double, 1));
  stable(fixtures::family(Core::Peterson, 0));
  stable(parse(fixtures::kFencedSb));
  stable(parse(fixtures::kLostUpdate));

  const char* nested = R"(
    shared g = 0;
    thread t1 {
      load a = g;
      if (a == 0) {
        b = a * 2 - -1;
        while (b > 0) {
          b = b - 1;
        }
      } else {
        assume(a != 0);
        assert(!(a == 0) || a >= 1);
      }
      store g = b;
    }
  )";
  stable(parse(nested));
}

TEST_CASE("statement lookup by printed id") {
  Program p = fixtures::family(Core::Double, 0);
  StatementRef ref = p.parse_sid("t2.3");
  CHECK(p.statement(ref).kind == StmtKind::Store);
  CHECK_THROWS_AS(p.parse_sid("t9.1"), Error);
  CHECK_THROWS_AS(p.parse_sid("t1.99"), Error);
  CHECK_THROWS_AS(p.parse_sid("bogus"), Error);
}

TEST_CASE("integer literals are range checked") {
  CHECK_THROWS_AS(parse("shared x = 99999999999999999999;"), ParseError);
  Program p = parse("shared x = 9223372036854775807;");
  CHECK(p.global_init[0] == 9223372036854775807LL);
}
