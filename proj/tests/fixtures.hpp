#pragma once

#include <string>

#include "ff/bench.hpp"
#include "ff/parser.hpp"
#include "ff/unroll.hpp"

namespace fixtures {

inline ff::Program family(ff::Core core, int n) {
  return ff::parse(ff::generate({core, n, ff::Arch::TSO}));
}

inline ff::StatementPair pr(const ff::Program& p, const char* a, const char* b) {
  return {p.parse_sid(a), p.parse_sid(b)};
}

// Store-buffer litmus with a fence between each thread's store and load;
// safe under any architecture.
inline const char* kFencedSb = R"(
shared x = 0;
shared y = 0;

thread t1 {
  store x = 1;
  fence;
  load r1 = y;
}

thread t2 {
  store y = 1;
  fence;
  load r2 = x;
}

final {
  assert(r1 == 1 || r2 == 1);
}
)";

// Unsynchronized read-modify-write from two threads: the increment can be
// lost under plain interleaving, so no fence placement helps.
inline const char* kLostUpdate = R"(
shared c = 0;

thread t1 {
  load a = c;
  a1 = a + 1;
  store c = a1;
}

thread t2 {
  load a = c;
  a1 = a + 1;
  store c = a1;
}

final {
  assert(c == 2);
}
)";

}  // namespace fixtures
