#pragma once

#include <string_view>

#include "ff/ast.hpp"

namespace ff {

/// Parses DSL source into a validated Program.
///
/// Enforces, beyond the grammar:
///   - global, thread, and per-thread local namespaces are disjoint;
///   - at most one global access per statement (loads read one global,
///     store values and all conditions are over locals and constants);
///   - every local read somewhere in a thread is assigned somewhere in it;
///   - the final assertion may reference globals and thread locals, the
///     latter either qualified ("t1.r1") or unqualified when the name is
///     unique across threads.
///
/// Throws ParseError with a source position on any violation.
Program parse(std::string_view source);

}  // namespace ff
