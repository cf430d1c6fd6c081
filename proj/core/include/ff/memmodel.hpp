#pragma once

#include <string_view>

#include "ff/ast.hpp"
#include "ff/unroll.hpp"

namespace ff {

enum class Arch { SC, TSO, PSO };

const char* to_string(Arch a);
/// Accepts "sc", "tso", "pso" (case-insensitive); throws Error otherwise.
Arch parse_arch(std::string_view text);

/// Whether architecture `a` allows the later statement s2 to take effect
/// before the earlier statement s1.
///
///   TSO: s1 writes, s2 reads, different globals.
///   PSO: s1 writes, s2 accesses a different global (read or write).
///   SC:  never.
///
/// Statements without a global access never reorder.
bool reorderable(const Statement& s1, const Statement& s2, Arch a);

/// All statement pairs (s1, s2) such that some same-thread instructions
/// I1 before I2 have stmt(I1)=s1, stmt(I2)=s2 and reorderable(s1, s2, a).
/// Deduplicated at statement level, sorted by (tid, sid1, sid2).
PairSet enumerate_pairs(const UnrolledProgram& u, Arch a);

}  // namespace ff
