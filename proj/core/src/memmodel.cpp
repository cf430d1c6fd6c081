#include "ff/memmodel.hpp"

#include <algorithm>
#include <cctype>

namespace ff {

const char* to_string(Arch a) {
  switch (a) {
    case Arch::SC: return "sc";
    case Arch::TSO: return "tso";
    case Arch::PSO: return "pso";
  }
  return "?";
}

Arch parse_arch(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "sc") return Arch::SC;
  if (lower == "tso") return Arch::TSO;
  if (lower == "pso") return Arch::PSO;
  throw Error("unknown architecture '" + std::string(text) + "'");
}

bool reorderable(const Statement& s1, const Statement& s2, Arch a) {
  if (!s1.has_access() || !s2.has_access()) return false;
  if (s1.global == s2.global) return false;
  switch (a) {
    case Arch::SC:
      return false;
    case Arch::TSO:
      return s1.access_type() == AccessType::Write && s2.access_type() == AccessType::Read;
    case Arch::PSO:
      return s1.access_type() == AccessType::Write;
  }
  return false;
}

PairSet enumerate_pairs(const UnrolledProgram& u, Arch a) {
  PairSet out;
  const Program& p = *u.program;
  for (const auto& thread_code : u.code) {
    for (std::size_t i = 0; i < thread_code.size(); ++i) {
      const Instr& first = thread_code[i];
      if (first.op != OpCode::Load && first.op != OpCode::Store) continue;
      for (std::size_t j = i + 1; j < thread_code.size(); ++j) {
        const Instr& second = thread_code[j];
        if (second.op != OpCode::Load && second.op != OpCode::Store) continue;
        if (reorderable(p.statement(first.sid), p.statement(second.sid), a))
          out.push_back({first.sid, second.sid});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ff
