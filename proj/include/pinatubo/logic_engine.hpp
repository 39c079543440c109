#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pinatubo/crossbar.hpp"
#include "pinatubo/sense_amp.hpp"

namespace pinatubo {

/// Pulse and activation accounting for a sequence of operations.
struct OpStats {
  std::uint64_t set_pulses = 0;
  std::uint64_t reset_pulses = 0;
  std::uint64_t read_activations = 0;      // one per column sensed
  std::uint64_t rows_activated_total = 0;  // sum of |active set| per sense

  friend bool operator==(const OpStats&, const OpStats&) = default;
};

/// One parsed script line.
///
/// Grammar (line oriented, whitespace separated, '#' starts a comment,
/// mnemonics case-insensitive, rows written r<digits>):
///   PROG   <row> <bits>
///   OR     <dest> <src> <src> [<src>...]
///   AND    <dest> <src> <src> [<src>...]
///   XOR    <dest> <src> <src>
///   NOT    <dest> <src>
///   THRESH <dest> <k> <src> [<src>...]
///   READ   <row>
struct ScriptCommand {
  enum class Kind { Prog, Or, And, Xor, Not, Thresh, Read };

  Kind kind = Kind::Read;
  std::size_t dest = 0;           // PROG/bulk destination, READ source
  std::vector<std::size_t> srcs;  // bulk sources
  BitRow bits;                    // PROG pattern
  int k = 0;                      // THRESH
  std::size_t line_no = 0;

  /// Canonical text, e.g. "OR r2 r0 r1".
  std::string to_string() const;
};

/// Throws ParseError (with line number) on syntax errors, duplicate sources,
/// or a destination listed among the sources.
std::vector<ScriptCommand> parse_script(std::istream& in);
std::vector<ScriptCommand> parse_script(const std::string& text);

struct TraceEntry {
  std::size_t step = 0;          // 1-based position in the executed script
  std::string command;           // canonical command text
  std::optional<BitRow> result;  // present for READ and bulk ops
};

struct ScriptResult {
  std::vector<TraceEntry> trace;
  OpStats stats;
};

/// Activates src_rows, senses every column through a sense amplifier
/// calibrated for op, programs the result into dest_row and returns it.
/// Sources must be distinct and must not contain dest_row. Throws
/// ArityMismatch, IndexOutOfRange, InfeasibleGate.
BitRow bulk_op(Crossbar& cb, LogicOp op,
               const std::vector<std::size_t>& src_rows, std::size_t dest_row,
               OpStats& stats);

/// Single-row activation sensed with the Read reference. Non-destructive.
BitRow read_row(const Crossbar& cb, std::size_t row, OpStats& stats);

/// Executes commands in order. The trace holds one entry per command, with
/// results for READ and bulk ops. Errors carry the offending line number.
ScriptResult run_script(Crossbar& cb,
                        const std::vector<ScriptCommand>& script);

}  // namespace pinatubo
