#include "pinatubo/logic_engine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>

namespace pinatubo {

namespace {

std::string to_upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::size_t parse_row(const std::string& token, std::size_t line_no) {
  if (token.size() < 2 || (token[0] != 'r' && token[0] != 'R'))
    throw ParseError(line_no,
                     "expected a row name r<digits>, got '" + token + "'");
  std::size_t value = 0;
  const char* begin = token.data() + 1;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no,
                     "expected a row name r<digits>, got '" + token + "'");
  return value;
}

int parse_k(const std::string& token, std::size_t line_no) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 1)
    throw ParseError(line_no,
                     "expected a threshold count k >= 1, got '" + token + "'");
  return value;
}

void check_sources(const ScriptCommand& cmd, std::size_t line_no) {
  std::vector<std::size_t> sorted = cmd.srcs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(line_no, "duplicate source row");
  if (std::binary_search(sorted.begin(), sorted.end(), cmd.dest))
    throw ParseError(line_no, "destination r" + std::to_string(cmd.dest) +
                                  " is also a source");
}

ScriptCommand parse_line(const std::vector<std::string>& tokens,
                         std::size_t line_no) {
  ScriptCommand cmd;
  cmd.line_no = line_no;
  const std::string mnemonic = to_upper(tokens[0]);
  const std::size_t argc = tokens.size() - 1;

  auto require_args = [&](std::size_t min, std::size_t max,
                          const char* usage) {
    if (argc < min || argc > max)
      throw ParseError(line_no, mnemonic + " expects " + usage + ", got " +
                                    std::to_string(argc) + " arguments");
  };
  constexpr std::size_t kNoMax = static_cast<std::size_t>(-1);

  if (mnemonic == "PROG") {
    require_args(2, 2, "<row> <bits>");
    cmd.kind = ScriptCommand::Kind::Prog;
    cmd.dest = parse_row(tokens[1], line_no);
    try {
      cmd.bits = bits_from_string(tokens[2]);
    } catch (const InvalidParams& e) {
      throw ParseError(line_no, e.what());
    }
    return cmd;
  }
  if (mnemonic == "OR" || mnemonic == "AND") {
    require_args(3, kNoMax, "<dest> <src> <src> [<src>...]");
    cmd.kind = mnemonic == "OR" ? ScriptCommand::Kind::Or
                                : ScriptCommand::Kind::And;
    cmd.dest = parse_row(tokens[1], line_no);
    for (std::size_t i = 2; i < tokens.size(); ++i)
      cmd.srcs.push_back(parse_row(tokens[i], line_no));
    check_sources(cmd, line_no);
    return cmd;
  }
  if (mnemonic == "XOR") {
    require_args(3, 3, "<dest> <src> <src>");
    cmd.kind = ScriptCommand::Kind::Xor;
    cmd.dest = parse_row(tokens[1], line_no);
    cmd.srcs = {parse_row(tokens[2], line_no), parse_row(tokens[3], line_no)};
    check_sources(cmd, line_no);
    return cmd;
  }
  if (mnemonic == "NOT") {
    require_args(2, 2, "<dest> <src>");
    cmd.kind = ScriptCommand::Kind::Not;
    cmd.dest = parse_row(tokens[1], line_no);
    cmd.srcs = {parse_row(tokens[2], line_no)};
    check_sources(cmd, line_no);
    return cmd;
  }
  if (mnemonic == "THRESH") {
    require_args(3, kNoMax, "<dest> <k> <src> [<src>...]");
    cmd.kind = ScriptCommand::Kind::Thresh;
    cmd.dest = parse_row(tokens[1], line_no);
    cmd.k = parse_k(tokens[2], line_no);
    for (std::size_t i = 3; i < tokens.size(); ++i)
      cmd.srcs.push_back(parse_row(tokens[i], line_no));
    if (cmd.k > static_cast<int>(cmd.srcs.size()))
      throw ParseError(line_no, "threshold k=" + std::to_string(cmd.k) +
                                    " exceeds the " +
                                    std::to_string(cmd.srcs.size()) +
                                    " sources given");
    check_sources(cmd, line_no);
    return cmd;
  }
  if (mnemonic == "READ") {
    require_args(1, 1, "<row>");
    cmd.kind = ScriptCommand::Kind::Read;
    cmd.dest = parse_row(tokens[1], line_no);
    return cmd;
  }
  throw ParseError(line_no, "unknown command '" + tokens[0] + "'");
}

LogicOp to_logic_op(const ScriptCommand& cmd) {
  switch (cmd.kind) {
    case ScriptCommand::Kind::Or: return LogicOp::bit_or();
    case ScriptCommand::Kind::And: return LogicOp::bit_and();
    case ScriptCommand::Kind::Xor: return LogicOp::bit_xor();
    case ScriptCommand::Kind::Not: return LogicOp::bit_not();
    case ScriptCommand::Kind::Thresh: return LogicOp::threshold(cmd.k);
    case ScriptCommand::Kind::Prog:
    case ScriptCommand::Kind::Read: break;
  }
  throw ArityMismatch("command has no logic op");
}

void count_program_pulses(const BitRow& bits, OpStats& stats) {
  for (auto b : bits) {
    if (b)
      ++stats.set_pulses;
    else
      ++stats.reset_pulses;
  }
}

}  // namespace

std::string ScriptCommand::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Prog:
      out << "PROG r" << dest << ' ' << bits_to_string(bits);
      return out.str();
    case Kind::Or: out << "OR"; break;
    case Kind::And: out << "AND"; break;
    case Kind::Xor: out << "XOR"; break;
    case Kind::Not: out << "NOT"; break;
    case Kind::Thresh: out << "THRESH"; break;
    case Kind::Read:
      out << "READ r" << dest;
      return out.str();
  }
  out << " r" << dest;
  if (kind == Kind::Thresh) out << ' ' << k;
  for (std::size_t s : srcs) out << " r" << s;
  return out.str();
}

std::vector<ScriptCommand> parse_script(std::istream& in) {
  std::vector<ScriptCommand> script;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    script.push_back(parse_line(tokens, line_no));
  }
  return script;
}

std::vector<ScriptCommand> parse_script(const std::string& text) {
  std::istringstream in(text);
  return parse_script(in);
}

BitRow bulk_op(Crossbar& cb, LogicOp op,
               const std::vector<std::size_t>& src_rows, std::size_t dest_row,
               OpStats& stats) {
  if (std::find(src_rows.begin(), src_rows.end(), dest_row) != src_rows.end())
    throw ArityMismatch("destination row r" + std::to_string(dest_row) +
                        " is also a source");
  if (dest_row >= cb.rows())
    throw IndexOutOfRange("destination row " + std::to_string(dest_row) +
                          " >= rows " + std::to_string(cb.rows()));

  const SenseAmpConfig cfg =
      calibrate(op, static_cast<int>(src_rows.size()), cb.params());
  const double v_read = cb.params().read_voltage_v;

  BitRow result(cb.cols());
  for (std::size_t c = 0; c < cb.cols(); ++c) {
    const double i = cb.bitline_current(src_rows, c, v_read);
    result[c] = sense(i, cfg, v_read) ? 1 : 0;
  }
  stats.read_activations += cb.cols();
  stats.rows_activated_total += src_rows.size() * cb.cols();

  cb.program_row(dest_row, result);
  count_program_pulses(result, stats);
  return result;
}

BitRow read_row(const Crossbar& cb, std::size_t row, OpStats& stats) {
  const SenseAmpConfig cfg = calibrate(LogicOp::read(), 1, cb.params());
  const double v_read = cb.params().read_voltage_v;
  const std::size_t rows[] = {row};

  BitRow result(cb.cols());
  for (std::size_t c = 0; c < cb.cols(); ++c) {
    const double i = cb.bitline_current(rows, c, v_read);
    result[c] = sense(i, cfg, v_read) ? 1 : 0;
  }
  stats.read_activations += cb.cols();
  stats.rows_activated_total += cb.cols();
  return result;
}

ScriptResult run_script(Crossbar& cb,
                        const std::vector<ScriptCommand>& script) {
  ScriptResult run;
  std::size_t step = 0;
  for (const ScriptCommand& cmd : script) {
    ++step;
    const std::string where = "line " + std::to_string(cmd.line_no) + ": ";

    if (cmd.dest >= cb.rows())
      throw IndexOutOfRange(where + "row r" + std::to_string(cmd.dest) +
                            " >= rows " + std::to_string(cb.rows()));
    for (std::size_t s : cmd.srcs)
      if (s >= cb.rows())
        throw IndexOutOfRange(where + "row r" + std::to_string(s) +
                              " >= rows " + std::to_string(cb.rows()));
    if (cmd.kind == ScriptCommand::Kind::Prog &&
        cmd.bits.size() != cb.cols())
      throw InvalidDimensions(where + "bit pattern length " +
                              std::to_string(cmd.bits.size()) + " != cols " +
                              std::to_string(cb.cols()));

    TraceEntry entry;
    entry.step = step;
    entry.command = cmd.to_string();
    switch (cmd.kind) {
      case ScriptCommand::Kind::Prog:
        cb.program_row(cmd.dest, cmd.bits);
        count_program_pulses(cmd.bits, run.stats);
        break;
      case ScriptCommand::Kind::Read:
        entry.result = read_row(cb, cmd.dest, run.stats);
        break;
      default:
        entry.result =
            bulk_op(cb, to_logic_op(cmd), cmd.srcs, cmd.dest, run.stats);
        break;
    }
    run.trace.push_back(std::move(entry));
  }
  return run;
}

}  // namespace pinatubo
