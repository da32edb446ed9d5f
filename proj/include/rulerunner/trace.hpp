#pragma once

#include "rulerunner/error.hpp"
#include "rulerunner/formula.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace rulerunner {

/// Atoms observed together in one trace position.
using Cell = std::set<std::string>;

/// Nonempty finite sequence of cells. The last cell carries END.
class Trace {
public:
  explicit Trace(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty())
      throw usage_error("a trace needs at least one cell");
    for (const Cell& c : cells_)
      for (const std::string& a : c)
        if (!is_atom_name(a))
          throw usage_error("invalid atom name '" + a + "' in trace");
  }

  Trace(std::initializer_list<Cell> cells) : Trace(std::vector<Cell>(cells)) {}

  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  const Cell& operator[](std::size_t i) const { return cells_.at(i); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  auto begin() const noexcept { return cells_.begin(); }
  auto end() const noexcept { return cells_.end(); }

  friend bool operator==(const Trace&, const Trace&) = default;

private:
  std::vector<Cell> cells_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

inline void add_atom(Cell& cell, const std::string& atom, std::size_t position) {
  if (atom == "END")
    throw parse_error("END marks the last cell implicitly and cannot be observed", position);
  if (!is_atom_name(atom))
    throw parse_error("invalid atom name '" + atom + "'", position);
  cell.insert(atom);
}

} // namespace detail

/// Parses one cell in inline syntax: "b,d", "b, d", "." for an empty cell.
/// `offset` is added to reported positions.
inline Cell parse_cell(std::string_view text, std::size_t offset = 0) {
  Cell cell;
  const std::string body = detail::trim(text);
  if (body == ".")
    return cell;
  if (body.empty())
    throw parse_error("empty cell (write '.' for a cell with no observations)", offset);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos)
      comma = text.size();
    const std::string atom = detail::trim(text.substr(start, comma - start));
    if (atom.empty())
      throw parse_error("missing atom", offset + start);
    detail::add_atom(cell, atom, offset + start);
    start = comma + 1;
  }
  return cell;
}

/// "[c - a - b,d - b]": cells separated by '-', atoms by ','; the brackets
/// are optional and '.' is an empty cell.
inline Trace parse_trace_inline(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
    --e;
  if (b < e && text[b] == '[') {
    if (text[e - 1] != ']')
      throw parse_error("expected ']'", e);
    ++b;
    --e;
  }
  if (detail::trim(text.substr(b, e - b)).empty())
    throw parse_error("empty trace", b);
  std::vector<Cell> cells;
  std::size_t start = b;
  while (start <= e) {
    std::size_t dash = text.find('-', start);
    if (dash == std::string_view::npos || dash > e)
      dash = e;
    cells.push_back(parse_cell(text.substr(start, dash - start), start));
    start = dash + 1;
  }
  return Trace(std::move(cells));
}

inline std::string format_cell(const Cell& cell, std::string_view separator = ",") {
  if (cell.empty())
    return ".";
  std::string out;
  for (const std::string& a : cell) {
    if (!out.empty())
      out += separator;
    out += a;
  }
  return out;
}

inline std::string format_trace_inline(const Trace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0)
      out += " - ";
    out += format_cell(t[i]);
  }
  return out + "]";
}

/// File format: one cell per line, atoms separated by commas or whitespace,
/// blank line for an empty cell, '#' starts a comment line. `first_line` is
/// the line number of the first line, for error messages.
inline Trace parse_trace_lines(const std::vector<std::string>& lines, std::size_t first_line = 1) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = detail::trim(lines[i]);
    if (!line.empty() && line[0] == '#')
      continue;
    Cell cell;
    std::string atom;
    auto flush = [&] {
      if (!atom.empty())
        detail::add_atom(cell, atom, first_line + i);
      atom.clear();
    };
    for (char c : line) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
        flush();
      else
        atom += c;
    }
    flush();
    cells.push_back(std::move(cell));
  }
  if (cells.empty())
    throw parse_error("trace has no cells", first_line);
  return Trace(std::move(cells));
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos)
      nl = text.size();
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace detail

inline Trace parse_trace_file_text(const std::string& text) {
  return parse_trace_lines(detail::split_lines(text));
}

/// Reads a single trace. Throws std::runtime_error on I/O failure and
/// parse_error (with the line number) on bad content.
inline Trace read_trace_file(const std::string& path) {
  return parse_trace_file_text(detail::read_file(path));
}

/// Several traces in file format separated by lines reading "---".
inline std::vector<Trace> parse_trace_set(const std::string& text) {
  std::vector<Trace> out;
  std::vector<std::string> chunk;
  std::size_t chunk_start = 1;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i <= lines.size(); ++i) {
    if (i == lines.size() || detail::trim(lines[i]) == "---") {
      if (!chunk.empty() || i < lines.size())
        out.push_back(parse_trace_lines(chunk, chunk_start));
      chunk.clear();
      chunk_start = i + 2;
      continue;
    }
    chunk.push_back(lines[i]);
  }
  return out;
}

inline std::vector<Trace> read_trace_set(const std::string& path) {
  return parse_trace_set(detail::read_file(path));
}

/// One line per cell, atoms joined by ','; empty cells are blank lines.
inline std::string format_trace_file(const Trace& t) {
  std::string out;
  for (const Cell& c : t) {
    if (!c.empty())
      out += format_cell(c);
    out += '\n';
  }
  return out;
}

inline std::string format_trace_set(const std::vector<Trace>& traces) {
  std::string out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (i > 0)
      out += "---\n";
    out += format_trace_file(traces[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random traces

struct GenParams {
  std::vector<std::string> atoms;
  std::size_t length = 1;
  double density = 0.5; // probability that an atom appears in a cell
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

inline void validate(const GenParams& p) {
  if (p.atoms.empty())
    throw usage_error("the atom alphabet is empty");
  for (const std::string& a : p.atoms)
    if (!is_atom_name(a))
      throw usage_error("invalid atom name '" + a + "'");
  if (p.length < 1)
    throw usage_error("trace length must be at least 1");
  if (!(p.density >= 0.0 && p.density <= 1.0))
    throw usage_error("density must lie in [0, 1]");
  if (p.count < 1)
    throw usage_error("count must be at least 1");
}

/// Uniform in [0, 1) from the top 53 bits; same sequence on every platform.
inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Trace random_trace(const std::vector<std::string>& atoms, std::size_t length, double density,
                          std::mt19937_64& rng) {
  std::vector<Cell> cells(length);
  for (Cell& c : cells)
    for (const std::string& a : atoms)
      if (unit_interval(rng) < density)
        c.insert(a);
  return Trace(std::move(cells));
}

inline std::vector<Trace> gen_traces(const GenParams& p) {
  validate(p);
  std::mt19937_64 rng(p.seed);
  std::vector<Trace> out;
  out.reserve(p.count);
  for (std::size_t i = 0; i < p.count; ++i)
    out.push_back(random_trace(p.atoms, p.length, p.density, rng));
  return out;
}

} // namespace rulerunner
