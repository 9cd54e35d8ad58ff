#include "qvscan/matpower.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace qvscan {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Row {
  std::vector<double> cols;
  int line = 0;
};

struct CaseTables {
  double base_mva = 0.0;
  bool have_base = false;
  std::string version;
  std::map<std::string, std::vector<Row>> tables;  // bus / gen / branch
};

void skip_ws(std::string_view s, std::size_t& i, int& line) {
  while (i < s.size()) {
    char c = s[i];
    if (c == '%') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '.' && i + 2 < s.size() && s[i + 1] == '.' && s[i + 2] == '.') {
      i += 3;  // MATLAB line continuation
    } else {
      break;
    }
  }
}

std::string read_ident(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '.'))
    ++i;
  return std::string(s.substr(start, i - start));
}

double read_number(std::string_view s, std::size_t& i, int line) {
  const char* begin = s.data() + i;
  const char* end = s.data() + s.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin) throw ParseError("expected a number", line);
  i += static_cast<std::size_t>(ptr - begin);
  return value;
}

/// Reads `name = [ rows ];` where rows are whitespace-separated numbers
/// terminated by `;` or newline.
std::vector<Row> read_matrix(std::string_view s, std::size_t& i, int& line) {
  skip_ws(s, i, line);
  if (i >= s.size() || s[i] != '[') throw ParseError("expected '[' to open a table", line);
  ++i;
  std::vector<Row> rows;
  Row current;
  current.line = line;
  auto flush = [&] {
    if (!current.cols.empty()) rows.push_back(std::move(current));
    current = Row{};
    current.line = line;
  };
  while (true) {
    // Row delimiters: ';' always ends a row, a newline ends a non-empty one.
    while (i < s.size()) {
      char c = s[i];
      if (c == '%') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (c == ';') {
        ++i;
        flush();
      } else if (c == '\n') {
        ++line;
        ++i;
        flush();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
      } else if (c == '.' && i + 2 < s.size() && s[i + 1] == '.' && s[i + 2] == '.') {
        i += 3;
        // continuation joins the next physical line into this row
        while (i < s.size() && s[i] != '\n') ++i;
        if (i < s.size()) { ++line; ++i; }
      } else {
        break;
      }
    }
    if (i >= s.size()) throw ParseError("unterminated table, missing ']'", line);
    if (s[i] == ']') {
      ++i;
      flush();
      break;
    }
    current.cols.push_back(read_number(s, i, line));
    if (current.cols.size() == 1) current.line = line;
  }
  skip_ws(s, i, line);
  if (i < s.size() && s[i] == ';') ++i;
  return rows;
}

CaseTables scan_case(std::string_view s) {
  CaseTables out;
  std::size_t i = 0;
  int line = 1;
  while (true) {
    skip_ws(s, i, line);
    if (i >= s.size()) break;
    if (!std::isalpha(static_cast<unsigned char>(s[i])) && s[i] != '_') {
      ++i;  // stray token (e.g. a ';' after 'end'), ignore
      continue;
    }
    int at = line;
    std::string ident = read_ident(s, i);
    if (ident == "function") {  // "function mpc = caseNN"
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    auto dot = ident.rfind('.');
    std::string field = dot == std::string::npos ? ident : ident.substr(dot + 1);
    skip_ws(s, i, line);
    if (i >= s.size() || s[i] != '=') continue;  // bare word such as "end"
    ++i;
    skip_ws(s, i, line);
    if (field == "version") {
      if (i < s.size() && s[i] == '\'') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != '\'') ++i;
        out.version = std::string(s.substr(start, i - start));
        if (i < s.size()) ++i;
      }
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (field == "baseMVA") {
      out.base_mva = read_number(s, i, line);
      out.have_base = true;
      skip_ws(s, i, line);
      if (i < s.size() && s[i] == ';') ++i;
    } else if (field == "bus" || field == "gen" || field == "branch") {
      if (out.tables.count(field)) throw ParseError("table '" + field + "' declared twice", at);
      out.tables[field] = read_matrix(s, i, line);
    } else {
      // Unknown assignment (gencost, bus_name, ...): skip its value.
      skip_ws(s, i, line);
      if (i < s.size() && s[i] == '[') {
        read_matrix(s, i, line);
      } else if (i < s.size() && s[i] == '{') {
        int depth = 0;
        while (i < s.size()) {
          if (s[i] == '{') ++depth;
          if (s[i] == '}') { --depth; if (depth == 0) { ++i; break; } }
          if (s[i] == '\n') ++line;
          ++i;
        }
      } else {
        while (i < s.size() && s[i] != '\n' && s[i] != ';') ++i;
      }
    }
  }
  return out;
}

double col(const Row& row, std::size_t index1) { return row.cols.at(index1 - 1); }

}  // namespace

Network parse_standard_case(std::string_view text, std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  CaseTables tables = scan_case(text);
  if (!tables.version.empty() && tables.version != "2")
    throw ParseError("unsupported case format version '" + tables.version + "', expected '2'");
  if (!tables.have_base) throw ParseError("missing baseMVA");
  if (!tables.tables.count("bus")) throw ParseError("missing bus table");
  if (!tables.tables.count("gen")) throw ParseError("missing gen table");
  if (!tables.tables.count("branch")) throw ParseError("missing branch table");

  Network net;
  net.mva_base = tables.base_mva;
  if (!(net.mva_base > 0.0)) throw ParseError("baseMVA must be positive");

  bool warned_bus_cols = false, warned_gen_cols = false, warned_branch_cols = false,
       warned_base_kv = false;

  for (const Row& row : tables.tables["bus"]) {
    if (row.cols.size() < 13)
      throw ParseError("bus row has " + std::to_string(row.cols.size()) + " columns, need 13", row.line);
    if (row.cols.size() > 13 && !warned_bus_cols) {
      warn("bus table: columns beyond 13 ignored");
      warned_bus_cols = true;
    }
    Bus b;
    b.id = static_cast<int>(col(row, 1));
    if (b.id <= 0) throw ParseError("bus id must be a positive integer", row.line);
    int type = static_cast<int>(col(row, 2));
    switch (type) {
      case 1: b.kind = BusKind::pq; break;
      case 2: b.kind = BusKind::pv; break;
      case 3: b.kind = BusKind::slack; break;
      default:
        throw ParseError("bus " + std::to_string(b.id) + " has unsupported type " + std::to_string(type),
                         row.line);
    }
    b.p_load = col(row, 3);
    b.q_load = col(row, 4);
    b.g_shunt = col(row, 5) / net.mva_base;  // MW at V=1 -> per unit
    b.b_shunt = col(row, 6) / net.mva_base;
    b.v_mag = col(row, 8);
    b.v_ang = col(row, 9) * kDegToRad;
    b.base_kv = col(row, 10);
    if (!(b.base_kv > 0.0)) {
      if (!warned_base_kv) {
        warn("bus table: baseKV of 0 replaced by 1.0 kV");
        warned_base_kv = true;
      }
      b.base_kv = 1.0;
    }
    b.zone = static_cast<int>(col(row, 11));
    b.v_max = col(row, 12);
    b.v_min = col(row, 13);
    if (net.find_bus(b.id))
      throw ParseError("bus " + std::to_string(b.id) + " declared twice", row.line);
    net.buses.push_back(b);
    if (!net.zones.count(b.zone)) net.zones[b.zone] = "zone " + std::to_string(b.zone);
  }

  for (const Row& row : tables.tables["gen"]) {
    if (row.cols.size() < 8)
      throw ParseError("gen row has " + std::to_string(row.cols.size()) + " columns, need 8", row.line);
    if (row.cols.size() > 8 && !warned_gen_cols) {
      warn("gen table: columns beyond 8 ignored");
      warned_gen_cols = true;
    }
    Generator g;
    g.bus = static_cast<int>(col(row, 1));
    if (!net.find_bus(g.bus))
      throw ParseError("generator references bus " + std::to_string(g.bus) +
                       " absent from the bus table", row.line);
    g.p_set = col(row, 2);
    // Column 3 (Qg) is a solved value, not an input; reactive output is
    // decided by the solver.
    g.q_max = col(row, 4);
    g.q_min = col(row, 5);
    g.v_set = col(row, 6);
    g.in_service = col(row, 8) > 0.0;
    net.generators.push_back(g);
  }

  for (const Row& row : tables.tables["branch"]) {
    if (row.cols.size() < 11)
      throw ParseError("branch row has " + std::to_string(row.cols.size()) + " columns, need 11",
                       row.line);
    if (row.cols.size() > 13 && !warned_branch_cols) {
      warn("branch table: columns beyond 13 ignored");
      warned_branch_cols = true;
    }
    Branch br;
    br.from_bus = static_cast<int>(col(row, 1));
    br.to_bus = static_cast<int>(col(row, 2));
    for (int end : {br.from_bus, br.to_bus})
      if (!net.find_bus(end))
        throw ParseError("branch references bus " + std::to_string(end) + " absent from the bus table",
                         row.line);
    br.r = col(row, 3);
    br.x = col(row, 4);
    if (br.r == 0.0 && br.x == 0.0)
      throw ParseError("branch " + std::to_string(br.from_bus) + "-" + std::to_string(br.to_bus) +
                       " has zero impedance", row.line);
    br.b = col(row, 5);
    br.rating = col(row, 6);
    double ratio = col(row, 9);
    br.tap = ratio == 0.0 ? 1.0 : ratio;  // 0 means no off-nominal tap
    br.shift = col(row, 10) * kDegToRad;
    br.in_service = col(row, 11) > 0.0;
    net.branches.push_back(br);
  }

  bool has_slack = false;
  for (const Bus& b : net.buses) has_slack |= b.kind == BusKind::slack;
  if (!has_slack) throw ParseError("no slack bus in the bus table");

  return net;
}

}  // namespace qvscan
