#include "proxyshap/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "proxyshap/errors.hpp"

namespace proxyshap {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  const std::string copy(field);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return end == copy.c_str() + copy.size();
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed while writing " + path.string());
}

std::string format_number(double x, int precision) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::vector<LabeledCoalition> parse_coalition_values(std::string_view text) {
  std::vector<LabeledCoalition> rows;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (rows.empty() && line_no == 1 && (fields[0] == "coalition" || fields[0] == "subset")) continue;
    if (fields.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected `coalition,value`");
    LabeledCoalition row;
    try {
      row.coalition = Coalition::parse(fields[0]);
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!parse_double(fields[1], row.value))
      throw ParseError("line " + std::to_string(line_no) + ": value is not a number");
    if (!rows.empty() && rows.front().coalition.width() != row.coalition.width())
      throw ParseError("line " + std::to_string(line_no) + ": coalition width differs from earlier rows");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LabeledCoalition> read_coalition_values(const std::filesystem::path& path) {
  return parse_coalition_values(read_text(path));
}

std::string coalition_values_to_csv(const std::vector<LabeledCoalition>& rows) {
  std::string out = "coalition,value\n";
  for (const auto& row : rows) {
    out += row.coalition.to_string();
    out += ',';
    out += format_number(row.value, 17);
    out += '\n';
  }
  return out;
}

std::vector<Coalition> parse_targets(std::string_view text, std::size_t n) {
  std::vector<Coalition> targets;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    Coalition c;
    try {
      c = Coalition::parse(line);
    } catch (const Error& e) {
      throw ParseError("targets line " + std::to_string(line_no) + ": " + e.what());
    }
    if (c.width() != n)
      throw ParseError("targets line " + std::to_string(line_no) + ": width " + std::to_string(c.width()) +
                       " does not match n = " + std::to_string(n));
    targets.push_back(std::move(c));
  }
  return targets;
}

std::vector<Coalition> read_targets(const std::filesystem::path& path, std::size_t n) {
  return parse_targets(read_text(path), n);
}

std::vector<std::vector<double>> read_numeric_rows(const std::filesystem::path& path) {
  const auto text = read_text(path);
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    bool numeric = true;
    for (auto field : split_fields(line)) {
      double v = 0.0;
      if (!parse_double(field, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;
      throw ParseError(path.string() + " line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (!rows.empty() && rows.front().size() != row.size())
      throw ParseError(path.string() + " line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace proxyshap
