#include "metric_depth/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace metric_depth {
namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  cells.push_back(trim(current));
  return cells;
}

// Non-blank lines, split into cells. The first row is the header.
std::vector<Row> read_rows(std::istream& in) {
  std::vector<Row> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) {
      continue;
    }
    rows.push_back({number, split_line(line)});
  }
  return rows;
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, source + ": line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& text, const std::string& source, std::size_t line, std::size_t column) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    parse_error(source, line, "cell " + std::to_string(column + 1) + ": '" + text + "' is not a number");
  }
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  }
  return in;
}

void require_header(const std::vector<Row>& rows, const std::string& source) {
  if (rows.empty()) {
    throw Error(ErrorKind::Parse, source + ": empty file");
  }
}

void require_width(const Row& row, std::size_t width, const std::string& source) {
  if (row.cells.size() != width) {
    parse_error(source, row.line, "expected " + std::to_string(width) + " cells, found " +
                                      std::to_string(row.cells.size()));
  }
}

}  // namespace

std::vector<LabeledCurve> parse_curves_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  const Row& header = rows.front();
  if (header.cells.size() < 2) {
    parse_error(source, header.line, "header needs a label column and grid columns");
  }
  std::vector<double> grid;
  for (std::size_t c = 1; c < header.cells.size(); ++c) {
    const std::string& cell = header.cells[c];
    if (cell.rfind("t=", 0) != 0) {
      parse_error(source, header.line, "grid column " + std::to_string(c + 1) + " must look like t=<value>");
    }
    grid.push_back(parse_number(cell.substr(2), source, header.line, c));
    if (grid.size() > 1 && !(grid.back() > grid[grid.size() - 2])) {
      parse_error(source, header.line, "grid not strictly increasing at column " + std::to_string(c + 1));
    }
  }

  std::vector<std::string> names;
  std::map<std::string, std::vector<std::vector<double>>> channels;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    require_width(row, header.cells.size(), source);
    const std::string& full = row.cells[0];
    if (full.empty()) {
      parse_error(source, row.line, "empty label");
    }
    if (!seen.insert(full).second) {
      parse_error(source, row.line, "duplicate label '" + full + "'");
    }
    const std::string name = full.substr(0, full.find('#'));
    std::vector<double> values;
    for (std::size_t c = 1; c < row.cells.size(); ++c) {
      values.push_back(parse_number(row.cells[c], source, row.line, c));
    }
    auto [it, inserted] = channels.try_emplace(name);
    if (inserted) {
      names.push_back(name);
    }
    it->second.push_back(std::move(values));
  }

  std::vector<LabeledCurve> out;
  for (const std::string& name : names) {
    out.push_back({name, Curve(grid, std::move(channels[name]))});
  }
  return out;
}

std::vector<LabeledCurve> read_curves_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_curves_csv(in, path.string());
}

DistanceMatrix parse_matrix_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  const Row& header = rows.front();
  std::vector<std::string> labels(header.cells.begin() + 1, header.cells.end());
  const std::size_t n = labels.size();
  if (n == 0) {
    parse_error(source, header.line, "matrix header has no labels");
  }
  if (rows.size() - 1 != n) {
    throw Error(ErrorKind::Parse, source + ": matrix has " + std::to_string(rows.size() - 1) + " rows and " +
                                      std::to_string(n) + " columns");
  }
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const Row& row = rows[r + 1];
    if (row.cells.size() != n + 1) {
      parse_error(source, row.line, "matrix row has " + std::to_string(row.cells.size() - 1) +
                                        " entries, expected " + std::to_string(n));
    }
    if (row.cells[0] != labels[r]) {
      parse_error(source, row.line, "row label '" + row.cells[0] + "' does not match column label '" +
                                        labels[r] + "'");
    }
    for (std::size_t c = 1; c <= n; ++c) {
      entries.push_back(parse_number(row.cells[c], source, row.line, c));
    }
  }
  return DistanceMatrix(std::move(labels), std::move(entries));
}

DistanceMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_matrix_csv(in, path.string());
}

std::vector<std::pair<std::string, StepCdf>> parse_histograms_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  require_width(rows.front(), 4, source);
  const std::vector<std::string> expected{"label", "bin_left", "bin_right", "count"};
  if (rows.front().cells != expected) {
    parse_error(source, rows.front().line, "header must be label,bin_left,bin_right,count");
  }
  std::vector<std::string> names;
  std::map<std::string, std::vector<HistogramBin>> bins;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    require_width(row, 4, source);
    const HistogramBin bin{parse_number(row.cells[1], source, row.line, 1),
                           parse_number(row.cells[2], source, row.line, 2),
                           parse_number(row.cells[3], source, row.line, 3)};
    auto [it, inserted] = bins.try_emplace(row.cells[0]);
    if (inserted) {
      names.push_back(row.cells[0]);
    }
    it->second.push_back(bin);
  }
  std::vector<std::pair<std::string, StepCdf>> out;
  for (const std::string& name : names) {
    try {
      out.emplace_back(name, histogram_to_cdf(bins[name]));
    } catch (const Error& e) {
      throw Error(e.kind(), source + ": histogram '" + name + "': " + e.what());
    }
  }
  return out;
}

std::vector<std::pair<std::string, StepCdf>> read_histograms_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_histograms_csv(in, path.string());
}

std::vector<std::pair<std::string, std::vector<double>>> parse_points_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  const std::size_t width = rows.front().cells.size();
  if (width < 2) {
    parse_error(source, rows.front().line, "header needs a label column and coordinate columns");
  }
  std::vector<std::pair<std::string, std::vector<double>>> out;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    require_width(row, width, source);
    if (!seen.insert(row.cells[0]).second) {
      parse_error(source, row.line, "duplicate label '" + row.cells[0] + "'");
    }
    std::vector<double> coords;
    for (std::size_t c = 1; c < width; ++c) {
      coords.push_back(parse_number(row.cells[c], source, row.line, c));
    }
    out.emplace_back(row.cells[0], std::move(coords));
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<double>>> read_points_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_points_csv(in, path.string());
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

void write_report_csv(std::ostream& out, const DepthReport& report, const std::vector<std::size_t>& rows) {
  out << "label,depth,rank\n";
  for (const std::size_t i : rows) {
    const auto& item = report.items()[i];
    out << item.label << ',' << format_number(item.depth.value) << ',' << report.rank(i) << '\n';
  }
}

std::vector<ReportRow> parse_report_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  require_width(rows.front(), 3, source);
  std::vector<ReportRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    require_width(row, 3, source);
    const double rank = parse_number(row.cells[2], source, row.line, 2);
    out.push_back({row.cells[0], parse_number(row.cells[1], source, row.line, 1), static_cast<std::size_t>(rank)});
  }
  return out;
}

void write_depth_map_csv(std::ostream& out, const DepthMap& map) {
  out << "x1,x2,depth\n";
  for (std::size_t i = 0; i < map.x1_axis.size(); ++i) {
    for (std::size_t j = 0; j < map.x2_axis.size(); ++j) {
      out << format_number(map.x1_axis[i]) << ',' << format_number(map.x2_axis[j]) << ','
          << format_number(map.at(i, j)) << '\n';
    }
  }
}

DepthMap parse_depth_map_csv(std::istream& in, const std::string& source) {
  const std::vector<Row> rows = read_rows(in);
  require_header(rows, source);
  require_width(rows.front(), 3, source);
  DepthMap map;
  std::vector<double> x1_column;
  std::vector<double> x2_column;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    require_width(row, 3, source);
    x1_column.push_back(parse_number(row.cells[0], source, row.line, 0));
    x2_column.push_back(parse_number(row.cells[1], source, row.line, 1));
    map.values.push_back(parse_number(row.cells[2], source, row.line, 2));
  }
  // The x2 axis is the run of rows sharing the first x1 value.
  std::size_t cols = 0;
  while (cols < x1_column.size() && x1_column[cols] == x1_column.front()) {
    map.x2_axis.push_back(x2_column[cols]);
    ++cols;
  }
  if (cols == 0 || x1_column.size() % cols != 0) {
    throw Error(ErrorKind::Parse, source + ": depth map rows do not form a grid");
  }
  for (std::size_t r = 0; r < x1_column.size(); r += cols) {
    map.x1_axis.push_back(x1_column[r]);
    for (std::size_t j = 0; j < cols; ++j) {
      if (x1_column[r + j] != x1_column[r] || x2_column[r + j] != map.x2_axis[j]) {
        throw Error(ErrorKind::Parse, source + ": depth map rows do not form a grid");
      }
    }
  }
  return map;
}

void write_section_csv(std::ostream& out, const std::vector<SectionPoint>& points) {
  out << "coordinate,depth\n";
  for (const auto& p : points) {
    out << format_number(p.coordinate) << ',' << format_number(p.depth) << '\n';
  }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into '" + path.string() + "'");
  }
}

}  // namespace metric_depth
