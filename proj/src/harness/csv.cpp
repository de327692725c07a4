#include "grp/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grp::harness {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, const std::filesystem::path& file, std::size_t line) {
  std::string s = cell;
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t pos = 0;
  while (pos < s.size() && s[pos] == ' ') ++pos;
  double v = 0.0;
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw std::invalid_argument(file.string() + ": line " + std::to_string(line) + ": malformed number '" + cell + "'");
  return v;
}

std::string expected_path_header(std::size_t d) {
  std::string h = "t";
  for (std::size_t c = 1; c <= d; ++c) h += ",x" + std::to_string(c);
  return h;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& table, const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

void write_path_csv(const GridPath& path, const std::filesystem::path& file) {
  Table t;
  t.header.push_back("t");
  for (std::size_t c = 1; c <= path.dim(); ++c) t.header.push_back("x" + std::to_string(c));
  for (std::size_t k = 0; k < path.n_points(); ++k) {
    std::vector<double> row{path.grid().time(k)};
    const auto x = path.at(k);
    row.insert(row.end(), x.begin(), x.end());
    t.rows.push_back(std::move(row));
  }
  write_csv(t, file);
}

GridPath load_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument(file.string() + ": missing header, expected columns t,x1,...,xd");
  line = strip_cr(line);
  const auto header = split(line);
  const std::size_t d = header.size() < 2 ? 0 : header.size() - 1;
  if (d == 0 || line != expected_path_header(d))
    throw std::invalid_argument(file.string() + ": missing header, expected columns t,x1,...,xd (got '" + line + "')");

  std::vector<double> times, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != d + 1)
      throw std::invalid_argument(file.string() + ": line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(d + 1) + " columns, found " + std::to_string(cells.size()));
    times.push_back(parse_number(cells[0], file, line_no));
    for (std::size_t c = 1; c <= d; ++c) {
      const double v = parse_number(cells[c], file, line_no);
      if (!std::isfinite(v))
        throw std::invalid_argument(file.string() + ": line " + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
    }
  }
  if (times.size() < 2) throw std::invalid_argument(file.string() + ": need at least two rows");
  const TimeGrid grid(times.back(), times.size() - 1);
  for (std::size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - grid.time(k)) > 1e-9 * grid.step())
      throw std::invalid_argument(file.string() + ": line " + std::to_string(k + 2) +
                                  ": non-uniform time column (expected t = " + format_double(grid.time(k)) + ")");
  return GridPath(grid, d, std::move(values));
}

void write_level2_csv(const RoughPath& rp, const std::filesystem::path& file) {
  Table t{{"step_index", "i", "j", "value"}, {}};
  const std::size_t d = rp.dim();
  for (std::size_t k = 0; k < rp.grid().n_steps(); ++k) {
    const auto block = rp.level2().block(k);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        t.rows.push_back({static_cast<double>(k), static_cast<double>(i), static_cast<double>(j), block[i * d + j]});
  }
  write_csv(t, file);
}

LevelTwo load_level2_csv(const std::filesystem::path& file, std::size_t n_steps, std::size_t dim) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "step_index,i,j,value")
    throw std::invalid_argument(file.string() + ": missing header, expected columns step_index,i,j,value");
  std::vector<double> blocks(n_steps * dim * dim, 0.0);
  std::vector<bool> seen(blocks.size(), false);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 4)
      throw std::invalid_argument(file.string() + ": line " + std::to_string(line_no) + ": expected 4 columns");
    const double k = parse_number(cells[0], file, line_no);
    const double i = parse_number(cells[1], file, line_no);
    const double j = parse_number(cells[2], file, line_no);
    if (k < 0 || i < 0 || j < 0 || k >= static_cast<double>(n_steps) || i >= static_cast<double>(dim) ||
        j >= static_cast<double>(dim) || k != std::floor(k) || i != std::floor(i) || j != std::floor(j))
      throw std::invalid_argument(file.string() + ": line " + std::to_string(line_no) + ": index out of range");
    const auto at = (static_cast<std::size_t>(k) * dim + static_cast<std::size_t>(i)) * dim + static_cast<std::size_t>(j);
    blocks[at] = parse_number(cells[3], file, line_no);
    seen[at] = true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument(file.string() + ": level-2 entries missing");
  return LevelTwo(dim, std::move(blocks));
}

}  // namespace grp::harness
