#include "eslr/csv.hpp"

#include "eslr/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace eslr::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

double parse_number(std::string_view field, std::size_t line_no, std::size_t col) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    raise(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column " +
                                     std::to_string(col + 1) + ": '" + std::string(field) +
                                     "' is not a number");
  }
  return value;
}

}  // namespace

Eigen::Index Table::column(std::string_view name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return static_cast<Eigen::Index>(j);
  }
  raise(ErrorKind::ParseError, "no column named '" + std::string(name) + "'");
}

Table read(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (table.header.empty()) {
      for (auto f : fields) table.header.push_back(unquote(f));
      continue;
    }
    if (fields.size() != table.header.size()) {
      raise(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(table.header.size()) + " fields, found " +
                                       std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) row.push_back(parse_number(fields[j], line_no, j));
    rows.push_back(std::move(row));
  }
  if (table.header.empty()) raise(ErrorKind::ParseError, "input has no header row");

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open '" + path + "' for reading");
  return read(in);
}

std::string format(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (j) out << ',';
    out << fields[j];
  }
  out << '\n';
}

void write_row(std::ostream& out, const Eigen::Ref<const Eigen::RowVectorXd>& values) {
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (j) out << ',';
    out << format(values(j));
  }
  out << '\n';
}

void write_file(const std::string& path, const std::vector<std::string>& header,
                const Eigen::Ref<const Eigen::MatrixXd>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::ParseError, "cannot open '" + path + "' for writing");
  write_row(out, header);
  for (Eigen::Index i = 0; i < values.rows(); ++i) write_row(out, values.row(i));
  if (!out) raise(ErrorKind::ParseError, "failed writing '" + path + "'");
}

}  // namespace eslr::csv
