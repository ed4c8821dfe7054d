#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eslr::csv {

/// Numeric table with a header row. Parse failures raise ParseError with the
/// 1-based line number of the offending row.
struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd values;

  /// Index of the named column; ParseError when missing.
  Eigen::Index column(std::string_view name) const;
};

Table read(std::istream& in);
Table read_file(const std::string& path);

/// 17 significant digits, locale independent.
std::string format(double value);

void write_row(std::ostream& out, const std::vector<std::string>& fields);
void write_row(std::ostream& out, const Eigen::Ref<const Eigen::RowVectorXd>& values);
void write_file(const std::string& path, const std::vector<std::string>& header,
                const Eigen::Ref<const Eigen::MatrixXd>& values);

}  // namespace eslr::csv
