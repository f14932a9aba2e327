#pragma once

#include <string>
#include <vector>

namespace exciton::csv {

/// Locale-independent formatting with 12 significant digits.
std::string format_double(double v);

/// Builds CSV text in memory; rows are flushed as comma-joined cells with
/// '\n' line endings so output bytes are platform-independent.
class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& values);

  const std::string& text() const { return text_; }
  void write_file(const std::string& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace exciton::csv
